// One line per acceptance criterion: "criterion N: PASS|FAIL <details>".
// Usage: acceptance [N]; without N every criterion runs. Exit 1 if any fails.

#include "curvagraph/classify.hpp"
#include "curvagraph/curvature.hpp"
#include "curvagraph/embedding.hpp"
#include "curvagraph/generators.hpp"
#include "curvagraph/isoperimetry.hpp"
#include "curvagraph/metric.hpp"
#include "curvagraph/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace curvagraph;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<VertexId> ball_ids(const CombinatorialMap& map, VertexId root, int r) {
  const auto d = bfs_distances(map, {root});
  std::vector<VertexId> out;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (d[v] >= 0 && d[v] <= r) out.push_back(v);
  return out;
}

std::vector<VertexId> random_connected_set(const CombinatorialMap& map, int size, std::mt19937_64& rng) {
  std::vector<VertexId> set{std::uniform_int_distribution<VertexId>(0, map.vertex_count() - 1)(rng)};
  std::vector<char> in(map.vertex_count(), 0);
  in[set[0]] = 1;
  std::vector<VertexId> frontier;
  while (static_cast<int>(set.size()) < size) {
    frontier.clear();
    for (VertexId v : set)
      for (VertexId w : map.neighbors(v))
        if (!in[w]) frontier.push_back(w);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    if (frontier.empty()) break;
    const VertexId w = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
    in[w] = 1;
    set.push_back(w);
  }
  return set;
}

void gauss_bonnet_random(Outcome& o) {
  const std::vector<std::pair<std::string, CombinatorialMap>> maps{
      {"cube", platonic_solid("cube")},      {"octahedron", platonic_solid("octahedron")},
      {"{4,4}", pq_ball(4, 4, 6)},           {"{7,3}", pq_ball(7, 3, 4)},
      {"3-tree", regular_tree_ball(3, 6)},   {"5-tree", regular_tree_ball(5, 3)}};
  std::mt19937_64 rng(2024);
  int total = 0, exact = 0;
  for (const auto& [name, map] : maps)
    for (int t = 0; t < 40; ++t) {
      const int size = std::uniform_int_distribution<int>(1, std::min(40, map.vertex_count()))(rng);
      const auto W = random_connected_set(map, size, rng);
      const Rational sum = gauss_bonnet(map, W);
      ++total;
      if (sum == 2) ++exact;
      else o.require(false, name + " |W|=" + std::to_string(W.size()) + " sum " + to_string(sum));
    }
  o.detail << total << " subgraphs, " << exact << " sum exactly 2";
  o.require(total >= 200, "at least 200 subgraphs");
}

// sorted finite degrees and the number of infinite faces of a pattern
std::pair<std::vector<long>, int> split(const std::vector<long>& pattern) {
  std::vector<long> finite;
  int inf = 0;
  for (long l : pattern)
    if (l == kInfiniteFace) ++inf;
    else finite.push_back(l);
  return {finite, inf};
}

void higuchi(Outcome& o) {
  const auto s = survey_negative_patterns(6, 50, true);
  o.detail << s.enumerated << " patterns, " << s.negative << " negative, max " << to_string(s.max_negative);
  o.require(s.max_negative == Rational(-1, 1806), "max is -1/1806");
  o.require(s.argmax.size() == 1 && s.argmax[0] == std::vector<long>{3, 7, 43}, "attained only at (3;3,7,43)");

  auto case_max = [](int n, const std::function<bool(const std::vector<long>&)>& finite_ok) {
    return max_pattern_curvature(n, 50, true, [&](const std::vector<long>& p) {
      const auto [finite, inf] = split(p);
      return static_cast<int>(p.size()) == n && inf == 1 && finite_ok(finite);
    });
  };
  const auto five = case_max(5, [](const auto&) { return true; });
  const auto four = case_max(4, [](const auto& f) { return f.back() > 3; });
  const auto three_a = case_max(3, [](const auto& f) { return f[1] > 6; });
  const auto three_b = case_max(3, [](const auto& f) { return f[0] >= 4 && f[1] > 4; });
  const Rational flat = pattern_curvature({3, 3, 3, kInfiniteFace});
  o.detail << "; cases " << to_string(flat) << ", " << to_string(*five) << ", " << to_string(*four) << ", "
           << to_string(*three_a) << ", " << to_string(*three_b);
  o.require(flat == 0, "(3,3,3,inf) = 0");
  o.require(five && *five == Rational(-1, 6), "(l1..l4,inf) <= -1/6");
  o.require(four && *four == Rational(-1, 12), "(l1,l2,l3,inf), l3 > 3 <= -1/12");
  o.require(three_a && *three_a == Rational(-1, 42), "(l1,l2,inf), l2 > 6 <= -1/42");
  o.require(three_b && *three_b == Rational(-1, 20), "(l1,l2,inf), l1 >= 4, l2 > 4 <= -1/20");
  o.require(pattern_curvature({3, 6, kInfiniteFace}) == 0 && pattern_curvature({4, 4, kInfiniteFace}) == 0,
            "(3,6,inf) and (4,4,inf) are flat");
}

void embedding(Outcome& o) {
  EmbedOptions opt;
  opt.horizon = 30;
  const Rational eps(1, 2000);
  auto run = [&](const std::string& name, const CombinatorialMap& map, const std::vector<VertexId>& W) {
    const auto res = embed(map, W, eps, opt);
    const auto rep = verify_properties(res, map);
    o.detail << name << ": R_eps " << res.closing.value << ", M " << res.materialized_radius << ", "
             << res.supergraph.vertex_count() << " vertices,";
    for (const auto& p : rep.properties) {
      o.detail << " " << p.name << (!p.applicable ? " n/a" : p.passed ? " ok" : " FAIL");
      o.require(p.passed, name + " " + p.name + (p.failures.empty() ? "" : ": " + p.failures.front()));
    }
    o.require(rep.all_passed(), name + " all properties");
    o.detail << "; ";
  };
  const auto tree = regular_tree_ball(3, 14);
  run("3-tree W=B_2", tree, ball_ids(tree, 0, 2));
  const auto line = line_ball(40);
  run("line W={0,1}", line, {*line.find_label(0), *line.find_label(1)});
}

void cut_locus_admissibility(Outcome& o) {
  auto good = [&](const std::string& name, const CombinatorialMap& map, int horizon) {
    const auto faces = trace_faces(map);
    const auto cut = cut_locus(map, 0, horizon);
    const auto adm = check_admissibility(map, faces, 0, horizon);
    o.detail << name << " cut " << cut.size() << " adm " << (adm.all_pass() ? "pass" : "FAIL") << "; ";
    o.require(cut.empty(), name + " cut locus empty");
    for (const auto& p : adm.properties)
      o.require(p.verdict == Verdict::pass, name + " property (" + std::to_string(p.index) + ") " + p.detail);
  };
  good("{7,3}", pq_ball(7, 3, 7), 6);
  good("{4,5}", pq_ball(4, 5, 7), 6);
  good("{3,7}", pq_ball(3, 7, 7), 6);
  good("3-tree", regular_tree_ball(3, 9), 8);
  const auto octa = platonic_solid("octahedron");
  const auto cut = cut_locus(octa, 0, 2);
  const auto adm = check_admissibility(octa, trace_faces(octa), 0, 2);
  o.detail << "octahedron cut " << cut.size() << " property (2) " << verdict_name(adm.properties[1].verdict);
  o.require(!cut.empty(), "octahedron cut locus nonempty");
  o.require(adm.properties[1].verdict == Verdict::fail, "octahedron property (2) fails");
}

void growth(Outcome& o) {
  const auto map = pq_ball(7, 3, 7);
  const auto g = growth_check(map, trace_faces(map), 0, 6);
  const std::vector<long> expected{1, 7, 21, 56, 147, 385, 1008};
  o.detail << "spheres";
  for (long s : g.sphere_sizes) o.detail << " " << s;
  o.detail << "; factor " << to_string(g.lower_factor) << "; mu " << g.mu_estimate << " in [" << g.mu_lower << ", "
           << g.mu_upper << "]";
  o.require(g.sphere_sizes == expected, "exact sphere counts");
  o.require(g.lower_factor == Rational(1, 2), "factor 1/2");
  o.require(g.inequality_holds(), "|S_n| >= |B_{n-1}|/2");
  o.require(std::abs(g.mu_lower - std::log(1.5)) < 1e-12 && std::abs(g.mu_upper - std::log(6.0)) < 1e-12,
            "bounds log(3/2), log 6");
  o.require(g.mu_in_bounds(), "mu estimate within bounds");
}

void cheeger(Outcome& o) {
  const auto tree = regular_tree_ball(3, 6);
  const auto grid = pq_ball(4, 4, 5);
  const auto m37 = pq_ball(3, 7, 5);
  const auto m73 = pq_ball(7, 3, 5);
  struct Case {
    std::string name;
    const CombinatorialMap* map;
    int radius;
  };
  const std::vector<Case> cases{{"3-tree", &tree, 4}, {"{4,4}", &grid, 3}, {"{3,7}", &m37, 3}, {"{7,3}", &m73, 2}};
  for (const auto& c : cases) {
    const auto faces = trace_faces(*c.map);
    const auto U = ball_ids(*c.map, 0, c.radius);
    const auto est = cheeger_estimate(*c.map, faces, U, 8);
    const auto iso = check_isoperimetric_inequality(*c.map, faces, U, 8);
    o.detail << c.name << ": lower a " << to_string(est.lower.best_alpha()) << " b " << to_string(est.lower.best_beta())
             << ", upper a " << to_string(est.upper.alpha_upper) << " b " << to_string(est.upper.beta_upper) << ", "
             << est.upper.sets << " sets, inequality " << iso.checked << " checked " << iso.violations
             << " violations; ";
    o.require(est.consistent(), c.name + " lower <= upper");
    o.require(iso.holds(), c.name + " isoperimetric inequality");
    if (c.name == "3-tree") {
      o.require(est.lower.alpha == Rational(1, 3) && est.lower.beta == 1, "tree bounds 1/3 and 1");
    } else if (c.name == "{4,4}") {
      o.require(est.lower.best_alpha() == 0 && est.lower.best_beta() == 0, "{4,4} bounds 0");
    } else if (c.name == "{3,7}") {
      o.require(est.lower.alpha == Rational(1, 15), "{3,7} alpha 1/15");
    }
  }
}

void spectral(Outcome& o) {
  const auto tree = regular_tree_ball(3, 11);
  std::vector<int> radii;
  for (int r = 1; r <= 10; ++r) radii.push_back(r);
  const auto rep = verify_spectral_bounds(tree, trace_faces(tree), 0, radii);
  const double bound = 3 - 2 * std::sqrt(2.0);
  const QuadraticSurd expected{3, -2, 2};
  o.detail << "bound " << rep.bound_combinatorial.str() << "; bottoms";
  bool above = true;
  for (const auto& row : rep.rows) {
    o.detail << " " << row.bottom_combinatorial;
    above = above && row.bottom_combinatorial >= bound - 1e-8;
  }
  const double last = rep.rows.back().bottom_combinatorial;
  const double gap = (last - bound) / bound;
  o.detail << "; radius 10 is " << 100 * gap << "% above the bound";
  o.require(rep.bound_combinatorial == expected, "bound equals 3 - 2 sqrt 2 in radical form");
  o.require(std::abs(rep.bound_combinatorial.value() - bound) < 1e-12, "bound numerically 3 - 2 sqrt 2");
  o.require(above, "bottoms >= 3 - 2 sqrt 2");
  o.require(rep.nonincreasing(1e-8), "bottoms nonincreasing");
  o.require(gap <= 0.05, "within 5% of 3 - 2 sqrt 2 at radius 10");
}

void polar(Outcome& o) {
  const auto m73 = pq_ball(7, 3, 7);
  const auto tree = regular_tree_ball(3, 7);
  for (const auto& [name, map] : {std::pair<std::string, const CombinatorialMap*>{"{7,3}", &m73}, {"3-tree", &tree}}) {
    const auto faces = trace_faces(*map);
    int runs = 0;
    for (int s = 0; s <= 5; ++s) {
      const auto A = s == 0 ? NearestNeighborOperator::laplacian(*map)
                            : NearestNeighborOperator::random(*map, static_cast<std::uint64_t>(s));
      const auto P = polar_decompose(*map, faces, A, 0, 6);
      const auto rc = verify_reconstruction(P, A, 5, static_cast<std::uint64_t>(s) + 100);
      const auto es = check_E_structure(P);
      const auto search = finitely_supported_eigenfunctions(*map, A, 0, 6);
      const std::string tag = name + (s == 0 ? " Laplacian" : " random " + std::to_string(s));
      o.require(rc.exact(), tag + " reconstruction");
      o.require(es.all_injective(), tag + " E_n full column rank");
      o.require(search.found.empty(), tag + " no eigenfunction");
      ++runs;
    }
    o.detail << name << ": " << runs << " operators ok; ";
  }
  const auto hub = octahedron_hub(6);
  const auto s = finitely_supported_eigenfunctions(hub, NearestNeighborOperator::laplacian(hub), 0, 5);
  bool alternating = false;
  for (const auto& e : s.found) {
    o.detail << "hub lambda " << (e.exact_lambda ? to_string(*e.exact_lambda) : std::to_string(e.lambda)) << " (dim "
             << e.basis.size() << ") ";
    if (!e.exact_lambda || *e.exact_lambda != 6 || e.exact_basis.size() != 1) continue;
    const auto& phi = e.exact_basis[0];
    bool ok = true;
    Rational first;
    for (std::size_t j = 0; j < s.domain.size(); ++j) {
      const VertexId v = s.domain[j];
      if (v >= 4) ok = ok && phi[j] == 0;
      else if (v == 0) first = phi[j];
    }
    for (std::size_t j = 0; j < s.domain.size(); ++j)
      if (s.domain[j] < 4) ok = ok && phi[j] == (s.domain[j] % 2 == 0 ? first : -first);
    alternating = ok && first != 0;
  }
  o.require(alternating, "octahedron hub lambda = 6 with the alternating 4-cycle vector");
}

void bigons(Outcome& o) {
  for (auto [p, q] : {std::pair{7, 3L}, {4, 5L}}) {
    const auto map = pq_ball(p, q, 7);
    const auto s = minimal_bigons(map, trace_faces(map), 4, 0, 4096, false);
    const std::string name = "{" + std::to_string(p) + "," + std::to_string(q) + "}";
    o.detail << name << ": " << s.endpoint_pairs << " pairs, " << s.minimal << " minimal, " << s.nonempty
             << " nonempty; ";
    o.require(s.nonempty == 0, name + " all interiors empty");
    o.require(s.skipped_pairs == 0, name + " exhaustive");
    o.require(s.minimal > 0, name + " bigons present");
  }
}

void essential(Outcome& o) {
  std::vector<int> radii;
  for (int r = 0; r <= 18; ++r) radii.push_back(r);
  const auto proxy = cheeger_at_infinity_proxy_radial(3, 1, radii);
  bool monotone = true, formula = true;
  for (std::size_t i = 0; i < proxy.size(); ++i) {
    if (i > 0) monotone = monotone && proxy[i].lower.alpha >= proxy[i - 1].lower.alpha;
    formula = formula && proxy[i].lower.alpha == 1 - Rational(2, 4 + proxy[i].r);
  }
  const Rational at18 = proxy.back().lower.alpha;
  o.detail << "alphaLower(18) = " << to_string(at18) << "; ";
  o.require(monotone, "alphaLower nondecreasing");
  o.require(formula, "alphaLower(r) = 1 - 2/(4+r)");
  o.require(at18 > Rational(9, 10), "alphaLower(18) > 0.9");

  const auto rows = essential_spectrum_proxy(3, 1, {4, 6, 8}, 60, 5);
  for (const auto& row : rows) {
    o.detail << "r=" << row.r << ":";
    for (double x : row.smallest) o.detail << " " << x;
    o.detail << "; ";
  }
  bool increasing = rows.size() == 3;
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (int j = 0; j < 5; ++j) increasing = increasing && rows[i].smallest[j] > rows[i - 1].smallest[j];
  o.require(increasing, "5 smallest eigenvalues strictly increase over r = 4, 6, 8");
}

struct Criterion {
  const char* name;
  void (*run)(Outcome&);
  double limit_seconds;  // 0: no runtime requirement
};

const Criterion kCriteria[] = {
    {"Gauss-Bonnet on random induced subgraphs", gauss_bonnet_random, 10},
    {"Higuchi gap and infinite-face cases", higuchi, 0},
    {"embedding properties G1-G5", embedding, 0},
    {"cut locus and admissibility", cut_locus_admissibility, 0},
    {"sphere growth on {7,3}", growth, 0},
    {"Cheeger bounds and isoperimetric inequality", cheeger, 60},
    {"Dirichlet bottoms on 3-regular tree balls", spectral, 0},
    {"polar decomposition and unique continuation", polar, 0},
    {"minimal bigons have empty interior", bigons, 60},
    {"essential spectrum proxy", essential, 0},
};

bool run(int n) {
  const Criterion& c = kCriteria[n - 1];
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.limit_seconds > 0) o.require(seconds < c.limit_seconds, "runtime below " + std::to_string(c.limit_seconds) + " s");
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " " << c.name << " (" << seconds << " s) "
            << o.detail.str() << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::cerr << "usage: acceptance [1-10]\n";
    return 2;
  }
  if (argc == 2) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 10) {
      std::cerr << "criterion must be 1..10\n";
      return 2;
    }
    return run(n) ? 0 : 1;
  }
  bool all = true;
  for (int n = 1; n <= 10; ++n) all = run(n) && all;
  return all ? 0 : 1;
}
