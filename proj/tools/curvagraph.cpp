#include "curvagraph/classify.hpp"
#include "curvagraph/curvature.hpp"
#include "curvagraph/embedding.hpp"
#include "curvagraph/errors.hpp"
#include "curvagraph/generators.hpp"
#include "curvagraph/graph_io.hpp"
#include "curvagraph/isoperimetry.hpp"
#include "curvagraph/metric.hpp"
#include "curvagraph/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace curvagraph;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string file, gen, root, output, save;
  int radius = 4;
  bool json_out = false;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int horizon = 4;
  std::string eps = "1/2000";
  int k = 8;
  bool all = false;
  std::string vertices;
  int ball = -1;
  std::string mode = "vertex";
  std::string radii;
  std::string op = "laplacian";
  bool list = false;
  bool patterns = false;
  std::string essential;
  int outer = 60;
  int count = 5;
  std::string proxy;
  std::string radial;
  std::string supergraph;
  long budget = 200000;
};

struct Input {
  CombinatorialMap map;
  FaceTable faces;
  VertexId root = 0;
  std::string source;
};

// Parse failures in numeric lists are input errors.
std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad list entry '" + item + "'");
    }
  }
  return out;
}

VertexId by_label(const CombinatorialMap& map, long label) {
  if (auto v = map.find_label(label)) return *v;
  throw InputError("no vertex with label " + std::to_string(label));
}

Input load(const Options& o) {
  if (o.file.empty() == o.gen.empty()) throw InputError("give exactly one of --file and --gen");
  Input in;
  if (!o.file.empty()) {
    in.map = load_map(o.file);
    in.source = o.file;
  } else {
    if (o.radius < 1) throw InputError("--radius must be positive");
    in.map = generate(parse_generator(o.gen, o.radius));
    in.source = o.gen + " radius " + std::to_string(o.radius);
  }
  if (in.map.vertex_count() == 0) throw InputError("empty map");
  in.faces = trace_faces(in.map);
  in.root = o.root.empty() ? 0 : by_label(in.map, parse_list(o.root).at(0));
  if (!o.save.empty()) save_text(o.save, serialize_map(in.map));
  return in;
}

std::vector<long> labels(const CombinatorialMap& map, const std::vector<VertexId>& vs) {
  std::vector<long> out;
  for (VertexId v : vs) out.push_back(map.label(v));
  return out;
}

std::vector<VertexId> ball_ids(const CombinatorialMap& map, VertexId root, int r) {
  const auto d = bfs_distances(map, {root});
  std::vector<VertexId> out;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (d[v] >= 0 && d[v] <= r) out.push_back(v);
  return out;
}

// W from --all, --vertices or --ball; fallback when none is given.
std::vector<VertexId> select_set(const Options& o, const Input& in, std::vector<VertexId> fallback) {
  if (o.all) {
    std::vector<VertexId> all(in.map.vertex_count());
    for (VertexId v = 0; v < in.map.vertex_count(); ++v) all[v] = v;
    return all;
  }
  if (!o.vertices.empty()) {
    std::vector<VertexId> out;
    for (long l : parse_list(o.vertices)) out.push_back(by_label(in.map, l));
    return out;
  }
  if (o.ball >= 0) return ball_ids(in.map, in.root, o.ball);
  return fallback;
}

std::string opt_rational(const std::optional<Rational>& r) { return r ? to_string(*r) : "undetermined"; }
std::string degree_text(const std::optional<long>& q) { return q ? std::to_string(*q) : "inf"; }

NearestNeighborOperator make_operator(const Options& o, const CombinatorialMap& map) {
  if (o.op == "laplacian") return NearestNeighborOperator::laplacian(map);
  if (o.op == "random") return NearestNeighborOperator::random(map, o.seed, false);
  if (o.op == "random-symmetric") return NearestNeighborOperator::random(map, o.seed, true);
  throw InputError("unknown operator '" + o.op + "' (laplacian, random, random-symmetric)");
}

int cmd_curvature(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  const auto rep = curvature_report(in.map, in.faces);
  r["vertices"] = in.map.vertex_count();
  r["faces"] = in.faces.face_count();
  r["evaluated_vertices"] = rep.evaluated_vertices;
  r["sup_corner"] = opt_rational(rep.sup_corner);
  r["sup_vertex"] = opt_rational(rep.sup_vertex);
  r["sup_face"] = !rep.sup_face ? "undetermined"
                  : rep.sup_face->unbounded_negative ? "-inf"
                                                     : to_string(rep.sup_face->value);
  std::map<Rational, int> histogram;
  for (const auto& k : rep.vertex)
    if (k) ++histogram[*k];
  json hist = json::array();
  for (const auto& [value, n] : histogram) hist.push_back({{"kappa_V", to_string(value)}, {"count", n}});
  r["vertex_curvature"] = hist;
  if (o.list) {
    json rows = json::array();
    for (VertexId v = 0; v < in.map.vertex_count(); ++v)
      rows.push_back({{"vertex", in.map.label(v)}, {"degree", in.map.degree(v)}, {"kappa_V", opt_rational(rep.vertex[v])}});
    r["per_vertex"] = rows;
  }
  const auto gap = higuchi_gap(in.map, in.faces);
  r["higuchi_applicable"] = gap.applicable;
  if (!gap.applicable) r["higuchi_reason"] = gap.reason;
  else r["higuchi_sup"] = to_string(gap.sup);
  r["higuchi_witnesses"] = labels(in.map, gap.witnesses);
  int status = gap.witnesses.empty() ? 0 : 1;
  if (o.patterns) {
    const auto s = survey_negative_patterns(6, 50, true);
    r["patterns_enumerated"] = s.enumerated;
    r["patterns_negative"] = s.negative;
    r["patterns_max_negative"] = to_string(s.max_negative);
    json arg = json::array();
    for (const auto& p : s.argmax) arg.push_back(pattern_string(p));
    r["patterns_argmax"] = arg;
    if (s.max_negative != higuchi_threshold()) status = 1;
  }
  return status;
}

int cmd_classify(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  const auto c = classify(in.map, in.faces, in.root);
  r["class"] = class_name(c.cls);
  r["certified_radius"] = c.certified_radius;
  r["T1"] = c.t1;
  r["T2"] = c.t2;
  r["T2*"] = c.t2_star;
  r["T3"] = c.t3;
  r["T3*"] = c.t3_star;
  r["simple"] = c.simple;
  r["degenerate_faces"] = c.degenerate_faces.size();
  r["degenerate_pairs"] = c.degenerate_pairs.size();
  r["extended_edges"] = c.extended_edges.size();
  r["undecided_pairs"] = c.undecided_pairs;
  json w = json::array();
  for (const auto& v : c.witnesses)
    w.push_back({{"kind", kind_name(v.kind)}, {"vertices", labels(in.map, v.vertices)}, {"what", v.what}});
  r["witnesses"] = w;
  CurvatureMode mode = CurvatureMode::vertex;
  if (o.mode == "corner") mode = CurvatureMode::corner;
  else if (o.mode == "face") mode = CurvatureMode::face;
  else if (o.mode != "vertex") throw InputError("unknown mode '" + o.mode + "'");
  const auto s = nonpositive_side_conditions(in.map, in.faces, mode, in.root);
  r["mode"] = o.mode;
  r["sup_curvature"] = s.sup_minus_infinity ? "-inf" : opt_rational(s.sup);
  r["nonpositive"] = s.nonpositive;
  r["negative"] = s.negative;
  r["terminal_vertices"] = labels(in.map, s.terminal_vertices);
  r["irregular_extended_edges"] = s.irregular_extended_edges.size();
  r["side_condition_violations"] = s.violations;
  return s.consistent() ? 0 : 1;
}

int cmd_gauss_bonnet(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  const auto W = select_set(o, in, {in.root});
  const Rational sum = gauss_bonnet(in.map, W);
  r["set_size"] = W.size();
  r["sum"] = to_string(sum);
  r["result"] = sum == 2 ? "sum = 2 exact" : "sum = " + to_string(sum) + ", expected 2";
  return sum == 2 ? 0 : 1;
}

int cmd_embed(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  const auto W = select_set(o, in, {in.root});
  const Rational eps = parse_rational(o.eps);
  EmbedOptions eo;
  eo.horizon = o.horizon;
  eo.vertex_budget = o.budget;
  const auto res = embed(in.map, W, eps, eo);
  const auto rep = verify_properties(res, in.map);
  r["W"] = labels(in.map, res.W);
  r["epsilon"] = to_string(res.epsilon);
  r["R_eps"] = res.closing.value;
  r["diameter"] = res.closing.diameter;
  r["materialized_radius"] = res.materialized_radius;
  r["original_vertices"] = res.original_vertex_count;
  r["supergraph_vertices"] = res.supergraph.vertex_count();
  r["tree_vertices"] = res.tree_vertex_count;
  r["trees_added_at"] = res.added_trees.size();
  r["closed_faces"] = res.closed_faces.size();
  r["pending_faces"] = res.pending_faces.size();
  json props = json::array();
  for (const auto& p : rep.properties)
    props.push_back({{"name", p.name},
                     {"status", !p.applicable ? "n/a" : p.passed ? "pass" : "fail"},
                     {"checked", p.checked},
                     {"first_failure", p.failures.empty() ? "" : p.failures.front()}});
  r["properties"] = props;
  r["closed_faces_large"] = rep.closed_faces_large;
  r["tree_vertices_ok"] = rep.tree_vertices_ok;
  r["complete_faces_polygons"] = rep.complete_faces_polygons;
  if (!o.supergraph.empty()) {
    std::vector<std::pair<long, long>> corr;
    for (const auto& [v, w] : res.correspondence) corr.emplace_back(in.map.label(v), res.supergraph.label(w));
    save_text(o.supergraph, serialize_with_correspondence(res.supergraph, corr));
    r["supergraph_file"] = o.supergraph;
  }
  return rep.all_passed() ? 0 : 1;
}

int cmd_cutlocus(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  r["root"] = in.map.label(in.root);
  r["horizon"] = o.horizon;
  const auto c = cut_locus(in.map, in.root, o.horizon);
  r["cut_locus"] = labels(in.map, c);
  r["empty"] = c.empty();
  return c.empty() ? 0 : 1;
}

int cmd_admissibility(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  r["root"] = in.map.label(in.root);
  const auto a = check_admissibility(in.map, in.faces, in.root, o.horizon);
  r["horizon"] = a.horizon;
  json props = json::array();
  bool failed = false;
  for (const auto& p : a.properties) {
    props.push_back({{"property", p.index}, {"verdict", verdict_name(p.verdict)}, {"levels", p.levels_checked},
                     {"detail", p.detail}});
    failed = failed || p.verdict == Verdict::fail;
  }
  r["properties"] = props;
  r["all_pass"] = a.all_pass();
  return failed ? 1 : 0;
}

int cmd_bigons(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  const auto s = minimal_bigons(in.map, in.faces, o.horizon, in.root, 4096, false);
  r["horizon"] = s.horizon;
  r["anchors"] = s.anchors;
  r["endpoint_pairs"] = s.endpoint_pairs;
  r["bigons"] = s.bigons;
  r["minimal_bigons"] = s.minimal;
  r["nonempty_interiors"] = s.nonempty;
  r["skipped_pairs"] = s.skipped_pairs;
  json rows = json::array();
  for (std::size_t i = 0; i < s.minimal_bigons.size() && i < 20; ++i) {
    const auto& b = s.minimal_bigons[i];
    rows.push_back({{"p1", labels(in.map, b.p1)}, {"p2", labels(in.map, b.p2)}, {"interior", labels(in.map, b.interior)}});
  }
  r["nonempty_examples"] = rows;
  return s.nonempty == 0 ? 0 : 1;
}

int cmd_growth(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  r["root"] = in.map.label(in.root);
  const auto g = growth_check(in.map, in.faces, in.root, o.horizon);
  r["horizon"] = g.horizon;
  r["kappa_V"] = to_string(g.kappa_v);
  r["q"] = degree_text(g.q);
  r["p"] = g.p;
  r["lower_factor"] = to_string(g.lower_factor);
  json rows = json::array();
  for (int n = 0; n <= g.horizon; ++n) {
    json row = {{"n", n}, {"sphere", g.sphere_sizes[n]}, {"ball", g.ball_sizes[n]}};
    if (n >= 1) row["inequality"] = g.inequality[n - 1] ? "holds" : "fails";
    rows.push_back(row);
  }
  r["levels"] = rows;
  r["mu_estimate"] = g.mu_estimate;
  r["mu_ratio"] = g.mu_ratio;
  r["mu_lower"] = g.mu_lower;
  r["mu_upper"] = g.mu_upper;
  r["inequality_holds"] = g.inequality_holds();
  r["mu_estimate_in_bounds"] = g.mu_in_bounds();
  r["mu_ratio_in_bounds"] = g.ratio_in_bounds();
  return g.inequality_holds() && g.ratio_in_bounds() ? 0 : 1;
}

json lower_json(const CheegerLower& b) {
  json j = {{"p_inf", b.p_inf},
            {"p_sup", degree_text(b.p_sup)},
            {"q_inf", degree_text(b.q_inf)},
            {"q_sup", degree_text(b.q_sup)},
            {"kappa_sup", to_string(b.kappa_sup)}};
  if (b.defined) {
    j["alpha_lower"] = to_string(b.alpha);
    j["beta_lower"] = to_string(b.beta);
  } else {
    j["undefined"] = b.reason;
  }
  j["C"] = opt_rational(b.C);
  j["alpha_lower_curvature"] = opt_rational(b.alpha3);
  j["beta_lower_curvature"] = opt_rational(b.beta3);
  return j;
}

int cmd_cheeger(const Options& o, json& r) {
  int status = 0;
  if (!o.radial.empty()) {
    const auto bs = parse_list(o.radial);
    if (bs.size() != 2) throw InputError("--radial needs BASE,SLOPE");
    std::vector<int> radii;
    for (long x : parse_list(o.proxy.empty() ? "0,2,4,8,18" : o.proxy)) radii.push_back(static_cast<int>(x));
    json rows = json::array();
    for (const auto& p : cheeger_at_infinity_proxy_radial(static_cast<int>(bs[0]), static_cast<int>(bs[1]), radii)) {
      json row = lower_json(p.lower);
      row["r"] = p.r;
      rows.push_back(row);
    }
    r["radial_tree"] = o.radial;
    r["proxy"] = rows;
    return 0;
  }
  const Input in = load(o);
  r["source"] = in.source;
  std::vector<VertexId> fallback;
  for (VertexId v : ball_ids(in.map, in.root, 2))
    if (!in.map.is_frontier(v)) fallback.push_back(v);
  const auto U = select_set(o, in, fallback);
  const auto est = cheeger_estimate(in.map, in.faces, U, o.k);
  r["region_size"] = est.upper.region.size();
  r["k"] = o.k;
  r["sets"] = est.upper.sets;
  r["alpha_upper"] = to_string(est.upper.alpha_upper);
  r["beta_upper"] = to_string(est.upper.beta_upper);
  r["alpha_witness"] = labels(in.map, est.upper.alpha_witness);
  r["beta_witness"] = labels(in.map, est.upper.beta_witness);
  r["lower"] = lower_json(est.lower);
  r["consistent"] = est.consistent();
  if (!est.consistent()) status = 1;
  const auto iso = check_isoperimetric_inequality(in.map, in.faces, U, o.k);
  r["inequality_t"] = to_string(iso.t);
  r["inequality_checked"] = iso.checked;
  r["inequality_small_c"] = iso.small_c;
  r["inequality_violations"] = iso.violations;
  if (!iso.holds()) status = 1;
  if (!o.proxy.empty()) {
    std::vector<int> radii;
    for (long x : parse_list(o.proxy)) radii.push_back(static_cast<int>(x));
    json rows = json::array();
    for (const auto& p : cheeger_at_infinity_proxy(in.map, in.faces, in.root, radii)) {
      json row = lower_json(p.lower);
      row["r"] = p.r;
      row["region_size"] = p.region_size;
      rows.push_back(row);
    }
    r["proxy"] = rows;
  }
  return status;
}

int cmd_spectrum(const Options& o, json& r) {
  int status = 0;
  if (!o.essential.empty()) {
    const auto bs = parse_list(o.essential);
    if (bs.size() != 2) throw InputError("--essential needs BASE,SLOPE");
    std::vector<int> radii;
    for (long x : parse_list(o.radii.empty() ? "4,6,8" : o.radii)) radii.push_back(static_cast<int>(x));
    json rows = json::array();
    for (const auto& row : essential_spectrum_proxy(static_cast<int>(bs[0]), static_cast<int>(bs[1]), radii, o.outer,
                                                    o.count))
      rows.push_back({{"r", row.r}, {"smallest", row.smallest}});
    r["radial_tree"] = o.essential;
    r["outer_radius"] = o.outer;
    r["essential_proxy"] = rows;
    return 0;
  }
  const Input in = load(o);
  r["source"] = in.source;
  r["root"] = in.map.label(in.root);
  std::vector<int> radii;
  for (long x : parse_list(o.radii.empty() ? "1,2,3" : o.radii)) radii.push_back(static_cast<int>(x));
  const auto rep = verify_spectral_bounds(in.map, in.faces, in.root, radii);
  r["alpha_lower"] = to_string(rep.alpha_lower);
  r["p_inf"] = rep.p_inf;
  r["bound_combinatorial"] = rep.bound_combinatorial.str();
  r["bound_combinatorial_value"] = rep.bound_combinatorial.value();
  r["bound_normalized"] = rep.bound_normalized.str();
  r["bound_normalized_value"] = rep.bound_normalized.value();
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"radius", row.radius},
                    {"size", row.domain_size},
                    {"bottom_combinatorial", row.bottom_combinatorial},
                    {"bottom_normalized", row.bottom_normalized},
                    {"bounds", row.combinatorial_ok && row.normalized_ok ? "hold" : "violated"}});
  r["dirichlet"] = rows;
  r["bounds_hold"] = rep.bounds_hold();
  r["nonincreasing"] = rep.nonincreasing();
  if (!rep.bounds_hold() || !rep.nonincreasing()) status = 1;
  return status;
}

int cmd_polar(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  r["root"] = in.map.label(in.root);
  r["operator"] = o.op;
  r["seed"] = o.seed;
  const auto A = make_operator(o, in.map);
  A.validate();
  const auto P = polar_decompose(in.map, in.faces, A, in.root, o.horizon);
  const auto rc = verify_reconstruction(P, A, 10, o.seed + 1);
  const auto es = check_E_structure(P);
  r["horizon"] = P.horizon;
  r["reconstruction_rows"] = rc.rows_checked;
  r["reconstruction_mismatches"] = rc.mismatches;
  json rows = json::array();
  for (const auto& l : es.levels)
    rows.push_back({{"n", l.n},
                    {"shape", std::to_string(l.rows) + "x" + std::to_string(l.cols)},
                    {"columns_nonzero", l.columns_nonzero},
                    {"rows_one_or_two", l.rows_one_or_two},
                    {"pairs_succeeding", l.pairs_succeeding},
                    {"rank", l.rank.rank},
                    {"rank_method", l.rank.method}});
  r["E"] = rows;
  r["structure_holds"] = es.structure_holds();
  r["all_injective"] = es.all_injective();
  return rc.exact() && es.structure_holds() && es.all_injective() ? 0 : 1;
}

int cmd_eigensearch(const Options& o, json& r) {
  const Input in = load(o);
  r["source"] = in.source;
  r["root"] = in.map.label(in.root);
  r["operator"] = o.op;
  const auto A = make_operator(o, in.map);
  A.validate();
  const auto s = finitely_supported_eigenfunctions(in.map, A, in.root, o.horizon);
  r["horizon"] = s.horizon;
  r["domain_size"] = s.domain.size();
  r["constraint_rows"] = s.constraint_rows;
  r["invariant_dimension"] = s.invariant_dimension;
  r["method"] = s.method;
  json found = json::array();
  for (const auto& e : s.found) {
    json vectors = json::array();
    for (std::size_t b = 0; b < e.basis.size(); ++b) {
      json entries = json::array();
      long support = 0;
      for (std::size_t j = 0; j < s.domain.size(); ++j) {
        const bool nonzero = e.exact_basis.empty() ? std::abs(e.basis[b][j]) > 1e-9 : e.exact_basis[b][j] != 0;
        if (!nonzero) continue;
        ++support;
        const std::string value = e.exact_basis.empty() ? std::to_string(e.basis[b][j]) : to_string(e.exact_basis[b][j]);
        entries.push_back(std::to_string(in.map.label(s.domain[j])) + "=" + value);
      }
      vectors.push_back({{"support", support}, {"values", entries}});
    }
    found.push_back({{"lambda", e.exact_lambda ? to_string(*e.exact_lambda) : std::to_string(e.lambda)},
                     {"multiplicity", e.basis.size()},
                     {"vectors", vectors}});
  }
  r["eigenfunctions"] = found;
  r["complex_skipped"] = s.complex_skipped;
  return s.found.empty() ? 0 : 1;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
    return out + "]";
  }
  if (v.is_object()) {
    std::string out;
    for (const auto& [key, val] : v.items()) out += (out.empty() ? "" : " ") + key + "=" + scalar_text(val);
    return "{" + out + "}";
  }
  return v.dump();
}

void render_text(const json& j, std::ostream& os, const std::string& prefix = "") {
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      render_text(v, os, prefix + key + ".");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << prefix << key << "[" << i << "]:";
        for (const auto& [k2, v2] : v[i].items()) os << " " << k2 << "=" << scalar_text(v2);
        os << "\n";
      }
    } else {
      os << prefix << key << " = " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete curvature of planar graphs"};
  app.require_subcommand(1);
  Options o;
  using Handler = int (*)(const Options&, json&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--file", o.file, "map file");
    sub->add_option("--gen", o.gen, "generator: pq:P,Q tree:P line platonic:NAME octa-hub radial-tree:B,S");
    sub->add_option("--radius", o.radius, "generator radius")->check(CLI::PositiveNumber);
    sub->add_option("--root", o.root, "root vertex label");
    sub->add_flag("--json", o.json_out, "machine-readable report");
    sub->add_option("--output", o.output, "write the report to a file");
    sub->add_option("--save", o.save, "write the input map in canonical form");
    sub->add_option("--seed", o.seed, "seed for randomized checks");
    commands.emplace_back(sub, h);
    return sub;
  };

  add("curvature", "corner, vertex and face curvature", cmd_curvature)
      ->add_flag("--list", o.list, "per-vertex table");
  commands.back().first->add_flag("--patterns", o.patterns, "survey vertex patterns n <= 6, faces <= 50 or inf");

  auto* cls = add("classify", "tessellation class and curvature side conditions", cmd_classify);
  cls->add_option("--mode", o.mode, "corner, vertex or face");

  auto set_options = [&](CLI::App* sub) {
    sub->add_flag("--all", o.all, "every vertex");
    sub->add_option("--vertices", o.vertices, "comma separated labels");
    sub->add_option("--ball", o.ball, "ball of this radius around the root")->check(CLI::NonNegativeNumber);
  };
  set_options(add("gauss-bonnet", "sum of curvatures of an induced subgraph", cmd_gauss_bonnet));

  auto* emb = add("embed", "tessellation embedding of a locally tessellating graph", cmd_embed);
  set_options(emb);
  emb->add_option("--eps", o.eps, "epsilon as a rational");
  emb->add_option("--horizon", o.horizon, "radius M for Step 2")->check(CLI::PositiveNumber);
  emb->add_option("--budget", o.budget, "vertex budget for added trees")->check(CLI::PositiveNumber);
  emb->add_option("--supergraph", o.supergraph, "write the supergraph with its correspondence");

  for (auto [name, help, h] : {std::tuple{"cutlocus", "local maxima of the distance to the root", cmd_cutlocus},
                               std::tuple{"admissibility", "sphere boundary properties (1)-(5)", cmd_admissibility},
                               std::tuple{"bigons", "minimal bigons and their interiors", cmd_bigons},
                               std::tuple{"growth", "sphere growth versus curvature", cmd_growth}})
    add(name, help, h)->add_option("--horizon", o.horizon, "horizon")->check(CLI::PositiveNumber);

  auto* che = add("cheeger", "Cheeger constants: brute force and curvature bounds", cmd_cheeger);
  set_options(che);
  che->add_option("--k", o.k, "maximal set size")->check(CLI::PositiveNumber);
  che->add_option("--proxy", o.proxy, "radii r for bounds on V minus B_r");
  che->add_option("--radial", o.radial, "closed-form proxy for the tree with degree BASE + SLOPE*d");

  auto* spe = add("spectrum", "Dirichlet bottoms against the Cheeger bound", cmd_spectrum);
  spe->add_option("--radii", o.radii, "comma separated radii");
  spe->add_option("--essential", o.essential, "radial tree BASE,SLOPE: smallest eigenvalues on r < d <= outer");
  spe->add_option("--outer", o.outer, "outer radius for --essential")->check(CLI::PositiveNumber);
  spe->add_option("--count", o.count, "eigenvalues per radius for --essential")->check(CLI::PositiveNumber);

  for (auto [name, help, h] : {std::tuple{"polar", "block tridiagonal form and E_n structure", cmd_polar},
                               std::tuple{"eigensearch", "finitely supported eigenfunctions", cmd_eigensearch}}) {
    auto* sub = add(name, help, h);
    sub->add_option("--horizon", o.horizon, "horizon")->check(CLI::PositiveNumber);
    sub->add_option("--operator", o.op, "laplacian, random or random-symmetric");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  json report;
  int status = 0;
  try {
    for (const auto& [sub, handler] : commands)
      if (sub->parsed()) {
        report["command"] = sub->get_name();
        status = handler(o, report);
      }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  report["exit"] = status;
  std::ostringstream text;
  if (o.json_out) text << report.dump(2) << "\n";
  else render_text(report, text);
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) {
      std::cerr << "cannot write " << o.output << "\n";
      return 2;
    }
    out << text.str();
  }
  std::cout << text.str();
  return status;
}
