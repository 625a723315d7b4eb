#include "hoalg/report.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "hoalg/errors.hpp"
#include "hoalg/formality.hpp"
#include "hoalg/symgroup.hpp"

namespace hoalg::cli {

namespace {

std::string num(const Scalar& x) { return to_string(x); }

json vec(const GradedSpace& V, const SVec& v) {
  json out = json::array();
  for (const auto& [i, c] : v) out.push_back({V[i].name, num(c)});
  return out;
}

json space(const GradedSpace& V) {
  json out = json::array();
  for (const auto& b : V.basis()) {
    json e{{"name", b.name}, {"degree", b.degree}};
    if (b.weight) e["weight"] = b.weight;
    if (b.unit) e["unit"] = true;
    out.push_back(e);
  }
  return out;
}

json multilinear(const Multilinear& f) {
  json values = json::array();
  for (const auto& [t, v] : f.values) {
    json in = json::array();
    for (int i : t) in.push_back((*f.in)[i].name);
    values.push_back({{"inputs", in}, {"value", vec(*f.out, v)}});
  }
  return {{"arity", f.arity}, {"bar_degree", f.degree}, {"values", values}};
}

json dims(const std::map<int, int>& m) {
  json out = json::array();
  for (const auto& [d, n] : m) out.push_back({{"degree", d}, {"dim", n}});
  return out;
}

json algebra_summary(const DgAlgebra& a) {
  json j{{"name", a.name}, {"species", species_name(a.species)}, {"dim", a.dim()}};
  if (a.unit) j["unit"] = (*a.space)[*a.unit].name;
  return j;
}

json certificate(const CertificateReport& c) {
  json slices = json::array();
  for (const auto& [k, d] : c.slices) slices.push_back({{"arity", k}, {"dim", num(d)}});
  return {{"certified", c.certified}, {"k_max", c.k_max}, {"slices", slices}, {"reason", c.reason}};
}

json obstruction(const ObstructionReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json x{{"k", e.k}, {"cocycle", e.cocycle}, {"vanishes", e.vanishes}, {"cochain", multilinear(e.cochain)}};
    if (e.witness) x["witness"] = multilinear(*e.witness);
    entries.push_back(x);
  }
  json j{{"complex", kind_name(r.kind)},
         {"species", species_name(r.species)},
         {"stage_bound", r.N},
         {"normalized", r.normalized},
         {"entries", entries},
         {"status", status_name(r.status)}};
  if (r.status == ObstructionStatus::nonzero) j["nonzero_k"] = r.nonzero_k;
  else j["certificate"] = certificate(r.certificate);
  return j;
}

json verdict(const FormalityVerdict& v) {
  json j{{"category", v.category}, {"verdict", verdict_name(v.verdict)}, {"k", v.k}, {"provenance", v.provenance}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

json quillen(const QuillenReport& q) {
  json rows = json::array();
  for (const auto& [key, v] : q.dims)
    rows.push_back({{"degree", key.first}, {"weight", key.second}, {"dim_UH", v.first}, {"dim_HU", v.second}});
  json j{{"table", rows}, {"dims_agree", q.dims_agree}, {"algebra_iso", q.algebra_iso}};
  if (!q.witness.empty()) j["witness"] = q.witness;
  return j;
}

void require(const DgAlgebra& a, Species s, const std::string& cmd) {
  if (a.species != s) throw InputError(cmd + " needs species " + species_name(s) + ", got " + species_name(a.species));
}

void require_axioms(const DgAlgebra& a) {
  auto r = check_axioms(a);
  if (!r.pass) throw InputError("algebra fails " + r.identity + " at " + r.witness);
}

int stage(const Options& o) { return o.stage.value_or(o.arity_bound); }

// ---------------------------------------------------------------------------

json cmd_check(const DgAlgebra& a, const Options&) {
  auto r = check_axioms(a);
  json j{{"pass", r.pass}};
  if (!r.pass) j["failure"] = {{"identity", r.identity}, {"witness", r.witness}};
  return j;
}

json cmd_cohomology(const DgAlgebra& a, const Options&) {
  require_axioms(a);
  auto H = cohomology_algebra(a);
  const GradedSpace& V = *H.algebra.space;
  json classes = json::array();
  for (int i = 0; i < V.dim(); ++i)
    classes.push_back({{"name", V[i].name}, {"degree", V.degree(i)},
                       {"representative", vec(*a.space, H.contraction.g.cols[i])}});
  json products = json::array();
  for (int i = 0; i < V.dim(); ++i)
    for (int j = 0; j < V.dim(); ++j) {
      if (H.algebra.unit && (i == *H.algebra.unit || j == *H.algebra.unit)) continue;
      if (H.algebra.product[i][j].empty()) continue;
      products.push_back({{"left", V[i].name}, {"right", V[j].name}, {"value", vec(V, H.algebra.product[i][j])}});
    }
  return {{"dims_by_degree", dims(V.dims_by_degree())}, {"classes", classes}, {"products", products}};
}

json cmd_transfer(const DgAlgebra& a, const Options& o) {
  require_axioms(a);
  int N = o.arity_bound;
  auto T = transfer_minimal_model(a, N);
  json ops = json::array();
  for (const auto& [n, op] : T.minimal.ops) ops.push_back(multilinear(op));
  auto rel = check_relations(T.minimal, N);
  json j{{"space", space(*T.minimal.space)}, {"operations", ops}, {"relations", rel.pass}};
  if (a.species == Species::Com) j["shuffle_vanishing"] = shuffle_vanishing_check(T.minimal.ops, N).pass;
  return j;
}

json cmd_obstructions(const DgAlgebra& a, const Options& o) {
  require_axioms(a);
  int N = stage(o);
  auto T = transfer_minimal_model(a, N);
  auto r = obstruction_sequence(T.minimal, N);
  return {{"obstructions", obstruction(r)},
          {"verdict", verdict(verdict_of(r, species_name(a.species), "transfer of " + a.name + ", arity " +
                                                                          std::to_string(N)))}};
}

json cmd_certify(const DgAlgebra& a, const Options& o) {
  json j = cmd_obstructions(a, o);
  j["degree_window"] = certificate(degree_bound_report(cohomology_algebra(a).algebra.space, a.species, 2));
  return j;
}

json cmd_envelope(const DgAlgebra& a, const Options& o) {
  require(a, Species::Lie, "envelope");
  int W = o.weight_bound;
  Envelope E = envelope(a, W);
  std::map<std::pair<int, int>, int> counts;
  for (const auto& b : E.algebra.space->basis()) ++counts[{b.weight, b.degree}];
  json basis = json::array();
  for (const auto& [k, n] : counts) basis.push_back({{"word_length", k.first}, {"degree", k.second}, {"dim", n}});
  json j{{"weight_bound", W}, {"pbw_words", basis}, {"axioms", check_axioms(E.algebra).pass}};
  j["quillen"] = quillen(quillen_check(a, W));
  AdjointModule ad = adjoint_module(a, W);
  EtaReport eta = pbw_eta(ad, poisson_module(a, W));
  RetractionReport pi = summand_retraction(ad, eta);
  j["symmetrization"] = {{"bijective", eta.bijective}, {"module_map", eta.module_map}};
  j["retraction"] = {{"identity_on_L", pi.identity_on_L}, {"kills_unit", pi.kills_unit}, {"equivariant", pi.equivariant}};
  return j;
}

Multilinear random_cochain(SpacePtr V, int n, int shift, std::mt19937_64& rng) {
  Multilinear f = Multilinear::zero(V, V, n, shift);
  std::uniform_int_distribution<int> coef(-2, 2);
  for_each_tuple(*V, n, -1, [&](const Tuple& t) {
    int sd = shift;
    for (int i : t) sd += V->sdeg(i);
    SVecBuilder v;
    for (int out = 0; out < V->dim(); ++out)
      if (V->sdeg(out) == sd) v.add(out, Scalar(coef(rng)));
    SVec w = v.take();
    if (!w.empty()) f.values.emplace(t, std::move(w));
  });
  return f;
}

json cmd_alt(const DgAlgebra& a, const Options& o) {
  require(a, Species::Lie, "alt");
  require_axioms(a);
  // Alt is checked on the minimal Lie algebra H(L)
  DgAlgebra H = cohomology_algebra(a).algebra;
  int W = std::min(o.weight_bound, 3);
  AdjointModule ad = adjoint_module(H, W);
  std::mt19937_64 rng(o.seed);
  json checks = json::array();
  bool all = true;
  int lo = 0, hi = 0;
  for (const auto& b : ad.space->basis()) lo = std::min(lo, b.degree), hi = std::max(hi, b.degree);
  for (int n = 1; n <= 3; ++n)
    for (int shift = lo - hi - n; shift <= hi - lo + n; ++shift) {
      Multilinear f = random_cochain(ad.space, n, shift, rng);
      if (f.values.empty()) continue;
      AltCheck c = alt_chain_check(ad, f);
      all = all && (c.pass || c.partial);
      json x{{"arity", n}, {"bar_degree", shift}, {"pass", c.pass}, {"partial", c.partial}};
      if (!c.detail.empty()) x["detail"] = c.detail;
      checks.push_back(x);
    }
  EtaReport eta = pbw_eta(ad, poisson_module(H, W));
  RetractionReport pi = summand_retraction(ad, eta);
  if (!all) throw InvariantViolation("Alt fails to commute with the differentials");
  return {{"weight_bound", W},
          {"seed", std::to_string(o.seed)},
          {"chain_map_checks", checks},
          {"chain_map", all},
          {"retraction_equivariant", pi.equivariant}};
}

json cmd_harrison_split(const DgAlgebra& a, const Options& o) {
  require(a, Species::Com, "harrison-split");
  require_axioms(a);
  DgAlgebra H = cohomology_algebra(a).algebra;
  auto ctx = hochschild_context(H);
  json rows = json::array();
  for (int n = 2; n <= std::min(o.arity_bound, kDefaultBarrCap); ++n) {
    auto s = barr_splitting(ctx, n);
    rows.push_back({{"n", n},
                    {"dim_hochschild", s.dim_hochschild},
                    {"dim_harrison", s.dim_harrison},
                    {"dim_complement", s.dim_w},
                    {"direct", s.direct},
                    {"kernels_agree", s.kernels_agree}});
  }
  return {{"algebra", "H(" + a.name + ")"}, {"splittings", rows}};
}

json cmd_compare_com_ass(const DgAlgebra& a, const Options& o) {
  require(a, Species::Com, "compare-com-ass");
  int N = stage(o);
  auto r = compare_com_vs_ass(a, N);
  json stages = json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"k", s.k},
                      {"harrison_vanishes", s.harrison_vanishes},
                      {"hochschild_vanishes", s.hochschild_vanishes},
                      {"witness_transferred", s.witness_transferred}});
  return {{"harrison", obstruction(r.harrison)},
          {"hochschild", obstruction(r.hochschild)},
          {"stages", stages},
          {"harrison_verdict", verdict(r.harrison_verdict)},
          {"hochschild_verdict", verdict(r.hochschild_verdict)},
          {"agreement", r.agree}};
}

json cmd_compare_lie_ass(const DgAlgebra& a, const Options& o) {
  require(a, Species::Lie, "compare-lie-ass");
  int N = stage(o);
  auto r = compare_lie_vs_ass(a, N, o.weight_bound);
  json j{{"ce", obstruction(r.ce)},
         {"ce_verdict", verdict(r.ce_verdict)},
         {"hochschild_verdict", verdict(r.hochschild_verdict)},
         {"quillen", quillen(r.quillen)},
         {"partial", r.partial},
         {"agreement", r.agree}};
  if (r.partial) {
    j["partial_reason"] = r.partial_reason;
    return j;
  }
  j["hochschild"] = obstruction(r.hochschild);
  if (r.compared_k) {
    j["class_comparison"] = {{"k", r.compared_k},
                             {"alt_is_cocycle", r.alt_is_cocycle},
                             {"classes_equal", r.classes_equal},
                             {"j_injective", r.j_injective}};
    if (r.class_witness) j["class_comparison"]["witness"] = multilinear(*r.class_witness);
  }
  return j;
}

using Handler = json (*)(const DgAlgebra&, const Options&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"check", cmd_check},
      {"cohomology", cmd_cohomology},
      {"transfer", cmd_transfer},
      {"obstructions", cmd_obstructions},
      {"envelope", cmd_envelope},
      {"alt", cmd_alt},
      {"harrison-split", cmd_harrison_split},
      {"compare-com-ass", cmd_compare_com_ass},
      {"compare-lie-ass", cmd_compare_lie_ass},
      {"certify", cmd_certify},
  };
  return h;
}

json header(const std::string& command) {
  return {{"tool", "hoalg"}, {"version", HOALG_VERSION}, {"schema", kSchema}, {"command", command}};
}

void render(std::ostringstream& out, const json& j, int indent, const std::string& key) {
  std::string pad(indent * 2, ' ');
  std::string lead = pad + (key.empty() ? "- " : key + ": ");
  if (j.is_object()) {
    out << pad << (key.empty() ? "-" : key + ":") << "\n";
    for (const auto& [k, v] : j.items()) render(out, v, indent + 1, k);
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& x) {
      return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); }));
    });
    if (flat) {
      std::string s;
      for (const auto& x : j) {
        if (!s.empty()) s += ", ";
        if (x.is_array()) {
          std::string inner;
          for (const auto& y : x) inner += (inner.empty() ? "" : " ") + (y.is_string() ? y.get<std::string>() : y.dump());
          s += inner;
        } else {
          s += x.is_string() ? x.get<std::string>() : x.dump();
        }
      }
      out << lead << "[" << s << "]\n";
    } else {
      out << pad << (key.empty() ? "-" : key + ":") << "\n";
      for (const auto& x : j) render(out, x, indent + 1, "");
    }
  } else {
    out << lead << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, h] : handlers()) n.push_back(k);
    return n;
  }();
  return names;
}

json run_command(const std::string& command, const DgAlgebra& a, const Options& o) {
  if (o.arity_bound < 2) throw InputError("--arity-bound must be at least 2");
  if (o.weight_bound < 1) throw InputError("--weight-bound must be at least 1");
  if (o.stage && *o.stage < 2) throw InputError("--stage must be at least 2");
  for (const auto& [name, h] : handlers()) {
    if (name != command) continue;
    json r = header(command);
    r["algebra"] = algebra_summary(a);
    r["parameters"] = {{"arity_bound", o.arity_bound}, {"weight_bound", o.weight_bound}, {"stage", stage(o)}};
    r["result"] = h(a, o);
    r["status"] = "ok";
    return r;
  }
  throw InputError("unknown command '" + command + "'");
}

json error_report(const std::string& command, const std::string& kind, const std::string& reason) {
  json r = header(command);
  r["status"] = "error";
  r["error"] = {{"kind", kind}, {"reason", reason}};
  return r;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_text(const json& report) {
  std::ostringstream out;
  for (const auto& [k, v] : report.items()) render(out, v, 0, k);
  return out.str();
}

}  // namespace hoalg::cli
