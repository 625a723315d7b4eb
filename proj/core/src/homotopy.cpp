#include "hoalg/homotopy.hpp"

#include "hoalg/cofree.hpp"
#include "hoalg/errors.hpp"
#include "hoalg/opcohomology.hpp"

namespace hoalg {

Multilinear PInftyStructure::op(int n) const {
  auto it = ops.find(n);
  if (it != ops.end()) return it->second;
  return Multilinear::zero(space, space, n, 1, max_weight);
}

Multilinear InftyMorphism::component(int n) const {
  auto it = components.find(n);
  if (it != components.end()) return it->second;
  return Multilinear::zero(source, target, n, 0, max_weight);
}

PInftyStructure strict_structure(const DgAlgebra& a, int arity_bound) {
  PInftyStructure s;
  s.species = a.species;
  s.space = a.space;
  s.arity_bound = arity_bound;
  s.max_weight = a.product_weight_bound;
  Multilinear b1 = bar_differential(a);
  b1.max_weight = s.max_weight;
  if (!b1.is_zero()) s.ops.emplace(1, std::move(b1));
  Multilinear b2 = bar_product(a);
  if (!b2.is_zero()) s.ops.emplace(2, std::move(b2));
  return s;
}

InftyMorphism identity_morphism(const PInftyStructure& s) {
  InftyMorphism m;
  m.species = s.species;
  m.source = m.target = s.space;
  m.arity_bound = s.arity_bound;
  m.max_weight = s.max_weight;
  m.components.emplace(1, from_linear(LinearMap::identity(s.space), s.max_weight));
  return m;
}

namespace {

std::optional<std::string> first_value(const Multilinear& f) {
  if (f.is_zero()) return std::nullopt;
  const auto& [t, v] = *f.values.begin();
  return format_tuple(*f.in, t) + " -> " + format_svec(*f.out, v);
}

Multilinear insert(Species s, const Multilinear& f, const Multilinear& g, SpacePtr in, int mw) {
  return s == Species::Lie ? nr_compose(f, g, in, mw) : compose(f, g, in, mw);
}

Multilinear bracket(Species s, const Multilinear& f, const Multilinear& g, SpacePtr in, int mw) {
  return s == Species::Lie ? nr_bracket(f, g, in, mw) : gerstenhaber(f, g, in, mw);
}

void accumulate_into(std::optional<Multilinear>& acc, const Multilinear& x) {
  if (!acc) {
    acc = x;
    return;
  }
  acc = acc->plus(retarget(x, acc->out));
}

}  // namespace

Multilinear pushforward(Species s, const std::map<int, Multilinear>& F, const std::map<int, Multilinear>& phi, int k,
                        SpacePtr in, int max_weight) {
  std::optional<Multilinear> acc;
  for (const auto& [j, Fj] : F) {
    if (j > k) continue;
    std::map<int, Multilinear> avail;
    for (const auto& [a, p] : phi)
      if (a <= k - j + 1) avail.emplace(a, p);
    if (avail.empty()) continue;
    Multilinear term = s == Species::Lie ? compose_symmetric(Fj, avail, k, in, max_weight)
                                         : compose_tensor(Fj, std::vector<std::map<int, Multilinear>>(j, avail), k,
                                                          in, max_weight);
    accumulate_into(acc, term);
  }
  if (!acc) {
    SpacePtr out = F.empty() ? in : F.begin()->second.out;
    return Multilinear::zero(in, out, k, F.empty() ? 0 : F.begin()->second.degree, max_weight);
  }
  return *acc;
}

Multilinear relation_component(const PInftyStructure& s, int k) {
  Multilinear acc = Multilinear::zero(s.space, s.space, k, 2, s.max_weight);
  for (const auto& [i, Bi] : s.ops)
    for (const auto& [j, Bj] : s.ops)
      if (i + j == k + 1) acc = acc.plus(insert(s.species, Bi, Bj, s.space, s.max_weight));
  return acc;
}

RelationReport shuffle_vanishing_check(const std::map<int, Multilinear>& maps, int N) {
  RelationReport r;
  for (const auto& [n, f] : maps) {
    if (n < 2 || n > N) continue;
    if (auto d = shuffle_vanishing_defect(f)) return {false, n, *d};
  }
  return r;
}

RelationReport check_relations(const PInftyStructure& s, int N) {
  if (s.species == Species::Lie)
    for (const auto& [n, B] : s.ops) {
      if (n > N) continue;
      if (auto t = symmetry_defect(B, SignMode::koszul))
        return {false, n, "operation not graded symmetric at " + format_tuple(*s.space, *t)};
    }
  for (int k = 1; k <= N; ++k)
    if (auto w = first_value(relation_component(s, k))) return {false, k, *w};
  if (s.species == Species::Com) return shuffle_vanishing_check(s.ops, N);
  return {};
}

RelationReport check_morphism(const InftyMorphism& phi, const PInftyStructure& src, const PInftyStructure& tgt,
                              int N) {
  int mw = src.max_weight;
  for (int k = 1; k <= N; ++k) {
    Multilinear lhs = pushforward(phi.species, tgt.ops, phi.components, k, src.space, mw);
    lhs = retarget(lhs, phi.target);
    Multilinear rhs = Multilinear::zero(src.space, phi.target, k, 1, mw);
    for (const auto& [i, p] : phi.components)
      for (const auto& [j, B] : src.ops)
        if (i + j == k + 1) rhs = rhs.plus(retarget(insert(phi.species, p, B, src.space, mw), phi.target));
    Multilinear diff = lhs.plus(rhs, -1);
    if (auto w = first_value(diff)) return {false, k, *w};
  }
  if (phi.species == Species::Com) return shuffle_vanishing_check(phi.components, N);
  return {};
}

InftyMorphism compose_morphisms(const InftyMorphism& psi, const InftyMorphism& phi, int N) {
  InftyMorphism r;
  r.species = phi.species;
  r.source = phi.source;
  r.target = psi.target;
  r.arity_bound = N;
  r.max_weight = phi.max_weight;
  for (int k = 1; k <= N; ++k) {
    Multilinear c = pushforward(phi.species, psi.components, phi.components, k, phi.source, phi.max_weight);
    c = retarget(c, psi.target);
    if (!c.is_zero()) r.components.emplace(k, std::move(c));
  }
  return r;
}

TransferResult transfer_minimal_model(const DgAlgebra& a, const Contraction& c, int N) {
  if (!check_axioms(a).pass) throw InputError("transfer: the algebra fails its axioms");
  auto defects = contraction_defects(c);
  if (!defects.empty()) throw InputError("transfer: contraction fails " + defects.front());
  if (N < 1) throw InputError("transfer: arity bound must be positive");
  Species sp = a.species;
  int mw = a.product_weight_bound;
  SpacePtr H = c.small.space;
  PInftyStructure A = strict_structure(a, N);
  std::map<int, Multilinear> B2{{2, bar_product(a)}};

  TransferResult r;
  r.contraction = c;
  r.minimal.species = sp;
  r.minimal.space = H;
  r.minimal.arity_bound = N;
  r.minimal.max_weight = mw;
  r.inclusion.species = sp;
  r.inclusion.source = H;
  r.inclusion.target = a.space;
  r.inclusion.arity_bound = N;
  r.inclusion.max_weight = mw;
  std::map<int, Multilinear>& G = r.inclusion.components;
  G.emplace(1, from_linear(c.g, mw));
  for (int n = 2; n <= N; ++n) {
    Multilinear X = pushforward(sp, B2, G, n, H, mw);
    Multilinear b = postcompose(c.f, X);
    if (!b.is_zero()) r.minimal.ops.emplace(n, std::move(b));
    Multilinear gn = postcompose(c.h, X).scaled(-1);
    if (!gn.is_zero()) G.emplace(n, std::move(gn));
  }
  if (auto rep = check_relations(r.minimal, N); !rep.pass)
    throw InvariantViolation("transferred structure fails its relations at arity " + std::to_string(rep.arity) +
                             ": " + rep.witness);
  if (auto rep = check_morphism(r.inclusion, r.minimal, A, N); !rep.pass)
    throw InvariantViolation("transferred inclusion fails the morphism relations at arity " +
                             std::to_string(rep.arity) + ": " + rep.witness);
  return r;
}

TransferResult transfer_minimal_model(const DgAlgebra& a, int N, bool by_weight) {
  // through cohomology_algebra so that the unit class keeps its flag
  return transfer_minimal_model(a, cohomology_algebra(a, by_weight).contraction, N);
}

PInftyStructure gauge_transform(const PInftyStructure& s, const Multilinear& phi, int N) {
  if (!s.minimal()) throw InputError("gauge transform needs a minimal structure");
  if (phi.degree != 0) throw InputError("gauge component must have bar degree 0");
  if (phi.arity < 2) throw InputError("gauge component must have arity >= 2");
  if (s.species == Species::Lie && symmetry_defect(phi, SignMode::koszul))
    throw InputError("gauge component is not graded symmetric");
  if (s.species == Species::Com && !is_shuffle_vanishing(phi))
    throw InputError("gauge component does not vanish on shuffles");
  Multilinear th = restrict_inputs(retarget(phi, s.space), s.space, s.max_weight);
  PInftyStructure out = s;
  out.arity_bound = N;
  std::map<int, Multilinear> term;
  for (const auto& [n, B] : s.ops)
    if (n <= N) term.emplace(n, B);
  for (int m = 1; !term.empty(); ++m) {
    std::map<int, Multilinear> next;
    for (const auto& [n, T] : term) {
      int k = n + th.arity - 1;
      if (k > N) continue;
      Multilinear v = bracket(s.species, th, T, s.space, s.max_weight).scaled(Scalar(1, m));
      if (v.is_zero()) continue;
      auto [it, fresh] = next.emplace(k, v);
      if (!fresh) it->second = it->second.plus(v);
    }
    term = std::move(next);
    for (const auto& [k, v] : term) {
      auto [it, fresh] = out.ops.emplace(k, v);
      if (!fresh) it->second = it->second.plus(v);
    }
  }
  for (auto it = out.ops.begin(); it != out.ops.end();) it = it->second.is_zero() ? out.ops.erase(it) : std::next(it);
  return out;
}

namespace {

bool same_ops(const PInftyStructure& a, const PInftyStructure& b, int N) {
  try {
    for (int k = 1; k <= N; ++k)
      if (!(a.op(k) == restrict_inputs(retarget(b.op(k), a.space), a.space, a.max_weight))) return false;
  } catch (const TruncationOverflow&) {
    return false;  // the spaces do not match by name
  }
  return true;
}

}  // namespace

NormalizedMorphism normalize_morphism(const InftyMorphism& psi, const PInftyStructure& source,
                                      const PInftyStructure& target) {
  int N = std::min({psi.arity_bound, source.arity_bound, target.arity_bound});
  if (!source.minimal() || !target.minimal()) throw InputError("normalize_morphism needs minimal structures");
  SpacePtr S = source.space;
  int mw = source.max_weight;
  // linear part as a matrix source -> target
  LinearMap L = LinearMap::zero(S, psi.target, 0);
  Multilinear p1 = psi.component(1);
  for (int i = 0; i < S->dim(); ++i) L.cols[i] = p1.at({i});
  if (S->dim() != psi.target->dim()) throw InputError("first component is not invertible");
  LinearMap Linv;
  try {
    Linv = inverse(L);
  } catch (const InputError&) {
    throw InputError("first component is not invertible");
  }

  NormalizedMorphism r;
  r.morphism = psi;
  r.morphism.arity_bound = N;
  r.morphism.target = S;
  r.morphism.components.clear();
  for (const auto& [n, c] : psi.components)
    if (n <= N) {
      Multilinear v = postcompose(Linv, c);
      if (!v.is_zero()) r.morphism.components.emplace(n, std::move(v));
    }
  // target transported along the linear part: Linv b' L^{⊗n}
  r.target = target;
  r.target.space = S;
  r.target.arity_bound = N;
  r.target.ops.clear();
  std::map<int, Multilinear> Lm{{1, from_linear(L, mw)}};
  for (const auto& [n, B] : target.ops) {
    if (n > N) continue;
    Multilinear v = postcompose(Linv, compose_tensor(B, std::vector<std::map<int, Multilinear>>(n, Lm), n, S, mw));
    if (!v.is_zero()) r.target.ops.emplace(n, std::move(v));
  }

  r.n = N + 1;
  for (int k = 3; k <= N; ++k)
    if (!source.op(k).is_zero()) {
      r.n = k;
      break;
    }
  for (int i = 2; i <= r.n - 2 && i <= N; ++i) {
    Multilinear th = r.morphism.component(i);
    if (th.is_zero()) continue;
    Multilinear neg = th.scaled(-1);
    InftyMorphism E;
    E.species = psi.species;
    E.source = E.target = S;
    E.arity_bound = N;
    E.max_weight = mw;
    E.components = exp_coderivation(psi.species, {{i, neg}}, N);
    r.morphism = compose_morphisms(E, r.morphism, N);
    r.target = gauge_transform(r.target, neg, N);
  }

  if (!(r.morphism.component(1) == from_linear(LinearMap::identity(S), mw)))
    throw InvariantViolation("normalized first component is not the identity");
  for (int i = 2; i <= r.n - 2 && i <= N; ++i)
    if (!r.morphism.component(i).is_zero())
      throw InvariantViolation("normalized component " + std::to_string(i) + " does not vanish");
  if (auto rep = check_morphism(r.morphism, source, r.target, N); !rep.pass)
    throw InvariantViolation("normalized morphism fails its relations at arity " + std::to_string(rep.arity) + ": " +
                             rep.witness);
  r.target_unchanged = S->dim() == target.space->dim() && same_ops(r.target, target, N);
  return r;
}

int desuspension_sign(const GradedSpace& V, const Tuple& t) {
  int n = static_cast<int>(t.size());
  int s = 0;
  for (int i = 0; i < n; ++i) s += (n - 1 - i) * V.degree(t[i]);
  return s & 1 ? -1 : 1;
}

}  // namespace hoalg
