#include "hoalg/formality.hpp"

#include <algorithm>

#include "hoalg/errors.hpp"

namespace hoalg {

namespace {

std::optional<int> unit_of(const GradedSpace& V) {
  for (int i = 0; i < V.dim(); ++i)
    if (V[i].unit) return i;
  return std::nullopt;
}

bool strictly_unital(const PInftyStructure& s, int u) {
  for (const auto& [k, op] : s.ops) {
    if (k < 3) continue;
    for (const auto& [t, v] : op.values)
      if (std::find(t.begin(), t.end(), u) != t.end()) return false;
  }
  return true;
}

std::optional<std::string> weight_raising(const Multilinear& f) {
  for (const auto& [t, v] : f.values) {
    int w = f.tuple_weight(t);
    for (const auto& [o, c] : v)
      if (f.out->weight(o) > w) return format_tuple(*f.in, t) + " -> " + (*f.out)[o].name;
  }
  return std::nullopt;
}

// ordered (or graded-symmetric) k-tuples from `in`, counted by total suspended degree
std::map<int, Scalar> tuple_counts(const GradedSpace& in, int k, bool symmetric) {
  // dp[len][sum]
  std::vector<std::map<int, Scalar>> dp(k + 1);
  dp[0][0] = 1;
  if (!symmetric) {
    for (int len = 1; len <= k; ++len)
      for (const auto& [s, c] : dp[len - 1])
        for (int i = 0; i < in.dim(); ++i) dp[len][s + in.sdeg(i)] += c;
    return dp[k];
  }
  for (int i = 0; i < in.dim(); ++i) {
    int d = in.sdeg(i);
    int maxm = (d & 1) ? 1 : k;
    std::vector<std::map<int, Scalar>> next(k + 1);
    for (int len = 0; len <= k; ++len)
      for (const auto& [s, c] : dp[len])
        for (int m = 0; m <= maxm && len + m <= k; ++m) next[len + m][s + m * d] += c;
    dp = std::move(next);
  }
  return dp[k];
}

bool j_injective_on_slice(const DgAlgebra& HL, const AdjointModule& ad, int k) {
  OperadicContext cs = ce_context(HL);
  OperadicContext cm = ce_context(HL, ad.module);
  DifferentialMatrix ds = differential_matrix(cs, k, 1);
  DifferentialMatrix bs = differential_matrix(cs, k - 1, 0);
  DifferentialMatrix bm = differential_matrix(cm, k - 1, 0);
  std::vector<SVec> Z;
  for (const auto& z : kernel_basis(ds.cols)) {
    SVecBuilder v;
    for (const auto& [i, c] : z) v.add(ds.src_space[i], c);
    Z.push_back(v.take());
  }
  std::vector<SVec> zb = Z;
  zb.insert(zb.end(), bs.cols.begin(), bs.cols.end());
  int hs = rank(zb) - rank(bs.cols);
  std::vector<SVec> jz = bm.cols;
  for (const auto& z : Z) jz.push_back(bm.tgt.coordinates(retarget(ds.src.from_coords(z), ad.space)));
  return rank(jz) - rank(bm.cols) == hs;
}

}  // namespace

ComplexKind default_kind(Species s) {
  switch (s) {
    case Species::Ass: return ComplexKind::hochschild;
    case Species::Com: return ComplexKind::harrison;
    case Species::Lie: return ComplexKind::chevalley_eilenberg;
  }
  return ComplexKind::hochschild;
}

OperadicContext structure_context(const PInftyStructure& s, ComplexKind kind, bool filtered) {
  bool lie = s.species == Species::Lie;
  if ((kind == ComplexKind::chevalley_eilenberg) != lie)
    throw InputError(kind_name(kind) + " complex does not match species " + species_name(s.species));
  if (kind == ComplexKind::harrison && s.species != Species::Com)
    throw InputError("Harrison complex needs a commutative structure");
  SpacePtr in = s.space;
  if (!lie) {
    auto u = unit_of(*s.space);
    if (u && strictly_unital(s, *u)) in = reduced_space(s.space);
  }
  OperadicContext c = make_context(kind, s.op(2), in, s.space, s.max_weight);
  c.filtered = filtered;
  return c;
}

// ---------------------------------------------------------------------------

CertificateReport degree_bound_report(const GradedSpace& in, const GradedSpace& out, bool symmetric, int k0) {
  CertificateReport r;
  if (in.dim() == 0 || out.dim() == 0) {
    r.certified = true;
    r.k_max = 0;
    r.reason = "no inputs";
    return r;
  }
  int a = in.sdeg(0), b = a, lo = out.sdeg(0), hi = lo;
  for (int i = 0; i < in.dim(); ++i) a = std::min(a, in.sdeg(i)), b = std::max(b, in.sdeg(i));
  for (int o = 0; o < out.dim(); ++o) lo = std::min(lo, out.sdeg(o)), hi = std::max(hi, out.sdeg(o));
  // b_k needs k input degrees summing to (output degree - 1)
  if (a > 0) {
    r.k_max = hi - 1 >= 0 ? (hi - 1) / a : 0;
  } else if (b < 0) {
    r.k_max = lo - 1 <= 0 ? (lo - 1) / b : 0;
  } else if (a == 0 && b == 0) {
    bool reach = false;
    for (int o = 0; o < out.dim(); ++o) reach |= out.sdeg(o) == 1;
    if (reach) {
      r.reason = "inputs of suspended degree 0 reach the output degree at every arity";
      return r;
    }
    r.certified = true;
    r.k_max = 0;
    r.reason = "inputs of suspended degree 0 never reach the output degree";
    return r;
  } else {
    r.reason = "input degrees of both signs: the degree window does not close";
    return r;
  }
  for (int k = k0 + 1; k <= r.k_max; ++k) {
    auto counts = tuple_counts(in, k, symmetric);
    Scalar dim(0);
    for (int o = 0; o < out.dim(); ++o) {
      auto it = counts.find(out.sdeg(o) - 1);
      if (it != counts.end()) dim += it->second;
    }
    r.slices[k] = dim;
  }
  r.certified = std::all_of(r.slices.begin(), r.slices.end(), [](const auto& e) { return e.second == 0; });
  r.reason = r.certified ? "every slice beyond the stage is empty" : "a slice beyond the stage is nonzero";
  return r;
}

CertificateReport degree_bound_report(const SpacePtr& H, Species species, int k0) {
  SpacePtr in = species == Species::Lie ? H : reduced_space(H);
  return degree_bound_report(*in, *H, species == Species::Lie, k0);
}

bool degree_bound_certificate(const SpacePtr& H, Species species, int k0) {
  return degree_bound_report(H, species, k0).certified;
}

// ---------------------------------------------------------------------------

std::string status_name(ObstructionStatus s) {
  switch (s) {
    case ObstructionStatus::all_vanish: return "all-vanish-to-stage-N";
    case ObstructionStatus::nonzero: return "nonzero-at-k";
    case ObstructionStatus::certified_formal: return "certified-formal";
  }
  return "?";
}

ObstructionReport obstruction_sequence(const PInftyStructure& minimal, int N, std::optional<ComplexKind> kind,
                                       bool filtered) {
  if (!minimal.minimal()) throw InputError("obstruction sequence needs a minimal structure");
  auto rel = check_relations(minimal, N);
  if (!rel.pass)
    throw InputError("structure fails its relations at arity " + std::to_string(rel.arity) + ": " + rel.witness);
  ObstructionReport r;
  r.species = minimal.species;
  r.kind = kind.value_or(default_kind(minimal.species));
  r.N = N;
  OperadicContext ctx = structure_context(minimal, r.kind, filtered);
  r.normalized = ctx.input->dim() != minimal.space->dim();
  PInftyStructure s = minimal;
  int from = 3;
  for (;;) {
    int k = 0;
    Multilinear b;
    for (int j = from; j <= N && k == 0; ++j) {
      b = restrict_inputs(s.op(j), ctx.input, s.max_weight);
      if (!b.is_zero()) k = j;
    }
    if (k == 0) break;
    if (filtered)
      if (auto w = weight_raising(b)) throw TruncationOverflow("obstruction b_" + std::to_string(k) + " raises weight at " + *w);
    ObstructionEntry e;
    e.k = k;
    e.cochain = b;
    e.cocycle = differential(ctx, b).is_zero();
    if (!e.cocycle) throw InvariantViolation("obstruction b_" + std::to_string(k) + " is not a cocycle");
    if (r.kind == ComplexKind::harrison && !is_shuffle_vanishing(b))
      throw InvariantViolation("obstruction b_" + std::to_string(k) + " is not a Harrison cochain");
    e.witness = is_coboundary(ctx, b);
    e.vanishes = e.witness.has_value();
    r.entries.push_back(e);
    if (!e.vanishes) {
      r.status = ObstructionStatus::nonzero;
      r.nonzero_k = k;
      r.gauged = s;
      return r;
    }
    s = gauge_transform(s, *e.witness, N);
    for (int j = 3; j <= k; ++j)
      if (!restrict_inputs(s.op(j), ctx.input, s.max_weight).is_zero())
        throw InvariantViolation("gauge at stage " + std::to_string(k) + " leaves b_" + std::to_string(j));
    auto after = check_relations(s, N);
    if (!after.pass) throw InvariantViolation("gauged structure fails its relations: " + after.witness);
    from = k + 1;
  }
  r.gauged = s;
  r.certificate = degree_bound_report(*ctx.input, *ctx.output, r.kind == ComplexKind::chevalley_eilenberg, N);
  r.status = r.certificate.certified ? ObstructionStatus::certified_formal : ObstructionStatus::all_vanish;
  return r;
}

// ---------------------------------------------------------------------------

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::formal_to_stage: return "formal-to-stage-N";
    case Verdict::certified_formal: return "certified-formal";
    case Verdict::non_formal: return "non-formal";
    case Verdict::partial: return "partial";
  }
  return "?";
}

FormalityVerdict verdict_of(const ObstructionReport& r, const std::string& category, const std::string& provenance) {
  FormalityVerdict v;
  v.category = category;
  v.provenance = provenance;
  switch (r.status) {
    case ObstructionStatus::nonzero:
      v.verdict = Verdict::non_formal;
      v.k = r.nonzero_k;
      break;
    case ObstructionStatus::certified_formal:
      v.verdict = Verdict::certified_formal;
      v.k = r.N;
      break;
    case ObstructionStatus::all_vanish:
      v.verdict = Verdict::formal_to_stage;
      v.k = r.N;
      break;
  }
  return v;
}

ComAssReport compare_com_vs_ass(const DgAlgebra& cdga, int N) {
  if (cdga.species != Species::Com) throw InputError("compare-com-ass needs a commutative algebra");
  auto ax = check_axioms(cdga);
  if (!ax.pass) throw InputError("algebra fails " + ax.identity + " at " + ax.witness);
  ComAssReport r;
  PInftyStructure T = transfer_minimal_model(cdga, N).minimal;
  r.harrison = obstruction_sequence(T, N, ComplexKind::harrison);
  PInftyStructure Tass = T;
  Tass.species = Species::Ass;
  r.hochschild = obstruction_sequence(Tass, N, ComplexKind::hochschild);
  std::string prov = "C-infinity transfer of " + cdga.name + ", arity " + std::to_string(N);
  r.harrison_verdict = verdict_of(r.harrison, "Com", prov + ", Harrison");
  r.hochschild_verdict = verdict_of(r.hochschild, "Ass", prov + ", Hochschild");

  OperadicContext harr = structure_context(T, ComplexKind::harrison);
  OperadicContext hoch = harr;
  hoch.kind = ComplexKind::hochschild;
  for (const auto& e : r.harrison.entries) {
    StageComparison st;
    st.k = e.k;
    st.harrison_vanishes = e.vanishes;
    if (e.vanishes && !(differential(hoch, *e.witness) == e.cochain))
      throw InvariantViolation("Harrison witness is not a Hochschild witness at stage " + std::to_string(e.k));
    auto y = is_coboundary(hoch, e.cochain);
    st.hochschild_vanishes = y.has_value();
    if (y) {
      hochschild_to_harrison_witness(harr, e.cochain, *y);
      st.witness_transferred = true;
    }
    if (st.harrison_vanishes != st.hochschild_vanishes)
      throw InvariantViolation("Harrison and Hochschild classes disagree at stage " + std::to_string(e.k));
    r.stages.push_back(st);
  }
  r.agree = r.harrison_verdict == r.hochschild_verdict;
  if (!r.agree)
    throw InvariantViolation("Harrison verdict " + verdict_name(r.harrison_verdict.verdict) +
                             " differs from Hochschild verdict " + verdict_name(r.hochschild_verdict.verdict));
  return r;
}

LieAssReport compare_lie_vs_ass(const DgAlgebra& L, int N, int W) {
  if (L.species != Species::Lie) throw InputError("compare-lie-ass needs a Lie algebra");
  auto ax = check_axioms(L);
  if (!ax.pass) throw InputError("algebra fails " + ax.identity + " at " + ax.witness);
  LieAssReport r;
  TransferResult TA = transfer_minimal_model(L, N);
  r.ce = obstruction_sequence(TA.minimal, N, ComplexKind::chevalley_eilenberg);
  r.ce_verdict = verdict_of(r.ce, "Lie", "L-infinity transfer of " + L.name + ", arity " + std::to_string(N) + ", CE");
  r.quillen = quillen_check(L, W);

  auto partial = [&](const std::string& why) {
    r.partial = true;
    r.partial_reason = why;
    r.hochschild_verdict.category = "Ass";
    r.hochschild_verdict.verdict = Verdict::partial;
    r.hochschild_verdict.reason = why;
    return r;
  };
  Envelope E = envelope(L, W);
  TransferResult TB;
  try {
    TB = transfer_minimal_model(E.algebra, N, true);
  } catch (const InputError& e) {
    return partial(std::string("envelope transfer: ") + e.what());
  }
  TB.minimal.species = Species::Ass;
  try {
    r.hochschild = obstruction_sequence(TB.minimal, N, ComplexKind::hochschild, true);
  } catch (const TruncationOverflow& e) {
    return partial(e.what());
  }
  r.hochschild_verdict = verdict_of(r.hochschild, "Ass",
                                    "A-infinity transfer of U(" + L.name + ") to word length " + std::to_string(W) +
                                        ", arity " + std::to_string(N) + ", filtered Hochschild");

  int kc = 0;
  for (const auto* seq : {&r.ce, &r.hochschild})
    if (!seq->entries.empty()) kc = kc == 0 ? seq->entries.front().k : std::min(kc, seq->entries.front().k);
  r.agree = r.ce_verdict == r.hochschild_verdict;
  if (kc == 0) {
    if (!r.agree) throw InvariantViolation("CE and envelope verdicts disagree with no obstruction on either side");
    return r;
  }
  r.compared_k = kc;
  if (kc > W) return partial("weight bound " + std::to_string(W) + " is below the compared arity " + std::to_string(kc));
  if (!r.quillen.algebra_iso) throw InvariantViolation("UH(L) -> H(UL) is not an isomorphism: " + r.quillen.witness);

  auto cochain_at = [&](const ObstructionReport& seq, const Multilinear& fallback) {
    for (const auto& e : seq.entries)
      if (e.k == kc) return e.cochain;
    return fallback;
  };
  const PInftyStructure& HA = TA.minimal;
  const PInftyStructure& HB = TB.minimal;
  Multilinear lk = cochain_at(r.ce, Multilinear::zero(HA.space, HA.space, kc, 1));
  Multilinear mk = restrict_inputs(cochain_at(r.hochschild, Multilinear::zero(HB.space, HB.space, kc, 1)), HB.space,
                                   HB.max_weight);

  DgAlgebra HL = empty_algebra("H(" + L.name + ")", Species::Lie, HA.space);
  HL.product = product_from_bar(HA.op(2));
  AdjointModule ad = adjoint_module(HL, W);
  const GradedSpace& M = *ad.space;
  const GradedSpace& Uspace = *E.algebra.space;

  // q: UH(L)_{<=W} -> H(U_{<=W} L), [y_1]...[y_k] -> f(g y_1 ... g y_k)
  LinearMap q = LinearMap::zero(ad.space, HB.space, 0);
  auto gl = name_map(*L.space, Uspace);
  for (int m = 0; m < M.dim(); ++m) {
    const Tuple& w = ad.env.basis.words[ad.env.algebra.space->index(M[m].name)];
    SVec v = unit_svec(*E.algebra.unit);
    for (int y : w) {
      SVecBuilder gy;
      for (const auto& [i, c] : TA.contraction.g.cols[y]) gy.add(gl[i], c);
      v = E.algebra.multiply(v, gy.take());
    }
    q.cols[m] = TB.contraction.f.apply(v);
  }
  LinearMap qinv = inverse(q);

  // m_k pulled back along q on H(L)-inputs
  Multilinear mq = Multilinear::zero(HA.space, ad.space, kc, 1);
  for_each_tuple(*HA.space, kc, -1, [&](const Tuple& t) {
    std::vector<SVec> xs;
    for (int x : t) xs.push_back(q.cols[M.index((*HA.space)[x].name)]);
    SVec v = qinv.apply(eval_tensor(mk, xs));
    if (!v.empty()) mq.values.emplace(t, std::move(v));
  });

  OperadicContext cm = ce_context(HL, ad.module);
  Multilinear A = alt(ad, mq);
  r.alt_is_cocycle = differential(cm, A).is_zero();
  if (!r.alt_is_cocycle) throw InvariantViolation("Alt of the Hochschild obstruction is not a CE cocycle");
  Multilinear J = retarget(lk, ad.space);
  r.class_witness = is_coboundary(cm, A.plus(J, -1));
  r.classes_equal = r.class_witness.has_value();
  r.j_injective = j_injective_on_slice(HL, ad, kc);
  if (!r.classes_equal) throw InvariantViolation("Alt*[m_k] differs from j*[l_k] at k = " + std::to_string(kc));
  if (!r.j_injective) throw InvariantViolation("j* is not injective at arity " + std::to_string(kc));
  if (!r.agree)
    throw InvariantViolation("CE verdict " + verdict_name(r.ce_verdict.verdict) + " differs from envelope verdict " +
                             verdict_name(r.hochschild_verdict.verdict));
  return r;
}

}  // namespace hoalg
