#include "hoalg/enveloping.hpp"

#include <algorithm>
#include <set>

#include "hoalg/errors.hpp"

namespace hoalg {

namespace {

bool odd(const GradedSpace& V, int i) { return V.degree(i) & 1; }

int word_degree(const GradedSpace& V, const Tuple& w) {
  int s = 0;
  for (int i : w) s += V.degree(i);
  return s;
}

Tuple splice(const Tuple& w, size_t at, size_t len, int letter) {
  Tuple out(w.begin(), w.begin() + at);
  out.push_back(letter);
  out.insert(out.end(), w.begin() + at + len, w.end());
  return out;
}

// graded-commutative normal form: sorted word and Koszul sign, 0 on a repeated odd letter
std::pair<Tuple, int> sort_word(const GradedSpace& V, Tuple w) {
  int sign = 1;
  for (size_t i = 1; i < w.size(); ++i)
    for (size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
      if (odd(V, w[j - 1]) && odd(V, w[j])) sign = -sign;
      std::swap(w[j - 1], w[j]);
    }
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && odd(V, w[i])) return {w, 0};
  return {w, sign};
}

SVec act_vec(const LeftModule& M, int g, const SVec& m) {
  SVecBuilder b;
  for (const auto& [j, c] : m) b.add(M.act(g, j), c);
  return b.take();
}

// columns of `from` re-expressed by name in `to`
SVec rename(const SVec& v, const GradedSpace& from, const GradedSpace& to) {
  SVecBuilder b;
  for (const auto& [i, c] : v) {
    auto j = to.find(from[i].name);
    if (!j) throw TruncationOverflow(from[i].name + " lies outside the truncation");
    b.add(*j, c);
  }
  return b.take();
}

}  // namespace

PBWBasis pbw_basis(const GradedSpace& L, int W, const std::string& sep) {
  PBWBasis b;
  std::vector<BasisElement> elems;
  Tuple w;
  std::function<void(int)> rec = [&](int start) {
    b.index[w] = static_cast<int>(b.words.size());
    b.words.push_back(w);
    std::string name;
    for (int i : w) name += (name.empty() ? "" : sep) + L[i].name;
    elems.push_back({w.empty() ? "1" : name, word_degree(L, w), static_cast<int>(w.size()), w.empty()});
    if (static_cast<int>(w.size()) == W) return;
    for (int i = start; i < L.dim(); ++i) {
      if (!w.empty() && w.back() == i && odd(L, i)) continue;
      w.push_back(i);
      rec(i);
      w.pop_back();
    }
  };
  rec(0);
  // by length, then lexicographically
  std::vector<int> order(b.words.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return b.words[x].size() < b.words[y].size(); });
  PBWBasis out;
  std::vector<BasisElement> sorted;
  for (int k : order) {
    out.index[b.words[k]] = static_cast<int>(out.words.size());
    out.words.push_back(b.words[k]);
    sorted.push_back(elems[k]);
  }
  out.space = make_space(std::move(sorted));
  return out;
}

SVec Envelope::normal_form(const Tuple& word, const std::function<int(int)>& pick) const {
  if (static_cast<int>(word.size()) > W) throw TruncationOverflow("word longer than the envelope truncation");
  if (!pick) {
    auto it = cache_.find(word);
    if (it != cache_.end()) return it->second;
  }
  const GradedSpace& L = *lie.space;
  std::vector<size_t> cand;
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] > word[i + 1] || (word[i] == word[i + 1] && odd(L, word[i]))) cand.push_back(i);
  SVec res;
  if (cand.empty()) {
    res = unit_svec(basis.index.at(word));
  } else {
    size_t i = cand[pick ? pick(static_cast<int>(cand.size())) : 0];
    int a = word[i], b = word[i + 1];
    SVecBuilder acc;
    if (a == b) {
      for (const auto& [c, x] : lie.product[a][a]) acc.add(normal_form(splice(word, i, 2, c), pick), x / 2);
    } else {
      Tuple sw = word;
      std::swap(sw[i], sw[i + 1]);
      acc.add(normal_form(sw, pick), odd(L, a) && odd(L, b) ? -1 : 1);
      for (const auto& [c, x] : lie.product[a][b]) acc.add(normal_form(splice(word, i, 2, c), pick), x);
    }
    res = acc.take();
  }
  if (!pick) cache_[word] = res;
  return res;
}

Envelope envelope(const DgAlgebra& L, int W) {
  if (L.species != Species::Lie) throw InputError("envelope needs a Lie algebra");
  if (W < 1) throw InputError("envelope needs a weight bound >= 1");
  auto ax = check_axioms(L);
  if (!ax.pass) throw InputError("Lie algebra fails " + ax.identity + " at " + ax.witness);
  Envelope e;
  e.lie = L;
  e.W = W;
  e.basis = pbw_basis(*L.space, W, ".");
  const SpacePtr& U = e.basis.space;
  DgAlgebra& A = e.algebra;
  A = empty_algebra("U(" + L.name + ")", Species::Ass, U);
  A.unit = e.basis.index.at({});
  A.product_weight_bound = W;
  const GradedSpace& Lv = *L.space;
  int n = U->dim();
  for (int i = 0; i < n; ++i) {
    const Tuple& w = e.basis.words[i];
    SVecBuilder dw;
    int before = 0;
    for (size_t k = 0; k < w.size(); ++k) {
      int s = before & 1 ? -1 : 1;
      for (const auto& [c, x] : L.d.cols[w[k]]) dw.add(e.normal_form(splice(w, k, 1, c)), x * s);
      before += Lv.degree(w[k]);
    }
    A.d.cols[i] = dw.take();
    for (int j = 0; j < n; ++j) {
      const Tuple& v = e.basis.words[j];
      if (w.size() + v.size() > static_cast<size_t>(W)) continue;
      Tuple cat = w;
      cat.insert(cat.end(), v.begin(), v.end());
      A.product[i][j] = e.normal_form(cat);
    }
  }
  return e;
}

AdjointModule adjoint_module(const DgAlgebra& L, int W) {
  AdjointModule ad;
  ad.W = W;
  ad.env = envelope(L, W + 1);
  const GradedSpace& U = *ad.env.algebra.space;
  std::vector<BasisElement> sub;
  for (const auto& b : U.basis())
    if (b.weight <= W) sub.push_back(b);
  ad.space = make_space(std::move(sub));
  const GradedSpace& M = *ad.space;
  ad.module.L = L.space;
  ad.module.M = ad.space;
  ad.module.table.assign(L.dim(), std::vector<SVec>(M.dim()));
  for (int g = 0; g < L.dim(); ++g) {
    int gi = ad.env.basis.index.at({g});
    for (int m = 0; m < M.dim(); ++m) {
      int mi = U.index(M[m].name);
      int s = (L.space->degree(g) & 1) && (M.degree(m) & 1) ? -1 : 1;
      SVec v = add(ad.env.algebra.mul_basis(gi, mi), -s, ad.env.algebra.mul_basis(mi, gi));
      ad.module.table[g][m] = rename(v, U, M);
    }
  }
  return ad;
}

PoissonModule poisson_module(const DgAlgebra& L, int W) {
  if (L.species != Species::Lie) throw InputError("Poisson module needs a Lie algebra");
  PoissonModule pm;
  pm.basis = pbw_basis(*L.space, W, "^");
  const GradedSpace& Lv = *L.space;
  const GradedSpace& S = *pm.basis.space;
  pm.module.L = L.space;
  pm.module.M = pm.basis.space;
  pm.module.table.assign(L.dim(), std::vector<SVec>(S.dim()));
  for (int g = 0; g < L.dim(); ++g)
    for (int m = 0; m < S.dim(); ++m) {
      const Tuple& w = pm.basis.words[m];
      SVecBuilder acc;
      int before = 0;
      for (size_t k = 0; k < w.size(); ++k) {
        int s = (Lv.degree(g) & 1) && (before & 1) ? -1 : 1;
        for (const auto& [c, x] : L.product[g][w[k]]) {
          auto [sw, sg] = sort_word(Lv, splice(w, k, 1, c));
          if (sg != 0) acc.add(pm.basis.index.at(sw), x * s * sg);
        }
        before += Lv.degree(w[k]);
      }
      pm.module.table[g][m] = acc.take();
    }
  return pm;
}

EtaReport pbw_eta(const AdjointModule& ad, const PoissonModule& pm) {
  const GradedSpace& Lv = *ad.env.lie.space;
  const GradedSpace& S = *pm.basis.space;
  const GradedSpace& U = *ad.env.algebra.space;
  const GradedSpace& M = *ad.space;
  EtaReport r;
  r.eta = LinearMap::zero(pm.basis.space, ad.space, 0);
  for (int a = 0; a < S.dim(); ++a) {
    const Tuple& w = pm.basis.words[a];
    if (static_cast<int>(w.size()) > ad.W) throw InputError("Poisson truncation exceeds the module truncation");
    int k = static_cast<int>(w.size());
    std::vector<int> degs;
    for (int i : w) degs.push_back(Lv.degree(i));
    Scalar fact(1);
    for (int i = 2; i <= k; ++i) fact *= i;
    SVecBuilder acc;
    for (const auto& sigma : all_perms(k)) {
      Tuple pw(k);
      for (int i = 0; i < k; ++i) pw[sigma[i]] = w[i];
      acc.add(ad.env.normal_form(pw), Scalar(koszul_sign(sigma, degs)) / fact);
    }
    r.eta.cols[a] = rename(acc.take(), U, M);
  }
  r.bijective = S.dim() == M.dim();
  if (r.bijective) {
    try {
      inverse(r.eta);
    } catch (const InputError&) {
      r.bijective = false;
    }
  }
  if (!r.bijective) throw InvariantViolation("symmetrization is not bijective on the truncation");
  r.module_map = true;
  for (int g = 0; g < Lv.dim() && r.module_map; ++g)
    for (int a = 0; a < S.dim(); ++a) {
      SVec lhs = r.eta.apply(pm.module.act(g, a));
      SVec rhs = act_vec(ad.module, g, r.eta.cols[a]);
      if (!(lhs == rhs)) {
        r.module_map = false;
        r.witness = Lv[g].name + " . " + S[a].name;
        break;
      }
    }
  if (!r.module_map) throw InvariantViolation("symmetrization is not a module map at " + r.witness);
  return r;
}

RetractionReport summand_retraction(const AdjointModule& ad, const EtaReport& eta) {
  const DgAlgebra& L = ad.env.lie;
  const GradedSpace& Lv = *L.space;
  const GradedSpace& M = *ad.space;
  const GradedSpace& S = *eta.eta.src;
  LinearMap inv = inverse(eta.eta);
  LinearMap pr = LinearMap::zero(eta.eta.src, L.space, 0);
  for (int a = 0; a < S.dim(); ++a)
    if (S.weight(a) == 1) pr.cols[a] = unit_svec(Lv.index(S[a].name));
  RetractionReport r;
  r.pi = pr.after(inv);
  r.identity_on_L = true;
  for (int x = 0; x < Lv.dim(); ++x)
    if (!(r.pi.cols[M.index(Lv[x].name)] == unit_svec(x))) {
      r.identity_on_L = false;
      r.witness = "pi(" + Lv[x].name + ")";
    }
  r.kills_unit = r.pi.cols[M.index("1")].empty();
  r.equivariant = true;
  for (int g = 0; g < Lv.dim() && r.equivariant; ++g)
    for (int m = 0; m < M.dim(); ++m) {
      SVec lhs = r.pi.apply(ad.module.act(g, m));
      SVec rhs = L.multiply(unit_svec(g), r.pi.cols[m]);
      if (!(lhs == rhs)) {
        r.equivariant = false;
        r.witness = Lv[g].name + " . " + M[m].name;
        break;
      }
    }
  if (!r.identity_on_L || !r.kills_unit || !r.equivariant)
    throw InvariantViolation("retraction fails at " + (r.witness.empty() ? std::string("pi(1)") : r.witness));
  return r;
}

Multilinear alt(const AdjointModule& ad, const Multilinear& f) {
  Multilinear onL = restrict_inputs(f, ad.env.lie.space, -1);
  return retarget(symmetrize(onL, SignMode::koszul), ad.space);
}

AltCheck alt_chain_check(const AdjointModule& ad, const Multilinear& f) {
  AltCheck r;
  const DgAlgebra& L = ad.env.lie;
  if (!L.d.is_zero()) throw InputError("Alt chain check needs a Lie algebra with zero differential");
  SpacePtr E = ad.env.algebra.space;
  Multilinear lhs, rhs;
  try {
    Multilinear fu = retarget(restrict_inputs(f, ad.space, -1), E);
    Multilinear mu = bar_product(ad.env.algebra);
    Multilinear df = gerstenhaber(mu, fu, L.space, -1);
    rhs = retarget(symmetrize(df, SignMode::koszul), ad.space);
    lhs = ce_module_differential(ce_context(L, ad.module), alt(ad, f));
  } catch (const TruncationOverflow& e) {
    r.partial = true;
    r.detail = e.what();
    return r;
  }
  r.pass = lhs == rhs;
  if (!r.pass) {
    Multilinear diff = lhs.plus(rhs, -1);
    const auto& [t, v] = *diff.values.begin();
    r.detail = format_tuple(*diff.in, t) + " -> " + format_svec(*diff.out, v);
  }
  return r;
}

QuillenReport quillen_check(const DgAlgebra& L, int W) {
  QuillenReport r;
  auto HL = cohomology_algebra(L);
  Envelope UH = envelope(HL.algebra, W);
  Envelope UL = envelope(L, W);
  const GradedSpace& Uh = *UH.algebra.space;
  const GradedSpace& Ul = *UL.algebra.space;
  for (int w = 0; w <= W; ++w) {
    std::map<int, int> left;
    for (int i = 0; i < Uh.dim(); ++i)
      if (Uh.weight(i) <= w) ++left[Uh.degree(i)];
    std::vector<BasisElement> sub;
    for (const auto& b : Ul.basis())
      if (b.weight <= w) sub.push_back(b);
    SpacePtr S = make_space(std::move(sub));
    LinearMap d = LinearMap::zero(S, S, 1);
    for (int i = 0; i < S->dim(); ++i) d.cols[i] = rename(UL.algebra.d.cols[Ul.index((*S)[i].name)], Ul, *S);
    auto right = cohomology_with_contraction({S, d}).H->dims_by_degree();
    std::set<int> degs;
    for (const auto& [k, v] : left) degs.insert(k);
    for (const auto& [k, v] : right) degs.insert(k);
    for (int k : degs) {
      int a = left.count(k) ? left[k] : 0, b = right.count(k) ? right[k] : 0;
      if (a == 0 && b == 0) continue;
      r.dims[{k, w}] = {a, b};
    }
  }
  r.dims_agree = std::all_of(r.dims.begin(), r.dims.end(), [](const auto& e) { return e.second.first == e.second.second; });
  if (!r.dims_agree) {
    r.witness = "dimension tables differ";
    return r;
  }
  // q(y_1 ... y_k) = f_U(g y_1 ... g y_k)
  auto HU = cohomology_with_contraction(UL.algebra.complex());
  const LinearMap& gL = HL.contraction.g;
  const LinearMap& fU = HU.contraction.f;
  std::vector<SVec> rep(Uh.dim());  // cocycle representative in UL
  for (int a = 0; a < Uh.dim(); ++a) {
    SVec v = unit_svec(*UL.algebra.unit);
    for (int y : UH.basis.words[a]) {
      SVec gy = rename(gL.cols[y], *L.space, Ul);
      v = UL.algebra.multiply(v, gy);
    }
    rep[a] = v;
  }
  LinearMap q = LinearMap::zero(UH.algebra.space, HU.H, 0);
  for (int a = 0; a < Uh.dim(); ++a) q.cols[a] = fU.apply(rep[a]);
  r.algebra_iso = Uh.dim() == HU.H->dim();
  if (r.algebra_iso) {
    try {
      inverse(q);
    } catch (const InputError&) {
      r.algebra_iso = false;
      r.witness = "natural map is singular";
    }
  } else {
    r.witness = "natural map is not square";
  }
  for (int a = 0; a < Uh.dim() && r.algebra_iso; ++a)
    for (int b = 0; b < Uh.dim(); ++b) {
      if (Uh.weight(a) + Uh.weight(b) > W) continue;
      SVec lhs = q.apply(UH.algebra.mul_basis(a, b));
      SVec rhs = fU.apply(UL.algebra.multiply(rep[a], rep[b]));
      if (!(lhs == rhs)) {
        r.algebra_iso = false;
        r.witness = "q(" + Uh[a].name + " * " + Uh[b].name + ")";
        break;
      }
    }
  return r;
}

}  // namespace hoalg
