#include "hoalg/opcohomology.hpp"

#include <algorithm>
#include <set>

#include "hoalg/errors.hpp"

namespace hoalg {

std::string kind_name(ComplexKind k) {
  switch (k) {
    case ComplexKind::hochschild: return "Hochschild";
    case ComplexKind::harrison: return "Harrison";
    case ComplexKind::chevalley_eilenberg: return "Chevalley-Eilenberg";
  }
  return "?";
}

SVec LeftModule::act(int x, int m) const {
  if (weight_bound >= 0 && L->weight(x) + M->weight(m) > weight_bound)
    throw TruncationOverflow("action " + (*L)[x].name + " . " + (*M)[m].name + " exceeds the truncation");
  return table[x][m];
}

namespace {

SVec act_vec(const LeftModule& M, const SVec& x, const SVec& m) {
  SVecBuilder b;
  for (const auto& [i, a] : x)
    for (const auto& [j, c] : m) b.add(M.act(i, j), a * c);
  return b.take();
}

}  // namespace

std::optional<std::string> module_axiom_defect(const LeftModule& M, const DgAlgebra& lie) {
  const GradedSpace& L = *M.L;
  for (int g = 0; g < L.dim(); ++g)
    for (int h = 0; h < L.dim(); ++h)
      for (int m = 0; m < M.M->dim(); ++m) {
        try {
          SVec lhs = act_vec(M, lie.product[g][h], unit_svec(m));
          int s = (L.degree(g) & 1) && (L.degree(h) & 1) ? -1 : 1;
          SVec rhs = add(act_vec(M, unit_svec(g), M.act(h, m)), -s, act_vec(M, unit_svec(h), M.act(g, m)));
          if (!(lhs == rhs)) return L[g].name + ", " + L[h].name + ", " + (*M.M)[m].name;
        } catch (const TruncationOverflow&) {
          continue;
        }
      }
  return std::nullopt;
}

LeftModule adjoint_module_of(const DgAlgebra& lie) {
  if (lie.species != Species::Lie) throw InputError("adjoint module needs a Lie algebra");
  return LeftModule{lie.space, lie.space, lie.product, -1};
}

OperadicContext make_context(ComplexKind kind, const Multilinear& mu, SpacePtr input, SpacePtr output,
                             int max_weight) {
  OperadicContext c;
  c.kind = kind;
  c.mu = mu;
  c.input = std::move(input);
  c.output = std::move(output);
  c.max_weight = max_weight;
  return c;
}

namespace {

// The (arity, degree) bigrading of the cochains only exists when d = 0; every
// algebra fed to these complexes is a cohomology algebra or an envelope of one.
void require_minimal(const DgAlgebra& a) {
  if (!a.d.is_zero()) throw InputError("operadic cochain complexes need an algebra with zero differential");
}

}  // namespace

OperadicContext hochschild_context(const DgAlgebra& a, bool normalized) {
  if (a.species == Species::Lie) throw InputError("Hochschild complex needs an associative algebra");
  require_minimal(a);
  SpacePtr in = normalized && a.unit ? reduced_space(a.space) : a.space;
  return make_context(ComplexKind::hochschild, bar_product(a), in, a.space, a.product_weight_bound);
}

OperadicContext harrison_context(const DgAlgebra& a, bool normalized) {
  if (a.species != Species::Com) throw InputError("Harrison complex needs a commutative algebra");
  OperadicContext c = hochschild_context(a, normalized);
  c.kind = ComplexKind::harrison;
  return c;
}

OperadicContext ce_context(const DgAlgebra& lie) {
  if (lie.species != Species::Lie) throw InputError("Chevalley-Eilenberg complex needs a Lie algebra");
  require_minimal(lie);
  return make_context(ComplexKind::chevalley_eilenberg, bar_product(lie), lie.space, lie.space,
                      lie.product_weight_bound);
}

OperadicContext ce_context(const DgAlgebra& lie, const LeftModule& M) {
  OperadicContext c = ce_context(lie);
  c.output = M.M;
  c.module = M;
  return c;
}

Multilinear differential(const OperadicContext& ctx, const Multilinear& f) {
  switch (ctx.kind) {
    case ComplexKind::hochschild:
    case ComplexKind::harrison:
      return retarget(gerstenhaber(ctx.mu, f, ctx.input, ctx.max_weight), ctx.output);
    case ComplexKind::chevalley_eilenberg:
      if (ctx.module) return ce_module_differential(ctx, f);
      return retarget(nr_bracket(ctx.mu, f, ctx.input, ctx.max_weight), ctx.output);
  }
  return f;
}

Multilinear ce_module_differential(const OperadicContext& ctx, const Multilinear& f) {
  if (ctx.kind != ComplexKind::chevalley_eilenberg || !ctx.module)
    throw InputError("module differential needs a CE context with coefficients");
  const LeftModule& M = *ctx.module;
  const GradedSpace& in = *ctx.input;
  int n = f.arity, N = n + 1, q = f.degree;
  Multilinear res = Multilinear::zero(ctx.input, ctx.output, N, q + 1, ctx.max_weight);
  auto to_L = name_map(in, *M.L);
  auto fin = name_map(in, *f.in);
  auto fout = name_map(*f.out, *M.M);
  auto mu_in = name_map(in, *ctx.mu.in);
  auto mu_out = name_map(*ctx.mu.out, *f.in);
  auto res_out = name_map(*M.M, *ctx.output);
  for_each_tuple(in, N, ctx.max_weight, [&](const Tuple& x) {
    std::vector<int> sd(N);
    for (int i = 0; i < N; ++i) sd[i] = in.sdeg(x[i]);
    SVecBuilder acc;
    // sum_j eps (-1)^{sx_j (q + sum_{k != j} sx_k)} B2(x_j, f(x_{-j}))
    for (int j = 0; j < N; ++j) {
      Tuple rest;
      for (int i = 0; i < N; ++i)
        if (i != j) rest.push_back(fin[x[i]]);
      if (std::any_of(rest.begin(), rest.end(), [](int v) { return v < 0; })) continue;
      const SVec& v = f.at(rest);
      if (v.empty()) continue;
      Perm sigma(N);
      for (int i = 0; i < N; ++i) sigma[i] = i < j ? i : (i == j ? N - 1 : i - 1);
      int sign = koszul_sign(sigma, sd);
      int srest = q;
      for (int i = 0; i < N; ++i)
        if (i != j) srest += sd[i];
      if ((sd[j] & 1) && (srest & 1)) sign = -sign;
      int xl = to_L[x[j]];
      if (xl < 0) continue;
      if (M.L->degree(xl) & 1) sign = -sign;  // B2(sx, sm) = (-1)^{|x|} s(x.m)
      SVec m = map_vec(v, fout, *f.out);
      acc.add(act_vec(M, unit_svec(xl), m), sign);
    }
    // -(-1)^q sum_{i<j} eps f(B2(x_i, x_j), rest)
    int outer = (q & 1) ? 1 : -1;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        int a = mu_in[x[i]], b = mu_in[x[j]];
        if (a < 0 || b < 0) continue;
        const SVec& br = ctx.mu.at({a, b});
        if (br.empty()) continue;
        Tuple rest;
        Perm sigma(N);
        int pos = 2;
        bool ok = true;
        for (int k = 0; k < N; ++k) {
          if (k == i) sigma[k] = 0;
          else if (k == j) sigma[k] = 1;
          else {
            sigma[k] = pos++;
            if (fin[x[k]] < 0) ok = false;
            else rest.push_back(fin[x[k]]);
          }
        }
        if (!ok) continue;
        int sign = outer * koszul_sign(sigma, sd);
        for (const auto& [c, coef] : br) {
          int c2 = mu_out[c];
          if (c2 == kDropped) continue;
          if (c2 == kMissing) throw TruncationOverflow("bracket leaves the truncation");
          Tuple t{c2};
          t.insert(t.end(), rest.begin(), rest.end());
          acc.add(map_vec(f.at(t), fout, *f.out), coef * sign);
        }
      }
    SVec v = map_vec(acc.take(), res_out, *M.M);
    if (!v.empty()) res.values.emplace(x, std::move(v));
  });
  return res;
}

// ---------------------------------------------------------------------------

namespace {

bool canonical_symmetric(const GradedSpace& V, const Tuple& t) {
  for (size_t i = 1; i < t.size(); ++i) {
    if (t[i] < t[i - 1]) return false;
    if (t[i] == t[i - 1] && (V.sdeg(t[i]) & 1)) return false;
  }
  return true;
}

}  // namespace

Multilinear CochainBasis::zero() const { return Multilinear::zero(input, output, arity, degree, max_weight); }

Multilinear CochainBasis::element(int k) const { return from_coords(unit_svec(k)); }

Multilinear CochainBasis::from_coords(const SVec& v) const {
  Multilinear f = zero();
  if (!symmetric) {
    for (const auto& [k, c] : v) f.accumulate(coords[k].first, unit_svec(coords[k].second, c));
    return f;
  }
  auto perms = all_perms(arity);
  for (const auto& [k, c] : v) {
    const auto& [t, o] = coords[k];
    std::set<Tuple> seen;
    for (const auto& s : perms) {
      SignedWord y = act_on_word(s, *input, t, SignMode::koszul);
      if (!seen.insert(y.word).second) continue;
      f.accumulate(y.word, unit_svec(o, c * y.sign));
    }
  }
  return f;
}

SVec CochainBasis::coordinates(const Multilinear& f) const {
  SVecBuilder b;
  for (const auto& [t, v] : f.values) {
    if (symmetric && !canonical_symmetric(*input, t)) continue;
    for (const auto& [o, c] : v) {
      auto it = index.find({t, o});
      if (it == index.end())
        throw InvariantViolation("cochain value " + format_tuple(*input, t) + " -> " + (*output)[o].name +
                                 " outside the slice");
      b.add(it->second, c);
    }
  }
  return b.take();
}

CochainBasis cochain_basis(const OperadicContext& ctx, int arity, int degree) {
  CochainBasis C;
  C.input = ctx.input;
  C.output = ctx.output;
  C.arity = arity;
  C.degree = degree;
  C.max_weight = ctx.max_weight;
  C.symmetric = ctx.kind == ComplexKind::chevalley_eilenberg;
  C.filtered = ctx.filtered;
  std::map<int, std::vector<int>> outs;
  for (int o = 0; o < ctx.output->dim(); ++o) outs[ctx.output->sdeg(o)].push_back(o);
  for_each_tuple(*ctx.input, arity, ctx.max_weight, [&](const Tuple& t) {
    if (C.symmetric && !canonical_symmetric(*ctx.input, t)) return;
    int s = degree, w = 0;
    for (int i : t) {
      s += ctx.input->sdeg(i);
      w += ctx.input->weight(i);
    }
    auto it = outs.find(s);
    if (it == outs.end()) return;
    for (int o : it->second) {
      if (C.filtered && ctx.output->weight(o) > w) continue;
      C.index[{t, o}] = C.dim();
      C.coords.emplace_back(t, o);
    }
  });
  return C;
}

namespace {

// coordinates grouped by (sorted input multiset, output): the symmetric group
// action never leaves such a block
std::map<std::pair<Tuple, int>, std::vector<int>> orbit_blocks(const CochainBasis& C) {
  std::map<std::pair<Tuple, int>, std::vector<int>> blocks;
  for (int k = 0; k < C.dim(); ++k) {
    Tuple s = C.coords[k].first;
    std::sort(s.begin(), s.end());
    blocks[{s, C.coords[k].second}].push_back(k);
  }
  return blocks;
}

struct Block {
  std::vector<int> members;
  std::map<Tuple, int> local;  // tuple -> local index (output fixed)
};

Block make_block(const CochainBasis& C, const std::vector<int>& members) {
  Block b;
  b.members = members;
  for (size_t i = 0; i < members.size(); ++i) b.local[C.coords[members[i]].first] = static_cast<int>(i);
  return b;
}

SVec local_coords(const Block& b, const Multilinear& f, int offset = 0) {
  SVecBuilder out;
  for (const auto& [t, v] : f.values)
    for (const auto& [o, c] : v) out.add(offset + b.local.at(t), c);
  return out.take();
}

Multilinear single(const CochainBasis& C, int k) {
  Multilinear f = C.zero();
  f.values[C.coords[k].first] = unit_svec(C.coords[k].second);
  return f;
}

std::vector<SVec> block_harrison(const CochainBasis& C, const Block& b) {
  int n = C.arity;
  int sz = static_cast<int>(b.members.size());
  std::vector<SVec> cols;
  for (int k : b.members) {
    Multilinear f = single(C, k);
    SVec col;
    for (int i = 1; i < n; ++i) col = add(col, 1, local_coords(b, act(f, shuffle_element(i, n - i)), (i - 1) * sz));
    cols.push_back(std::move(col));
  }
  return kernel_basis(cols);
}

SVec to_global(const Block& b, const SVec& v) {
  SVec out;
  for (const auto& [i, c] : v) out.emplace_back(b.members[i], c);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

}  // namespace

std::vector<SVec> harrison_basis(const CochainBasis& C) {
  std::vector<SVec> out;
  if (C.symmetric) throw InputError("Harrison cochains live inside the Hochschild complex");
  if (C.arity < 2) {
    for (int k = 0; k < C.dim(); ++k) out.push_back(unit_svec(k));
    return out;
  }
  for (const auto& [key, members] : orbit_blocks(C)) {
    Block b = make_block(C, members);
    for (const auto& v : block_harrison(C, b)) out.push_back(to_global(b, v));
  }
  std::sort(out.begin(), out.end(), [](const SVec& a, const SVec& b) { return a.front().first < b.front().first; });
  return out;
}

bool is_shuffle_vanishing(const Multilinear& f) { return !shuffle_vanishing_defect(f); }

std::optional<std::string> shuffle_vanishing_defect(const Multilinear& f) {
  for (int i = 1; i < f.arity; ++i) {
    Multilinear g = act(f, shuffle_element(i, f.arity - i));
    if (!g.is_zero()) {
      const auto& [t, v] = *g.values.begin();
      return "mu_{" + std::to_string(i) + "," + std::to_string(f.arity - i) + "} on " + format_tuple(*f.in, t) +
             " gives " + format_svec(*f.out, v);
    }
  }
  return std::nullopt;
}

std::vector<SVec> context_space(const OperadicContext& ctx, const CochainBasis& C) {
  if (ctx.kind == ComplexKind::harrison) return harrison_basis(C);
  std::vector<SVec> out;
  for (int k = 0; k < C.dim(); ++k) out.push_back(unit_svec(k));
  return out;
}

BarrSplitting barr_splitting(const OperadicContext& ctx, int n) {
  if (n < 2) throw InputError("Barr splitting needs n >= 2");
  const GroupAlgebraElement& e = barr_idempotent(n).e;
  BarrSplitting r;
  r.n = n;
  r.direct = true;
  r.kernels_agree = true;
  OperadicContext hc = ctx;
  hc.kind = ComplexKind::hochschild;
  // every bar degree that can occur
  int lo = 0, hi = 0;
  if (ctx.input->dim() > 0 && ctx.output->dim() > 0) {
    int smin = 0, smax = 0;
    for (int i = 0; i < ctx.input->dim(); ++i) {
      smin = i ? std::min(smin, ctx.input->sdeg(i)) : ctx.input->sdeg(i);
      smax = i ? std::max(smax, ctx.input->sdeg(i)) : ctx.input->sdeg(i);
    }
    int omin = ctx.output->min_degree() - 1, omax = ctx.output->max_degree() - 1;
    lo = omin - n * smax;
    hi = omax - n * smin;
  }
  for (int q = lo; q <= hi; ++q) {
    CochainBasis C = cochain_basis(hc, n, q);
    r.dim_hochschild += C.dim();
    for (const auto& [key, members] : orbit_blocks(C)) {
      Block b = make_block(C, members);
      auto harr = block_harrison(C, b);
      std::vector<SVec> ecols;
      for (int k : members) ecols.push_back(local_coords(b, act(single(C, k), e)));
      int w = rank(ecols);
      auto ker_e = kernel_basis(ecols);
      r.dim_harrison += static_cast<int>(harr.size());
      r.dim_w += w;
      std::vector<SVec> both = harr;
      for (const auto& c : ecols) both.push_back(c);
      if (rank(both) != static_cast<int>(harr.size()) + w ||
          static_cast<int>(harr.size()) + w != static_cast<int>(members.size()))
        r.direct = false;
      if (ker_e.size() != harr.size()) r.kernels_agree = false;
      for (const auto& v : harr) {
        // e acting on a Harrison cochain must give zero
        SVecBuilder img;
        for (const auto& [i, c] : v) img.add(ecols[i], c);
        if (!img.empty()) r.kernels_agree = false;
      }
    }
  }
  return r;
}

DifferentialMatrix differential_matrix(const OperadicContext& ctx, int n, int q) {
  DifferentialMatrix dm{cochain_basis(ctx, n, q), cochain_basis(ctx, n + 1, q + 1), {}, {}};
  dm.src_space = context_space(ctx, dm.src);
  for (const auto& v : dm.src_space) dm.cols.push_back(dm.tgt.coordinates(differential(ctx, dm.src.from_coords(v))));
  return dm;
}

std::optional<Multilinear> is_coboundary(const OperadicContext& ctx, const Multilinear& f) {
  Multilinear df = differential(ctx, f);
  if (!df.is_zero()) throw InputError("is_coboundary: input is not a cocycle");
  if (ctx.kind == ComplexKind::harrison && !is_shuffle_vanishing(f))
    throw InputError("is_coboundary: input is not a Harrison cochain");
  int n = f.arity, q = f.degree;
  if (f.is_zero()) {
    return n == 0 ? cochain_basis(ctx, 0, q - 1).zero()
                  : cochain_basis(ctx, n - 1, q - 1).zero();
  }
  if (n == 0) return std::nullopt;
  DifferentialMatrix dm = differential_matrix(ctx, n - 1, q - 1);
  SVec b = dm.tgt.coordinates(f);
  auto x = solve_columns(dm.cols, b);
  if (!x) return std::nullopt;
  SVecBuilder w;
  for (const auto& [k, c] : *x) w.add(dm.src_space[k], c);
  Multilinear theta = dm.src.from_coords(w.take());
  if (!(differential(ctx, theta) == retarget(f, ctx.output)))
    throw InvariantViolation("coboundary witness does not reproduce the cochain");
  return theta;
}

Multilinear hochschild_to_harrison_witness(const OperadicContext& ctx, const Multilinear& x, const Multilinear& y) {
  OperadicContext hc = ctx;
  hc.kind = ComplexKind::hochschild;
  if (!is_shuffle_vanishing(x)) throw InputError("x is not a Harrison cochain");
  if (!(differential(hc, y) == x)) throw InputError("y is not a Hochschild witness for x");
  Multilinear y1 = y;
  if (y.arity >= 2) y1 = y.plus(act(y, barr_idempotent(y.arity).e), -1);
  if (!is_shuffle_vanishing(y1)) throw InvariantViolation("y - y.e is not a Harrison cochain");
  if (!(differential(hc, y1) == x)) throw InvariantViolation("Harrison witness fails ∂y1 = x");
  return y1;
}

std::map<std::pair<int, int>, int> cohomology_slice_dims(const OperadicContext& ctx, int n0, int n1, int p0, int p1) {
  std::map<std::pair<int, int>, int> out;
  for (int p = p0; p <= p1; ++p) {
    std::map<int, std::pair<int, int>> info;  // n -> (dim space, rank of ∂ out of it)
    for (int n = std::max(0, n0 - 1); n <= n1; ++n) {
      int q = bar_degree(n, p);
      DifferentialMatrix dm = differential_matrix(ctx, n, q);
      info[n] = {static_cast<int>(dm.src_space.size()), rank(dm.cols)};
    }
    for (int n = n0; n <= n1; ++n) {
      int z = info[n].first - info[n].second;
      int b = n >= 1 && info.count(n - 1) ? info[n - 1].second : 0;
      out[{n, p}] = z - b;
    }
  }
  return out;
}

}  // namespace hoalg
