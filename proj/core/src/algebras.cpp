#include "hoalg/algebras.hpp"

#include "hoalg/errors.hpp"

namespace hoalg {

std::string species_name(Species s) {
  switch (s) {
    case Species::Ass: return "Ass";
    case Species::Com: return "Com";
    case Species::Lie: return "Lie";
  }
  return "?";
}

Species parse_species(const std::string& s) {
  if (s == "Ass") return Species::Ass;
  if (s == "Com") return Species::Com;
  if (s == "Lie") return Species::Lie;
  throw InputError("unknown species '" + s + "'");
}

Species koszul_dual(Species s) {
  switch (s) {
    case Species::Ass: return Species::Ass;
    case Species::Com: return Species::Lie;
    case Species::Lie: return Species::Com;
  }
  return s;
}

bool DgAlgebra::product_defined(int i, int j) const {
  return product_weight_bound < 0 || space->weight(i) + space->weight(j) <= product_weight_bound;
}

SVec DgAlgebra::mul_basis(int i, int j) const {
  if (!product_defined(i, j))
    throw TruncationOverflow("product " + (*space)[i].name + " * " + (*space)[j].name + " exceeds the truncation");
  return product[i][j];
}

SVec DgAlgebra::multiply(const SVec& a, const SVec& b) const {
  SVecBuilder acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) acc.add(mul_basis(i, j), x * y);
  return acc.take();
}

DgAlgebra empty_algebra(std::string name, Species species, SpacePtr space) {
  DgAlgebra a;
  a.name = std::move(name);
  a.species = species;
  a.d = LinearMap::zero(space, space, 1);
  a.product.assign(space->dim(), std::vector<SVec>(space->dim()));
  a.space = std::move(space);
  return a;
}

void complete_products(DgAlgebra& a) {
  const GradedSpace& V = *a.space;
  int n = V.dim();
  if (a.unit) {
    if (a.species == Species::Lie) throw InputError("Lie algebras carry no unit");
    int u = *a.unit;
    for (int j = 0; j < n; ++j) {
      for (auto [x, y] : {std::pair{u, j}, std::pair{j, u}}) {
        if (a.product[x][y].empty()) a.product[x][y] = unit_svec(j);
        else if (!(a.product[x][y] == unit_svec(j)))
          throw InputError("unit product with " + V[j].name + " contradicts the unit");
      }
    }
  }
  if (a.species == Species::Ass) return;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int s = (V.degree(i) & 1) && (V.degree(j) & 1) ? -1 : 1;
      if (a.species == Species::Lie) s = -s;
      SVec& ij = a.product[i][j];
      SVec& ji = a.product[j][i];
      if (ij.empty() && !ji.empty()) ij = scaled(ji, s);
      else if (!ij.empty() && ji.empty()) ji = scaled(ij, s);
      else if (!(ji == scaled(ij, s)))
        throw InputError("products " + V[i].name + "," + V[j].name + " contradict graded " +
                         (a.species == Species::Lie ? "antisymmetry" : "commutativity"));
    }
}

namespace {

std::string names(const GradedSpace& V, std::initializer_list<int> idx) {
  std::string s;
  for (int i : idx) s += (s.empty() ? "" : ", ") + V[i].name;
  return "(" + s + ")";
}

}  // namespace

AxiomReport check_axioms(const DgAlgebra& a) {
  AxiomReport r;
  const GradedSpace& V = *a.space;
  int n = V.dim();
  auto fail = [&](std::string id, std::string w) {
    r.pass = false;
    r.identity = std::move(id);
    r.witness = std::move(w);
    return r;
  };
  try {
    a.d.validate();
  } catch (const InputError& e) {
    return fail("degree of d", e.what());
  }
  if (a.d.degree != 1) return fail("degree of d", "differential must have degree +1");
  for (int i = 0; i < n; ++i)
    if (!a.d.apply(a.d.cols[i]).empty()) return fail("d^2 = 0", names(V, {i}));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : a.product[i][j])
        if (V.degree(k) != V.degree(i) + V.degree(j)) return fail("product degree", names(V, {i, j}));
  auto defined = [&](std::initializer_list<int> w, int extra) {
    if (a.product_weight_bound < 0) return true;
    int s = extra;
    for (int i : w) s += V.weight(i);
    return s <= a.product_weight_bound;
  };
  auto e = [](int i) { return unit_svec(i); };
  bool lie = a.species == Species::Lie;
  if (a.unit) {
    int u = *a.unit;
    if (lie) return fail("unit", "Lie algebras carry no unit");
    if (V.degree(u) != 0) return fail("unit", "unit must have degree 0");
    if (!a.d.cols[u].empty()) return fail("unit", "d(unit) != 0");
    for (int i = 0; i < n; ++i)
      if (!(a.product[u][i] == e(i)) || !(a.product[i][u] == e(i))) return fail("unit", names(V, {u, i}));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!defined({i, j}, 0)) continue;
      // Leibniz: d(ab) = (da)b + (-1)^{|a|} a(db)
      SVec lhs = a.d.apply(a.product[i][j]);
      int s = V.degree(i) & 1 ? -1 : 1;
      SVec rhs = add(a.multiply(a.d.cols[i], e(j)), s, a.multiply(e(i), a.d.cols[j]));
      if (!(lhs == rhs)) return fail("Leibniz", names(V, {i, j}));
      if (a.species != Species::Ass) {
        int t = (V.degree(i) & 1) && (V.degree(j) & 1) ? -1 : 1;
        if (lie) t = -t;
        if (!(a.product[j][i] == scaled(a.product[i][j], t)))
          return fail(lie ? "antisymmetry" : "commutativity", names(V, {i, j}));
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!defined({i, j, k}, 0)) continue;
        if (!lie) {
          SVec l = a.multiply(a.product[i][j], e(k));
          SVec rr = a.multiply(e(i), a.product[j][k]);
          if (!(l == rr)) return fail("associativity", names(V, {i, j, k}));
        } else {
          // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
          SVec l = a.multiply(e(i), a.product[j][k]);
          int s = (V.degree(i) & 1) && (V.degree(j) & 1) ? -1 : 1;
          SVec rr = add(a.multiply(a.product[i][j], e(k)), s, a.multiply(e(j), a.product[i][k]));
          if (!(l == rr)) return fail("Jacobi", names(V, {i, j, k}));
        }
      }
  return r;
}

SpacePtr reduced_space(const SpacePtr& V) {
  std::vector<BasisElement> b;
  for (const auto& e : V->basis())
    if (!e.unit) b.push_back(e);
  if (static_cast<int>(b.size()) == V->dim()) return V;
  return make_space(std::move(b));
}

Multilinear bar_differential(const DgAlgebra& a) {
  return from_linear(a.d.scaled(-1));
}

Multilinear bar_product(const DgAlgebra& a) {
  Multilinear b = Multilinear::zero(a.space, a.space, 2, 1, a.product_weight_bound);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      if (!a.product_defined(i, j) || a.product[i][j].empty()) continue;
      b.values[{i, j}] = scaled(a.product[i][j], a.space->degree(i) & 1 ? -1 : 1);
    }
  return b;
}

std::vector<std::vector<SVec>> product_from_bar(const Multilinear& b2) {
  int n = b2.in->dim();
  std::vector<std::vector<SVec>> p(n, std::vector<SVec>(n));
  auto m = name_map(*b2.out, *b2.in);
  for (const auto& [t, v] : b2.values)
    p[t[0]][t[1]] = map_vec(scaled(v, b2.in->degree(t[0]) & 1 ? -1 : 1), m, *b2.out);
  return p;
}

CohomologyAlgebra cohomology_algebra(const DgAlgebra& a, bool by_weight) {
  auto res = cohomology_with_contraction(a.complex(), by_weight);
  const Contraction& c = res.contraction;
  std::vector<BasisElement> hb = res.H->basis();
  std::optional<int> unit;
  if (a.unit)
    for (int i = 0; i < static_cast<int>(hb.size()); ++i)
      if (c.g.cols[i] == unit_svec(*a.unit)) {
        unit = i;
        hb[i].unit = true;
      }
  SpacePtr H = make_space(hb);
  DgAlgebra h = empty_algebra("H(" + a.name + ")", a.species, H);
  h.unit = unit;
  h.product_weight_bound = a.product_weight_bound;
  for (int i = 0; i < H->dim(); ++i)
    for (int j = 0; j < H->dim(); ++j) {
      if (!h.product_defined(i, j)) continue;
      h.product[i][j] = c.f.apply(a.multiply(c.g.cols[i], c.g.cols[j]));
    }
  Contraction con = c;
  con.small.space = H;
  con.small.d = LinearMap::zero(H, H, 1);
  con.f.tgt = H;
  con.g.src = H;
  return {h, con};
}

DgAlgebra permute_basis(const DgAlgebra& a, const std::vector<int>& perm) {
  int n = a.dim();
  if (static_cast<int>(perm.size()) != n || !is_perm(perm)) throw InputError("permute_basis: not a permutation");
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[perm[i]] = i;
  std::vector<BasisElement> b;
  for (int i = 0; i < n; ++i) b.push_back((*a.space)[perm[i]]);
  DgAlgebra r = empty_algebra(a.name, a.species, make_space(b));
  r.product_weight_bound = a.product_weight_bound;
  if (a.unit) r.unit = pos[*a.unit];
  auto mapv = [&](const SVec& v) {
    SVecBuilder bl;
    for (const auto& [k, c] : v) bl.add(pos[k], c);
    return bl.take();
  };
  for (int i = 0; i < n; ++i) {
    r.d.cols[pos[i]] = mapv(a.d.cols[i]);
    for (int j = 0; j < n; ++j) r.product[pos[i]][pos[j]] = mapv(a.product[i][j]);
  }
  return r;
}

}  // namespace hoalg
