#include "hoalg/graded.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hoalg/errors.hpp"

namespace hoalg {

SVec unit_svec(int i, const Scalar& c) {
  if (sgn(c) == 0) return {};
  return {{i, c}};
}

Scalar coeff(const SVec& v, int i) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& p, int k) { return p.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return 0;
}

SVec add(const SVec& a, const Scalar& c, const SVec& b) {
  if (sgn(c) == 0 || b.empty()) return a;
  SVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Scalar s = a[i].second + c * b[j].second;
      if (sgn(s) != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SVec scaled(const SVec& v, const Scalar& c) {
  if (sgn(c) == 0) return {};
  SVec out = v;
  for (auto& e : out) e.second *= c;
  return out;
}

SVec SVecBuilder::take() {
  SVec out;
  out.reserve(acc_.size());
  for (auto& [i, c] : acc_)
    if (sgn(c) != 0) out.emplace_back(i, std::move(c));
  acc_.clear();
  return out;
}

// ---------------------------------------------------------------------------

GradedSpace::GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
  for (int i = 0; i < dim(); ++i) {
    if (basis_[i].name.empty()) throw InputError("empty basis element name");
    if (!index_.emplace(basis_[i].name, i).second)
      throw InputError("duplicate basis element name '" + basis_[i].name + "'");
  }
}

std::optional<int> GradedSpace::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GradedSpace::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw InputError("unknown basis element '" + name + "'");
  return *i;
}

std::map<int, int> GradedSpace::dims_by_degree() const {
  std::map<int, int> out;
  for (const auto& b : basis_) ++out[b.degree];
  return out;
}

std::vector<int> GradedSpace::of_degree(int d) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].degree == d) out.push_back(i);
  return out;
}

int GradedSpace::min_degree() const {
  int m = 0;
  for (int i = 0; i < dim(); ++i) m = i == 0 ? degree(0) : std::min(m, degree(i));
  return m;
}

int GradedSpace::max_degree() const {
  int m = 0;
  for (int i = 0; i < dim(); ++i) m = i == 0 ? degree(0) : std::max(m, degree(i));
  return m;
}

SpacePtr make_space(std::vector<BasisElement> basis) {
  return std::make_shared<const GradedSpace>(std::move(basis));
}

std::optional<int> homogeneous_degree(const GradedSpace& V, const SVec& v) {
  std::optional<int> d;
  for (const auto& [i, c] : v) {
    if (d && *d != V.degree(i)) throw InputError("vector is not homogeneous");
    d = V.degree(i);
  }
  return d;
}

std::string format_svec(const GradedSpace& V, const SVec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Scalar a = abs(c);
    if (a != 1) os << to_string(a) << "*";
    os << V[i].name;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

LinearMap LinearMap::zero(SpacePtr src, SpacePtr tgt, int degree) {
  LinearMap m{src, tgt, degree, {}};
  m.cols.resize(src->dim());
  return m;
}

LinearMap LinearMap::identity(SpacePtr V) {
  LinearMap m = zero(V, V, 0);
  for (int j = 0; j < V->dim(); ++j) m.cols[j] = unit_svec(j);
  return m;
}

SVec LinearMap::apply(const SVec& v) const {
  SVecBuilder b;
  for (const auto& [j, c] : v) b.add(cols[j], c);
  return b.take();
}

LinearMap LinearMap::after(const LinearMap& inner) const {
  LinearMap m = zero(inner.src, tgt, degree + inner.degree);
  for (int j = 0; j < inner.src->dim(); ++j) m.cols[j] = apply(inner.cols[j]);
  return m;
}

LinearMap LinearMap::plus(const LinearMap& o, const Scalar& c) const {
  LinearMap m = *this;
  for (size_t j = 0; j < cols.size(); ++j) m.cols[j] = add(cols[j], c, o.cols[j]);
  return m;
}

LinearMap LinearMap::scaled(const Scalar& c) const {
  LinearMap m = *this;
  for (auto& col : m.cols) col = hoalg::scaled(col, c);
  return m;
}

bool LinearMap::is_zero() const {
  return std::all_of(cols.begin(), cols.end(), [](const SVec& c) { return c.empty(); });
}

void LinearMap::validate() const {
  if (static_cast<int>(cols.size()) != src->dim()) throw InputError("linear map: column count mismatch");
  for (int j = 0; j < src->dim(); ++j)
    for (const auto& [i, c] : cols[j]) {
      if (i < 0 || i >= tgt->dim()) throw InputError("linear map: row index out of range");
      if (tgt->degree(i) != src->degree(j) + degree)
        throw InputError("linear map of degree " + std::to_string(degree) + " sends " + (*src)[j].name +
                         " to " + (*tgt)[i].name);
    }
}

// ---------------------------------------------------------------------------

SVec Echelon::reduce(const SVec& v, SVec* combo) const {
  SVec r = v;
  SVecBuilder cb;
  size_t pos = 0;
  while (pos < r.size()) {
    auto it = pivot_row_.find(r[pos].first);
    if (it == pivot_row_.end()) {
      ++pos;
      continue;
    }
    Scalar c = r[pos].second;
    r = add(r, -c, rows_[it->second]);
    if (track_ && combo) cb.add(combos_[it->second], c);
  }
  if (combo) *combo = cb.take();
  return r;
}

bool Echelon::insert(const SVec& v, SVec* relation) {
  int id = inserted_++;
  SVec combo;
  SVec r = reduce(v, track_ ? &combo : nullptr);
  if (r.empty()) {
    if (relation) *relation = add(unit_svec(id), -1, combo);
    return false;
  }
  // r carries no pivot positions, so its leading index is a new pivot
  Scalar lead = r.front().second;
  Scalar inv = 1 / lead;
  r = scaled(r, inv);
  int p = r.front().first;
  pivot_row_[p] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  if (track_) combos_.push_back(scaled(add(unit_svec(id), -1, combo), inv));
  return true;
}

int rank(const std::vector<SVec>& vectors) {
  Echelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<SVec> kernel_basis(const std::vector<SVec>& cols) {
  Echelon e(true);
  std::vector<SVec> out;
  for (const auto& c : cols) {
    SVec rel;
    if (!e.insert(c, &rel)) out.push_back(std::move(rel));
  }
  return out;
}

std::optional<SVec> solve_columns(const std::vector<SVec>& cols, const SVec& b) {
  Echelon e(true);
  for (const auto& c : cols) e.insert(c);
  SVec combo;
  if (!e.reduce(b, &combo).empty()) return std::nullopt;
  return combo;
}

LinearMap inverse(const LinearMap& m) {
  if (m.src->dim() != m.tgt->dim()) throw InputError("inverse of a non-square map");
  Echelon e(true);
  for (const auto& c : m.cols)
    if (!e.insert(c)) throw InputError("inverse of a singular map");
  LinearMap out = LinearMap::zero(m.tgt, m.src, -m.degree);
  for (int i = 0; i < m.tgt->dim(); ++i) {
    SVec combo;
    e.reduce(unit_svec(i), &combo);
    out.cols[i] = combo;
  }
  return out;
}

std::optional<SVec> solve_linear(const LinearMap& map, const SVec& target) {
  auto d = homogeneous_degree(*map.tgt, target);
  if (!d) return SVec{};
  // restrict to the columns that can reach this degree
  std::vector<int> js = map.src->of_degree(*d - map.degree);
  std::vector<SVec> cols;
  for (int j : js) cols.push_back(map.cols[j]);
  auto x = solve_columns(cols, target);
  if (!x) return std::nullopt;
  SVec out;
  for (const auto& [k, c] : *x) out.emplace_back(js[k], c);
  return out;
}

// ---------------------------------------------------------------------------

int koszul_sign(const Perm& sigma, const std::vector<int>& degrees, SignMode mode) {
  if (sigma.size() != degrees.size()) throw InputError("koszul_sign: length mismatch");
  if (!is_perm(sigma)) throw InputError("koszul_sign: not a permutation");
  int s = 1;
  int n = static_cast<int>(sigma.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sigma[i] > sigma[j]) {
        if ((degrees[i] & 1) && (degrees[j] & 1)) s = -s;
        if (mode == SignMode::gamma) s = -s;
      }
  return s;
}

SignedWord permute_tensor(const Perm& sigma, const GradedSpace& V, const std::vector<int>& word, SignMode mode) {
  std::vector<int> degs;
  for (int w : word) degs.push_back(V.degree(w));
  SignedWord out;
  out.sign = koszul_sign(sigma, degs, mode);
  out.word.resize(word.size());
  for (size_t i = 0; i < word.size(); ++i) out.word[sigma[i]] = word[i];
  return out;
}

// ---------------------------------------------------------------------------

void CochainComplex::validate() const {
  if (d.src != space && d.src->basis().size() != space->basis().size())
    throw InputError("differential does not act on the complex");
  if (d.degree != 1) throw InputError("differential must have degree +1");
  d.validate();
  if (!d.after(d).is_zero()) throw InputError("invalid complex: d^2 != 0");
}

CochainComplex suspend(const CochainComplex& c) {
  std::vector<BasisElement> b;
  for (const auto& e : c.space->basis()) b.push_back({"s" + e.name, e.degree - 1, e.weight});
  SpacePtr S = make_space(std::move(b));
  LinearMap d = c.d.scaled(-1);
  d.src = S;
  d.tgt = S;
  return {S, d};
}

std::vector<std::string> contraction_defects(const Contraction& c) {
  std::vector<std::string> out;
  const LinearMap& D = c.big.d;
  if (!(c.f.after(c.g) == LinearMap::identity(c.small.space))) out.push_back("f g = id");
  LinearMap lhs = c.g.after(c.f).plus(LinearMap::identity(c.big.space), -1);
  LinearMap rhs = D.after(c.h).plus(c.h.after(D));
  if (!(lhs == rhs)) out.push_back("g f - id = d h + h d");
  if (!c.h.after(c.g).is_zero()) out.push_back("h g = 0");
  if (!c.f.after(c.h).is_zero()) out.push_back("f h = 0");
  if (!c.h.after(c.h).is_zero()) out.push_back("h h = 0");
  if (!(c.f.after(D) == c.small.d.after(c.f))) out.push_back("f chain map");
  if (!(D.after(c.g) == c.g.after(c.small.d))) out.push_back("g chain map");
  return out;
}

Contraction enforce_side_conditions(const Contraction& c) {
  Contraction out = c;
  LinearMap Q = LinearMap::identity(c.big.space).plus(c.g.after(c.f), -1);
  LinearMap h1 = Q.after(c.h).after(Q);
  out.h = h1.after(c.big.d).after(h1).scaled(-1);
  return out;
}

CohomologyResult cohomology_with_contraction(const CochainComplex& c, bool by_weight) {
  c.validate();
  const GradedSpace& A = *c.space;
  using Key = std::pair<int, int>;
  auto key = [&](int i) { return Key{A.degree(i), by_weight ? A.weight(i) : 0}; };
  std::map<Key, std::vector<int>> groups;
  for (int i = 0; i < A.dim(); ++i) groups[key(i)].push_back(i);
  if (by_weight)
    for (int j = 0; j < A.dim(); ++j)
      for (const auto& [i, x] : c.d.cols[j])
        if (A.weight(i) != A.weight(j)) throw InputError("differential does not preserve weight");

  // K: pivot (standard basis) columns of d in each group; they complement the cocycles
  std::map<Key, std::vector<int>> K;
  std::map<Key, std::vector<SVec>> Z;
  for (const auto& [k, idx] : groups) {
    Echelon e(true);
    for (size_t t = 0; t < idx.size(); ++t) {
      SVec rel;
      if (e.insert(c.d.cols[idx[t]], &rel)) {
        K[k].push_back(idx[t]);
      } else {
        SVec z;
        for (const auto& [pos, x] : rel) z.emplace_back(idx[pos], x);
        std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Z[k].push_back(std::move(z));
      }
    }
  }

  std::vector<BasisElement> hb;
  std::vector<SVec> reps;
  LinearMap h = LinearMap::zero(c.space, c.space, -1);
  std::vector<SVec> fcols(A.dim());
  std::map<int, int> count_by_degree;
  for (const auto& [k, idx] : groups) {
    Key prev{k.first - 1, k.second};
    std::vector<int> kprev = K.count(prev) ? K[prev] : std::vector<int>{};
    Echelon e(true);
    std::vector<int> kind;  // 0 boundary, 1 class, 2 complement, -1 skipped
    std::vector<int> label;
    for (int kp : kprev) {
      if (!e.insert(c.d.cols[kp])) throw InvariantViolation("boundary basis is dependent");
      kind.push_back(0);
      label.push_back(kp);
    }
    for (const auto& z : Z[k]) {
      if (!e.insert(z)) {
        kind.push_back(-1);  // cocycle already in the span; ids count every insertion
        label.push_back(-1);
      } else {
        kind.push_back(1);
        label.push_back(static_cast<int>(reps.size()));
        int deg = k.first;
        int n = count_by_degree[deg]++;
        std::string name;
        if (z.size() == 1 && z[0].second == 1) name = A[z[0].first].name;
        else name = "h" + std::to_string(deg) + "_" + std::to_string(n);
        int w = A.weight(z.front().first);
        for (const auto& [i, x] : z)
          if (A.weight(i) != w) w = 0;
        hb.push_back({name, deg, w});
        reps.push_back(z);
      }
    }
    for (int kc : K[k]) {
      if (!e.insert(unit_svec(kc))) throw InvariantViolation("complement basis is dependent");
      kind.push_back(2);
      label.push_back(kc);
    }
    if (e.rank() != static_cast<int>(idx.size())) throw InvariantViolation("cohomology decomposition is not a basis");
    for (int j : idx) {
      SVec combo;
      e.reduce(unit_svec(j), &combo);
      SVecBuilder fb, hbld;
      for (const auto& [pos, x] : combo) {
        if (kind[pos] == 1) fb.add(label[pos], x);
        else if (kind[pos] == 0) hbld.add(label[pos], -x);
      }
      fcols[j] = fb.take();
      h.cols[j] = hbld.take();
    }
  }
  // the H basis was assigned names in group order; make them unique against clashes
  std::set<std::string> seen;
  for (auto& b : hb) {
    std::string base = b.name;
    int n = 1;
    while (!seen.insert(b.name).second) b.name = base + "_" + std::to_string(n++);
  }
  SpacePtr H = make_space(hb);
  LinearMap f = LinearMap::zero(c.space, H, 0);
  f.cols = std::move(fcols);
  LinearMap g = LinearMap::zero(H, c.space, 0);
  for (int i = 0; i < H->dim(); ++i) g.cols[i] = reps[i];
  CochainComplex small{H, LinearMap::zero(H, H, 1)};
  Contraction con{c, small, f, g, h};
  auto defects = contraction_defects(con);
  if (!defects.empty()) throw InvariantViolation("cohomology contraction fails: " + defects.front());
  return {H, con};
}

}  // namespace hoalg
