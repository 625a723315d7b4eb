#include "hoalg/multilinear.hpp"

#include <algorithm>
#include <sstream>

#include "hoalg/errors.hpp"

namespace hoalg {

namespace {
const SVec kEmpty;

int sdeg_sum(const GradedSpace& V, const Tuple& t, size_t upto) {
  int s = 0;
  for (size_t i = 0; i < upto && i < t.size(); ++i) s += V.sdeg(t[i]);
  return s;
}

int min_weight(const GradedSpace& V) {
  int m = 0;
  for (int i = 0; i < V.dim(); ++i) m = i == 0 ? V.weight(0) : std::min(m, V.weight(i));
  return m;
}

bool map_tuple(const Tuple& t, const std::vector<int>& m, Tuple& out) {
  out.resize(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    int j = m[t[i]];
    if (j < 0) return false;
    out[i] = j;
  }
  return true;
}
}  // namespace

Multilinear Multilinear::zero(SpacePtr in, SpacePtr out, int arity, int degree, int max_weight) {
  Multilinear f;
  f.in = std::move(in);
  f.out = std::move(out);
  f.arity = arity;
  f.degree = degree;
  f.max_weight = max_weight;
  return f;
}

const SVec& Multilinear::at(const Tuple& t) const {
  auto it = values.find(t);
  return it == values.end() ? kEmpty : it->second;
}

void Multilinear::accumulate(const Tuple& t, const SVec& v, const Scalar& c) {
  if (v.empty() || sgn(c) == 0) return;
  auto it = values.find(t);
  if (it == values.end()) {
    values.emplace(t, hoalg::scaled(v, c));
    return;
  }
  it->second = add(it->second, c, v);
  if (it->second.empty()) values.erase(it);
}

Multilinear Multilinear::plus(const Multilinear& o, const Scalar& c) const {
  if (o.arity != arity || o.in->dim() != in->dim() || o.out->dim() != out->dim())
    throw InputError("adding multilinear maps of different shapes");
  Multilinear r = *this;
  if (o.is_zero() || sgn(c) == 0) return r;
  if (r.is_zero()) r.degree = o.degree;
  for (const auto& [t, v] : o.values) r.accumulate(t, v, c);
  return r;
}

Multilinear Multilinear::scaled(const Scalar& c) const {
  Multilinear r = *this;
  if (sgn(c) == 0) {
    r.values.clear();
    return r;
  }
  for (auto& [t, v] : r.values) v = hoalg::scaled(v, c);
  return r;
}

int Multilinear::tuple_sdeg(const Tuple& t) const { return sdeg_sum(*in, t, t.size()); }

int Multilinear::tuple_weight(const Tuple& t) const {
  int w = 0;
  for (int i : t) w += in->weight(i);
  return w;
}

bool Multilinear::in_domain(const Tuple& t) const { return max_weight < 0 || tuple_weight(t) <= max_weight; }

void Multilinear::validate() const {
  for (const auto& [t, v] : values) {
    if (static_cast<int>(t.size()) != arity) throw InputError("multilinear map: wrong tuple length");
    if (!in_domain(t)) throw InputError("multilinear map: value outside the weight domain");
    int want = tuple_sdeg(t) + degree;
    for (const auto& [i, c] : v)
      if (out->sdeg(i) != want)
        throw InputError("multilinear map of degree " + std::to_string(degree) + " sends " +
                         format_tuple(*in, t) + " to " + (*out)[i].name);
  }
}

void for_each_tuple(const GradedSpace& V, int n, int max_weight, const std::function<void(const Tuple&)>& fn) {
  if (n < 0) return;
  Tuple t(n, 0);
  if (n == 0) {
    fn(t);
    return;
  }
  if (V.dim() == 0) return;
  int mw = min_weight(V);
  // depth-first with weight pruning
  std::function<void(int, int)> rec = [&](int pos, int w) {
    if (pos == n) {
      fn(t);
      return;
    }
    for (int i = 0; i < V.dim(); ++i) {
      int w2 = w + V.weight(i);
      if (max_weight >= 0 && w2 + (n - pos - 1) * mw > max_weight) continue;
      t[pos] = i;
      rec(pos + 1, w2);
    }
  };
  rec(0, 0);
}

std::vector<int> name_map(const GradedSpace& from, const GradedSpace& to) {
  std::vector<int> m(from.dim());
  for (int i = 0; i < from.dim(); ++i) {
    auto j = to.find(from[i].name);
    m[i] = j ? *j : (from[i].unit ? kDropped : kMissing);
  }
  return m;
}

SVec map_vec(const SVec& v, const std::vector<int>& m, const GradedSpace& from) {
  SVecBuilder b;
  for (const auto& [i, c] : v) {
    if (m[i] == kDropped) continue;
    if (m[i] == kMissing) throw TruncationOverflow("value " + from[i].name + " lies outside the truncation");
    b.add(m[i], c);
  }
  return b.take();
}

Multilinear retarget(const Multilinear& f, SpacePtr out) {
  if (f.out == out) return f;
  auto m = name_map(*f.out, *out);
  Multilinear r = Multilinear::zero(f.in, out, f.arity, f.degree, f.max_weight);
  for (const auto& [t, v] : f.values) r.accumulate(t, map_vec(v, m, *f.out));
  return r;
}

Multilinear restrict_inputs(const Multilinear& f, SpacePtr in, int max_weight) {
  auto m = name_map(*f.in, *in);
  Multilinear r = Multilinear::zero(in, f.out, f.arity, f.degree, max_weight);
  Tuple u;
  for (const auto& [t, v] : f.values)
    if (map_tuple(t, m, u) && r.in_domain(u)) r.values[u] = v;
  return r;
}

Multilinear compose_at(const Multilinear& f, int r, const Multilinear& g, SpacePtr in, int max_weight) {
  Multilinear res = Multilinear::zero(in, f.out, f.arity + g.arity - 1, f.degree + g.degree, max_weight);
  if (r < 0 || r >= f.arity) throw InputError("compose_at: position out of range");
  auto gin = name_map(*g.in, *in);
  auto fin = name_map(*f.in, *in);
  auto gout = name_map(*g.out, *f.in);
  int mw = min_weight(*in);
  // g's values bucketed by the f-input they produce
  std::map<int, std::vector<std::pair<Tuple, Scalar>>> bucket;
  Tuple u;
  for (const auto& [t, v] : g.values) {
    if (!map_tuple(t, gin, u)) continue;
    int wu = res.tuple_weight(u);
    if (max_weight >= 0 && wu + (f.arity - 1) * mw > max_weight) continue;
    for (const auto& [c, x] : v) {
      int c2 = gout[c];
      if (c2 == kDropped) continue;
      if (c2 == kMissing)
        throw TruncationOverflow("composite needs an input " + (*g.out)[c].name + " outside the truncation");
      bucket[c2].emplace_back(u, x);
    }
  }
  Tuple x;
  for (const auto& [t, v] : f.values) {
    auto it = bucket.find(t[r]);
    if (it == bucket.end()) continue;
    Tuple head, tail;
    bool ok = true;
    for (int i = 0; i < f.arity && ok; ++i) {
      if (i == r) continue;
      int j = fin[t[i]];
      if (j < 0) ok = false;
      else (i < r ? head : tail).push_back(j);
    }
    if (!ok) continue;
    int s_head = sdeg_sum(*in, head, head.size());
    int sign = ((g.degree & 1) && (s_head & 1)) ? -1 : 1;
    for (const auto& [uu, coef] : it->second) {
      x = head;
      x.insert(x.end(), uu.begin(), uu.end());
      x.insert(x.end(), tail.begin(), tail.end());
      if (!res.in_domain(x)) continue;
      res.accumulate(x, v, coef * sign);
    }
  }
  return res;
}

Multilinear compose(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight) {
  Multilinear res = Multilinear::zero(in, f.out, f.arity + g.arity - 1, f.degree + g.degree, max_weight);
  for (int r = 0; r < f.arity; ++r) res = res.plus(compose_at(f, r, g, in, max_weight));
  return res;
}

Multilinear gerstenhaber(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight) {
  Multilinear a = compose(f, g, in, max_weight);
  Multilinear b = retarget(compose(g, f, in, max_weight), f.out);
  int s = ((f.degree & 1) && (g.degree & 1)) ? -1 : 1;
  a.degree = f.degree + g.degree;
  return a.plus(b, -s);
}

Multilinear nr_compose(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight) {
  int n = f.arity + g.arity - 1;
  int m = g.arity;
  Multilinear res = Multilinear::zero(in, f.out, n, f.degree + g.degree, max_weight);
  if (f.arity == 0) return res;
  auto gin = name_map(*in, *g.in);
  auto fin = name_map(*in, *f.in);
  auto gout = name_map(*g.out, *f.in);
  auto subs = subsets(n, m);
  for_each_tuple(*in, n, max_weight, [&](const Tuple& x) {
    SVecBuilder acc;
    for (const auto& S : subs) {
      std::vector<char> mask(n, 0);
      for (int i : S) mask[i] = 1;
      Tuple u, rest;
      for (int i : S) u.push_back(x[i]);
      for (int i = 0; i < n; ++i)
        if (!mask[i]) rest.push_back(x[i]);
      Tuple ug, rf;
      if (!map_tuple(u, gin, ug) || !map_tuple(rest, fin, rf)) continue;
      const SVec& gv = g.at(ug);
      if (gv.empty()) continue;
      Perm sigma(n);
      int pos = 0;
      for (int i : S) sigma[i] = pos++;
      for (int i = 0; i < n; ++i)
        if (!mask[i]) sigma[i] = pos++;
      std::vector<int> sd(n);
      for (int i = 0; i < n; ++i) sd[i] = in->sdeg(x[i]);
      int sign = koszul_sign(sigma, sd);
      for (const auto& [c, coef] : gv) {
        int c2 = gout[c];
        if (c2 == kDropped) continue;
        if (c2 == kMissing) throw TruncationOverflow("value " + (*g.out)[c].name + " lies outside the truncation");
        Tuple ft{c2};
        ft.insert(ft.end(), rf.begin(), rf.end());
        acc.add(f.at(ft), coef * sign);
      }
    }
    SVec v = acc.take();
    if (!v.empty()) res.values.emplace(x, std::move(v));
  });
  return res;
}

Multilinear nr_bracket(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight) {
  Multilinear a = nr_compose(f, g, in, max_weight);
  Multilinear b = retarget(nr_compose(g, f, in, max_weight), f.out);
  int s = ((f.degree & 1) && (g.degree & 1)) ? -1 : 1;
  return a.plus(b, -s);
}

Multilinear compose_symmetric(const Multilinear& F, const std::map<int, Multilinear>& gs, int n, SpacePtr in,
                              int max_weight) {
  int k = F.arity;
  Multilinear res = Multilinear::zero(in, F.out, n, F.degree, max_weight);
  if (gs.empty() || k == 0) return res;
  res.degree = F.degree + k * gs.begin()->second.degree;
  std::vector<std::vector<std::vector<int>>> parts;
  for (auto& P : ordered_partitions(n, k)) {
    bool ok = true;
    for (const auto& b : P) ok = ok && gs.count(static_cast<int>(b.size()));
    if (ok) parts.push_back(std::move(P));
  }
  if (parts.empty()) return res;
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> maps;
  for (const auto& [a, G] : gs) maps[a] = {name_map(*in, *G.in), name_map(*G.out, *F.in)};
  Scalar norm(1);
  for (int i = 2; i <= k; ++i) norm *= i;
  norm = 1 / norm;
  for_each_tuple(*in, n, max_weight, [&](const Tuple& x) {
    std::vector<int> sd(n);
    for (int i = 0; i < n; ++i) sd[i] = in->sdeg(x[i]);
    SVecBuilder acc;
    for (const auto& P : parts) {
      Perm sigma(n);
      int pos = 0;
      for (const auto& b : P)
        for (int i : b) sigma[i] = pos++;
      int sign = koszul_sign(sigma, sd);
      std::vector<SVec> outs(k);
      bool zero = false;
      int before = 0;  // sdeg of the inputs to the left of the current block
      for (int j = 0; j < k && !zero; ++j) {
        const auto& b = P[j];
        const Multilinear& G = gs.at(static_cast<int>(b.size()));
        const auto& [gin, gout] = maps.at(static_cast<int>(b.size()));
        Tuple u, ug;
        for (int i : b) u.push_back(x[i]);
        if (!map_tuple(u, gin, ug)) {
          zero = true;
          break;
        }
        if ((G.degree & 1) && (before & 1)) sign = -sign;
        outs[j] = map_vec(G.at(ug), gout, *G.out);
        if (outs[j].empty()) zero = true;
        for (int i : b) before += sd[i];
      }
      if (zero) continue;
      acc.add(eval_tensor(F, outs), norm * sign);
    }
    SVec v = acc.take();
    if (!v.empty()) res.values.emplace(x, std::move(v));
  });
  return res;
}

SVec eval_tensor(const Multilinear& f, const std::vector<SVec>& xs) {
  SVecBuilder acc;
  Tuple t(xs.size());
  std::function<void(size_t, const Scalar&)> rec = [&](size_t pos, const Scalar& c) {
    if (pos == xs.size()) {
      acc.add(f.at(t), c);
      return;
    }
    for (const auto& [i, x] : xs[pos]) {
      t[pos] = i;
      rec(pos + 1, c * x);
    }
  };
  rec(0, Scalar(1));
  return acc.take();
}

Multilinear compose_tensor(const Multilinear& F, const std::vector<std::map<int, Multilinear>>& gs, int n,
                           SpacePtr in, int max_weight) {
  int k = F.arity;
  if (static_cast<int>(gs.size()) != k) throw InputError("compose_tensor: slot count mismatch");
  int deg = F.degree;
  Multilinear res = Multilinear::zero(in, F.out, n, deg, max_weight);
  std::vector<std::vector<int>> comps;
  for (auto& c : compositions(n, k)) {
    bool ok = true;
    for (int i = 0; i < k; ++i) ok = ok && gs[i].count(c[i]);
    if (ok) comps.push_back(c);
  }
  if (comps.empty()) return res;
  res.degree = deg;
  {
    const auto& c = comps.front();
    for (int i = 0; i < k; ++i) res.degree += gs[i].at(c[i]).degree;
  }
  // name maps per slot and candidate
  std::vector<std::map<int, std::pair<std::vector<int>, std::vector<int>>>> maps(k);
  for (int i = 0; i < k; ++i)
    for (const auto& [a, G] : gs[i]) maps[i][a] = {name_map(*in, *G.in), name_map(*G.out, *F.in)};
  for_each_tuple(*in, n, max_weight, [&](const Tuple& x) {
    SVecBuilder acc;
    for (const auto& c : comps) {
      std::vector<SVec> outs(k);
      int start = 0;
      int sign = 1;
      bool zero = false;
      for (int i = 0; i < k && !zero; ++i) {
        const Multilinear& G = gs[i].at(c[i]);
        const auto& [gin, gout] = maps[i].at(c[i]);
        Tuple u(x.begin() + start, x.begin() + start + c[i]), ug;
        if (!map_tuple(u, gin, ug)) {
          zero = true;
          break;
        }
        if ((G.degree & 1) && (sdeg_sum(*in, x, start) & 1)) sign = -sign;
        outs[i] = map_vec(G.at(ug), gout, *G.out);
        if (outs[i].empty()) zero = true;
        start += c[i];
      }
      if (zero) continue;
      acc.add(eval_tensor(F, outs), sign);
    }
    SVec v = acc.take();
    if (!v.empty()) res.values.emplace(x, std::move(v));
  });
  return res;
}

Multilinear postcompose(const LinearMap& m, const Multilinear& f) {
  Multilinear r = Multilinear::zero(f.in, m.tgt, f.arity, f.degree + m.degree, f.max_weight);
  for (const auto& [t, v] : f.values) {
    SVec w = m.apply(v);
    if (!w.empty()) r.values.emplace(t, std::move(w));
  }
  return r;
}

Multilinear from_linear(const LinearMap& m, int max_weight) {
  Multilinear r = Multilinear::zero(m.src, m.tgt, 1, m.degree, max_weight);
  for (int j = 0; j < m.src->dim(); ++j)
    if (!m.cols[j].empty() && r.in_domain({j})) r.values[{j}] = m.cols[j];
  return r;
}

SignedWord act_on_word(const Perm& sigma, const GradedSpace& V, const Tuple& t, SignMode mode) {
  std::vector<int> sd;
  for (int i : t) sd.push_back(V.sdeg(i));
  SignedWord out;
  out.sign = koszul_sign(sigma, sd, mode);
  out.word.resize(t.size());
  for (size_t i = 0; i < t.size(); ++i) out.word[sigma[i]] = t[i];
  return out;
}

Multilinear symmetrize(const Multilinear& f, SignMode mode) {
  Multilinear r = Multilinear::zero(f.in, f.out, f.arity, f.degree, f.max_weight);
  auto perms = all_perms(f.arity);
  // (f·sigma)(x) = f(sigma.x); scatter each stored value to the x with sigma.x = ±t
  for (const auto& [t, v] : f.values)
    for (const auto& s : perms) {
      Perm inv = inverse(s);
      SignedWord x = act_on_word(inv, *f.in, t, mode);  // x = sigma^{-1}.t, sigma.x = sign * t
      r.accumulate(x.word, v, x.sign);
    }
  return r;
}

std::optional<Tuple> symmetry_defect(const Multilinear& f, SignMode mode) {
  auto perms = all_perms(f.arity);
  for (const auto& [t, v] : f.values)
    for (const auto& s : perms) {
      SignedWord y = act_on_word(s, *f.in, t, mode);
      // symmetric means f(sigma.t) = f(t) for the signed word sigma.t
      if (!(scaled(f.at(y.word), y.sign) == v)) return t;
    }
  // values forced to vanish (odd repeats) must also be absent
  return std::nullopt;
}

std::string format_tuple(const GradedSpace& V, const Tuple& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << V[t[i]].name;
  os << ")";
  return os.str();
}

}  // namespace hoalg
