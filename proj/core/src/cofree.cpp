#include "hoalg/cofree.hpp"

#include <algorithm>

#include "hoalg/errors.hpp"

namespace hoalg {

CofreeKind cofree_kind(Species s) { return s == Species::Lie ? CofreeKind::symmetric : CofreeKind::tensor; }

void add_into(CoElem& acc, const CoElem& x, const Scalar& c) {
  if (sgn(c) == 0) return;
  for (const auto& [w, a] : x) {
    Scalar& s = acc[w];
    s += c * a;
    if (sgn(s) == 0) acc.erase(w);
  }
}

CoElem prune(CoElem x) {
  for (auto it = x.begin(); it != x.end();) it = sgn(it->second) == 0 ? x.erase(it) : std::next(it);
  return x;
}

namespace {

std::vector<int> sdegs(const GradedSpace& V, const Tuple& t) {
  std::vector<int> s;
  for (int i : t) s.push_back(V.sdeg(i));
  return s;
}

// sign of moving the letters at positions `front` (increasing) to the front
int front_sign(const std::vector<int>& sd, const std::vector<char>& mask) {
  int sign = 1, passed = 0;
  for (size_t i = 0; i < sd.size(); ++i) {
    if (mask[i]) {
      if ((sd[i] & 1) && (passed & 1)) sign = -sign;
    } else {
      passed += sd[i];
    }
  }
  return sign;
}

}  // namespace

std::pair<Tuple, int> Cofree::canonical(const Tuple& t) const {
  if (kind == CofreeKind::tensor) return {t, 1};
  // stable sort by index with Koszul signs from adjacent swaps
  Tuple w = t;
  int sign = 1;
  for (size_t i = 1; i < w.size(); ++i)
    for (size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
      if ((space->sdeg(w[j - 1]) & 1) && (space->sdeg(w[j]) & 1)) sign = -sign;
      std::swap(w[j - 1], w[j]);
    }
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && (space->sdeg(w[i]) & 1)) return {w, 0};
  return {w, sign};
}

CoElem Cofree::word(const Tuple& t) const {
  auto [w, s] = canonical(t);
  if (s == 0) return {};
  return {{w, Scalar(s)}};
}

std::vector<Tuple> Cofree::words(int length) const {
  std::vector<Tuple> out;
  for_each_tuple(*space, length, -1, [&](const Tuple& t) {
    auto [w, s] = canonical(t);
    if (s != 0 && w == t) out.push_back(t);
  });
  return out;
}

CoElem2 Cofree::coproduct(const CoElem& x) const {
  CoElem2 out;
  auto put = [&](Tuple a, Tuple b, const Scalar& c) {
    Scalar& s = out[{std::move(a), std::move(b)}];
    s += c;
  };
  for (const auto& [w, c] : x) {
    int n = static_cast<int>(w.size());
    if (kind == CofreeKind::tensor) {
      for (int i = 0; i <= n; ++i) put(Tuple(w.begin(), w.begin() + i), Tuple(w.begin() + i, w.end()), c);
      continue;
    }
    auto sd = sdegs(*space, w);
    for (int k = 0; k <= n; ++k)
      for (const auto& S : subsets(n, k)) {
        std::vector<char> mask(n, 0);
        for (int i : S) mask[i] = 1;
        Tuple a, b;
        for (int i = 0; i < n; ++i) (mask[i] ? a : b).push_back(w[i]);
        put(a, b, c * front_sign(sd, mask));
      }
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

CoElem Cofree::coderivation(const std::map<int, Multilinear>& theta, const CoElem& x) const {
  CoElem acc;
  for (const auto& [w, c] : x) {
    int n = static_cast<int>(w.size());
    auto sd = sdegs(*space, w);
    for (const auto& [a, th] : theta) {
      if (a > n) continue;
      if (kind == CofreeKind::tensor) {
        int before = 0;
        for (int r = 0; r + a <= n; ++r) {
          const SVec& v = th.at(Tuple(w.begin() + r, w.begin() + r + a));
          int s = (th.degree & 1) && (before & 1) ? -1 : 1;
          for (const auto& [o, k] : v) {
            Tuple nw(w.begin(), w.begin() + r);
            nw.push_back(o);
            nw.insert(nw.end(), w.begin() + r + a, w.end());
            acc[nw] += c * k * s;
          }
          before += sd[r];
        }
        continue;
      }
      for (const auto& S : subsets(n, a)) {
        std::vector<char> mask(n, 0);
        for (int i : S) mask[i] = 1;
        Tuple u, rest;
        for (int i = 0; i < n; ++i) (mask[i] ? u : rest).push_back(w[i]);
        const SVec& v = th.at(u);
        if (v.empty()) continue;
        int s = front_sign(sd, mask);
        for (const auto& [o, k] : v) {
          Tuple nw{o};
          nw.insert(nw.end(), rest.begin(), rest.end());
          auto [cw, cs] = canonical(nw);
          if (cs == 0) continue;
          acc[cw] += c * k * s * cs;
        }
      }
    }
  }
  return prune(std::move(acc));
}

CoElem Cofree::morphism(const std::map<int, Multilinear>& phi, const CoElem& x) const {
  CoElem acc;
  for (const auto& [w, c] : x) {
    int n = static_cast<int>(w.size());
    if (n == 0) {
      acc[w] += c;
      continue;
    }
    auto sd = sdegs(*space, w);
    for (int j = 1; j <= n; ++j) {
      // each block evaluated, then the letters multiplied out
      auto expand = [&](const std::vector<Tuple>& blocks, const Scalar& coef) {
        std::vector<SVec> vals;
        for (const auto& b : blocks) {
          auto it = phi.find(static_cast<int>(b.size()));
          if (it == phi.end()) return;
          vals.push_back(it->second.at(b));
          if (vals.back().empty()) return;
        }
        Tuple t(j);
        std::function<void(int, const Scalar&)> rec = [&](int pos, const Scalar& k) {
          if (pos == j) {
            auto [cw, cs] = canonical(t);
            if (cs != 0) acc[cw] += k * cs;
            return;
          }
          for (const auto& [o, a] : vals[pos]) {
            t[pos] = o;
            rec(pos + 1, k * a);
          }
        };
        rec(0, coef);
      };
      if (kind == CofreeKind::tensor) {
        for (const auto& comp : compositions(n, j)) {
          std::vector<Tuple> blocks;
          int start = 0;
          for (int len : comp) {
            blocks.emplace_back(w.begin() + start, w.begin() + start + len);
            start += len;
          }
          expand(blocks, c);
        }
        continue;
      }
      Scalar fact(1);
      for (int i = 2; i <= j; ++i) fact *= i;
      for (const auto& P : ordered_partitions(n, j)) {
        Perm sigma(n);
        int pos = 0;
        std::vector<Tuple> blocks;
        for (const auto& b : P) {
          Tuple u;
          for (int i : b) {
            sigma[i] = pos++;
            u.push_back(w[i]);
          }
          blocks.push_back(std::move(u));
        }
        expand(blocks, c * koszul_sign(sigma, sd) / fact);
      }
    }
  }
  return prune(std::move(acc));
}

CoElem Cofree::exp(const std::map<int, Multilinear>& theta, const CoElem& x, const Scalar& c) const {
  CoElem acc = x, term = x;
  for (int m = 1; !term.empty(); ++m) {
    term = coderivation(theta, term);
    for (auto& [w, a] : term) a *= c / m;
    add_into(acc, term);
    if (m > max_length + 1) throw InvariantViolation("coderivation exponential does not terminate");
  }
  return acc;
}

SVec Cofree::corestrict(const CoElem& x) const {
  SVecBuilder b;
  for (const auto& [w, c] : x)
    if (w.size() == 1) b.add(w[0], c);
  return b.take();
}

std::map<int, Multilinear> exp_coderivation(Species s, const std::map<int, Multilinear>& theta, int W) {
  SpacePtr V;
  int mw = -1;
  for (const auto& [a, th] : theta) {
    if (th.degree != 0) throw InputError("exp_coderivation: coderivation must have degree 0");
    if (a < 2) throw InputError("exp_coderivation: coderivation must lower word length");
    if (V && th.in != V) throw InputError("exp_coderivation: components on different spaces");
    V = th.in;
    mw = th.max_weight;
  }
  std::map<int, Multilinear> out;
  if (!V) return out;
  Cofree cf{cofree_kind(s), V, W};
  for (int n = 1; n <= W; ++n) {
    Multilinear phi = Multilinear::zero(V, V, n, 0, mw);
    for_each_tuple(*V, n, mw, [&](const Tuple& t) {
      SVec v = cf.corestrict(cf.exp(theta, cf.word(t)));
      if (!v.empty()) phi.values.emplace(t, std::move(v));
    });
    out.emplace(n, std::move(phi));
  }
  return out;
}

}  // namespace hoalg
