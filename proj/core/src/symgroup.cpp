#include "hoalg/symgroup.hpp"

#include <mutex>
#include <sstream>

#include "hoalg/algebras.hpp"
#include "hoalg/errors.hpp"
#include "hoalg/opcohomology.hpp"

namespace hoalg {

GroupAlgebraElement GroupAlgebraElement::identity(int n) {
  GroupAlgebraElement e{n, {}};
  e.terms[identity_perm(n)] = 1;
  return e;
}

void GroupAlgebraElement::add_term(const Perm& p, const Scalar& c) {
  if (sgn(c) == 0) return;
  auto it = terms.find(p);
  if (it == terms.end()) {
    terms.emplace(p, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
  if (n != o.n) throw InputError("group algebra elements of different arity");
  GroupAlgebraElement r{n, {}};
  for (const auto& [a, x] : terms)
    for (const auto& [b, y] : o.terms) r.add_term(compose(a, b), x * y);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
  GroupAlgebraElement r = *this;
  for (const auto& [p, c] : o.terms) r.add_term(p, c);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
  return *this + o.scaled(-1);
}

GroupAlgebraElement GroupAlgebraElement::scaled(const Scalar& c) const {
  GroupAlgebraElement r{n, {}};
  if (sgn(c) == 0) return r;
  for (const auto& [p, x] : terms) r.terms.emplace(p, x * c);
  return r;
}

Vec GroupAlgebraElement::dense() const {
  auto perms = all_perms(n);
  Vec v(perms.size());
  for (size_t i = 0; i < perms.size(); ++i) {
    auto it = terms.find(perms[i]);
    if (it != terms.end()) v[i] = it->second;
  }
  return v;
}

std::string GroupAlgebraElement::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*[";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i] + 1;
    os << "]";
  }
  return os.str();
}

GroupAlgebraElement shuffle_element(int p, int q) {
  if (p < 1 || q < 1) throw InputError("shuffle_element needs p, q >= 1");
  GroupAlgebraElement r{p + q, {}};
  for (const auto& s : shuffles(p, q)) r.add_term(s, sign(s));
  return r;
}

GroupAlgebraElement total_shuffle(int n) {
  if (n < 2) throw InputError("total_shuffle needs n >= 2");
  GroupAlgebraElement r{n, {}};
  for (int i = 1; i < n; ++i) r = r + shuffle_element(i, n - i);
  return r;
}

namespace {

SVec to_svec(const GroupAlgebraElement& x, const std::map<Perm, int>& index) {
  SVecBuilder b;
  for (const auto& [p, c] : x.terms) b.add(index.at(p), c);
  return b.take();
}

BarrIdempotent build_barr(int n) {
  GroupAlgebraElement mu = total_shuffle(n);
  auto perms = all_perms(n);
  std::map<Perm, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

  // Krylov sequence 1, mu, mu^2, ... until the first dependency gives the
  // minimal polynomial of mu (left multiplication on Q[S_n] is faithful)
  std::vector<GroupAlgebraElement> powers{GroupAlgebraElement::identity(n)};
  Echelon ech(true);
  SVec relation;
  while (ech.insert(to_svec(powers.back(), index), &relation)) powers.push_back(powers.back() * mu);
  int deg = static_cast<int>(powers.size()) - 1;
  std::vector<Scalar> m(deg + 1);
  for (const auto& [j, c] : relation) m[j] = c;  // relation = e_deg - sum c_j e_j
  // x^2 | m would mean ker M^2 != ker M and no projection along the kernel exists
  if (sgn(m[0]) == 0 && (deg < 1 || sgn(m[1]) == 0))
    throw InvariantViolation("left multiplication by mu_" + std::to_string(n) + " has a nilpotent part at 0");

  BarrIdempotent out;
  out.minimal_polynomial = m;
  out.poly.assign(deg + 1, 0);
  if (sgn(m[0]) == 0) {
    // m = x q(x); e = 1 - q(mu)/q(0) vanishes mod x and is 1 mod q
    const Scalar& q0 = m[1];
    for (int k = 1; k < deg; ++k) out.poly[k] = -m[k + 1] / q0;
  } else {
    for (int k = 1; k <= deg; ++k) out.poly[k] = -m[k] / m[0];
  }
  GroupAlgebraElement e{n, {}};
  for (int k = 1; k < static_cast<int>(out.poly.size()); ++k) e = e + powers[k].scaled(out.poly[k]);
  out.e = e;

  if (!(e * e == e)) throw InvariantViolation("e_" + std::to_string(n) + " is not idempotent");
  for (int i = 1; i < n; ++i) {
    GroupAlgebraElement s = shuffle_element(i, n - i);
    if (!(e * s == s))
      throw InvariantViolation("e_" + std::to_string(n) + " does not fix mu_{" + std::to_string(i) + "," +
                               std::to_string(n - i) + "}");
  }
  return out;
}

}  // namespace

const BarrIdempotent& barr_idempotent(int n, int cap) {
  if (n < 2) throw InputError("barr_idempotent needs n >= 2");
  if (n > cap) throw InputError("barr_idempotent: n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  static std::mutex mtx;
  static std::map<int, BarrIdempotent> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_barr(n)).first;
  return it->second;
}

Multilinear act(const Multilinear& f, const GroupAlgebraElement& x) {
  if (x.n != f.arity) throw InputError("group algebra element and cochain arity differ");
  Multilinear r = Multilinear::zero(f.in, f.out, f.arity, f.degree, f.max_weight);
  // (f·sigma)(t) = f(sigma.t): t = sigma^{-1}.t0 carries the stored value of t0
  for (const auto& [t0, v] : f.values)
    for (const auto& [s, c] : x.terms) {
      SignedWord t = act_on_word(inverse(s), *f.in, t0, SignMode::gamma);
      r.accumulate(t.word, v, c * t.sign);
    }
  return r;
}

ChainCompatibilityReport verify_chain_compatibility(int n, const DgAlgebra& algebra, const GroupAlgebraElement* e_n,
                                                    const GroupAlgebraElement* e_np1) {
  if (algebra.species == Species::Lie) throw InputError("chain compatibility needs an associative algebra");
  const GroupAlgebraElement& en = e_n ? *e_n : barr_idempotent(n).e;
  const GroupAlgebraElement& en1 = e_np1 ? *e_np1 : barr_idempotent(n + 1).e;
  OperadicContext ctx = hochschild_context(algebra);
  ChainCompatibilityReport rep;
  rep.n = n;
  for_each_tuple(*ctx.input, n, ctx.max_weight, [&](const Tuple& t) {
    if (!rep.pass) return;
    for (int o = 0; o < ctx.output->dim(); ++o) {
      Multilinear f = Multilinear::zero(ctx.input, ctx.output, n, 0, ctx.max_weight);
      int sd = 0;
      for (int i : t) sd += ctx.input->sdeg(i);
      f.degree = ctx.output->sdeg(o) - sd;
      f.values[t] = unit_svec(o);
      Multilinear lhs = differential(ctx, act(f, en));
      Multilinear rhs = act(differential(ctx, f), en1);
      ++rep.checked;
      if (!(lhs == rhs)) {
        rep.pass = false;
        rep.counterexample = "f" + format_tuple(*ctx.input, t) + " = " + (*ctx.output)[o].name;
        return;
      }
    }
  });
  return rep;
}

}  // namespace hoalg
