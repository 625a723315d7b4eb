#include "hoalg/algebras.hpp"
#include "hoalg/errors.hpp"

namespace hoalg {

namespace {

using Terms = std::vector<std::pair<Scalar, std::string>>;

struct Builder {
  DgAlgebra a;

  Builder(std::string name, Species s, std::vector<BasisElement> basis, std::optional<std::string> unit = {}) {
    if (unit)
      for (auto& b : basis)
        if (b.name == *unit) b.unit = true;
    a = empty_algebra(std::move(name), s, make_space(std::move(basis)));
    if (unit) a.unit = a.space->index(*unit);
  }
  SVec vec(const Terms& t) const {
    SVecBuilder b;
    for (const auto& [c, n] : t) b.add(a.space->index(n), c);
    return b.take();
  }
  Builder& d(const std::string& x, const Terms& t) {
    a.d.cols[a.space->index(x)] = vec(t);
    return *this;
  }
  Builder& mul(const std::string& x, const std::string& y, const Terms& t) {
    a.product[a.space->index(x)][a.space->index(y)] = vec(t);
    return *this;
  }
  DgAlgebra done() {
    complete_products(a);
    return a;
  }
};

}  // namespace

DgAlgebra fixture_F1() { return Builder("F1", Species::Lie, {{"x", -1}}).done(); }

DgAlgebra fixture_F2() {
  return Builder("F2", Species::Com,
                 {{"1", 0}, {"x", 1}, {"y", 1}, {"z", 1}, {"xy", 2}, {"xz", 2}, {"yz", 2}, {"xyz", 3}}, "1")
      .d("z", {{1, "xy"}})
      .mul("x", "y", {{1, "xy"}})
      .mul("x", "z", {{1, "xz"}})
      .mul("y", "z", {{1, "yz"}})
      .mul("x", "yz", {{1, "xyz"}})
      .mul("y", "xz", {{-1, "xyz"}})
      .mul("z", "xy", {{1, "xyz"}})
      .done();
}

DgAlgebra fixture_F3a() { return Builder("F3a", Species::Lie, {{"u", -1}, {"v", -2}}).done(); }

DgAlgebra fixture_F3b() {
  return Builder("F3b", Species::Lie, {{"u", -1}, {"v", -2}, {"w", -3}, {"z", -4}})
      .d("w", {{1, "v"}})
      .mul("u", "u", {{1, "v"}})
      .mul("w", "u", {{1, "z"}})
      .done();
}

DgAlgebra fixture_F4() {
  return Builder("F4", Species::Com, {{"1", 0}, {"e", 2}}, "1").done();
}

DgAlgebra fixture_F5() {
  return Builder("F5", Species::Lie, {{"e", 0}, {"f", 0}, {"h", 0}})
      .mul("e", "f", {{1, "h"}})
      .mul("h", "e", {{2, "e"}})
      .mul("h", "f", {{-2, "f"}})
      .done();
}

DgAlgebra fixture_acyclic() {
  return Builder("acyclic", Species::Lie, {{"u", -1}, {"v", -2}}).d("v", {{1, "u"}}).done();
}

DgAlgebra fixture_ground() { return Builder("ground", Species::Ass, {{"1", 0}}, "1").done(); }

std::vector<std::string> fixture_names() { return {"F1", "F2", "F3a", "F3b", "F4", "F5", "acyclic", "ground"}; }

DgAlgebra fixture(const std::string& name) {
  if (name == "F1") return fixture_F1();
  if (name == "F2") return fixture_F2();
  if (name == "F3a") return fixture_F3a();
  if (name == "F3b") return fixture_F3b();
  if (name == "F4") return fixture_F4();
  if (name == "F5") return fixture_F5();
  if (name == "acyclic") return fixture_acyclic();
  if (name == "ground") return fixture_ground();
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace hoalg
