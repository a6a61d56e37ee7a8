#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "napprox/units.hpp"

using namespace napprox;

namespace {

UnitGroup group_of(const std::vector<Int>& poly, const Rat& lo, const Rat& hi) {
  return fundamental_units(multiplier_ring(power_basis_lattice(field_new(poly, lo, hi))));
}

}  // namespace

TEST_CASE("golden fundamental unit is phi") {
  UnitGroup g = group_of({-1, -1, 1}, Rat(1), Rat(2));
  REQUIRE(g.fundamental_units.size() == 1);
  const FieldElement& u = g.fundamental_units[0];
  CHECK(u.coords() == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(std::abs(g.regulator.mid_double() - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-12);
  CHECK(g.regulator.sign() > 0);

  LogVector lv = log_embedding(u, 64);
  CHECK(std::abs(lv.v[0].mid_double() - 0.481211825059603) < 1e-12);
  CHECK(std::abs(lv.v[0].mid_double() + lv.v[1].mid_double()) < 1e-14);  // hyperplane

  CHECK(sign_pattern(u) == std::vector<int>{1, -1});
  CHECK(sign_pattern(u * u) == std::vector<int>{1, 1});

  double k = kappa(g).kappa;
  CHECK(k > 1.6);
  CHECK(k < 1.7);
}

TEST_CASE("unit predicates") {
  FieldPtr f = field_new({-1, -1, 1}, Rat(1), Rat(2));
  MultiplierRingBasis ring = multiplier_ring(power_basis_lattice(f));
  FieldElement phi = FieldElement::generator(f);
  CHECK(in_ring(phi, ring.basis));
  CHECK(is_unit_of(phi, ring.basis));
  CHECK(!is_unit_of(phi + phi, ring.basis));          // norm -4
  CHECK(!in_ring(phi.scaled(Rat(1, 2)), ring.basis));
}

TEST_CASE("suborder Z + 2 sqrt5 Z has fundamental unit 9 + 4 sqrt5") {
  FieldPtr f = field_new({-1, -1, 1}, Rat(1), Rat(2));
  ModuleLattice sub =
      make_lattice(f, {FieldElement::one(f), FieldElement(f, {Rat(-2), Rat(4)})});
  UnitGroup g = fundamental_units(multiplier_ring(sub));
  REQUIRE(g.fundamental_units.size() == 1);
  double v = g.fundamental_units[0].embed_real(0, 64).mid_double();
  CHECK(std::abs(v - (9 + 4 * std::sqrt(5.0))) < 1e-9);
  CHECK(in_ring(g.fundamental_units[0], sub.basis));
}

TEST_CASE("Z[cbrt 2] fundamental unit and kappa") {
  UnitGroup g = group_of({-2, 0, 0, 1}, Rat(1), Rat(2));
  REQUIRE(g.fundamental_units.size() == 1);
  CHECK(g.fundamental_units[0].coords() == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
  double k = kappa(g).kappa;
  CHECK(k > 3.8);
  CHECK(k < 3.9);
}

TEST_CASE("totally real cubic has unit rank two") {
  UnitGroup g = group_of({-1, -2, 1, 1}, Rat(1), Rat(2));
  REQUIRE(g.fundamental_units.size() == 2);
  for (const FieldElement& u : g.fundamental_units) {
    CHECK(abs(u.norm()) == 1);
    CHECK(u.embed_real(0, 64).mid_double() > 1);  // sigma_0 > 1 normalization
  }
  CHECK(g.regulator.sign() > 0);

  UnitGroup g2 = group_of({21, -19, 0, 1}, Rat(1), Rat(13, 10));
  REQUIRE(g2.fundamental_units.size() == 2);
  for (const FieldElement& u : g2.fundamental_units) CHECK(abs(u.norm()) == 1);
}

TEST_CASE("dominant units move with t") {
  UnitGroup g = group_of({-1, -1, 1}, Rat(1), Rat(2));
  const FieldElement& phi = g.fundamental_units[0];
  CHECK(dominant_unit(g, 1) == FieldElement::one(g.field));
  CHECK(dominant_unit(g, 10) == phi.pow(5));

  auto stream = dominant_stream(g, 2, 8);
  REQUIRE(stream.size() == 8);
  for (size_t i = 1; i < stream.size(); ++i)
    CHECK(stream[i].embed_real(0, 64).mid_double() >
          stream[i - 1].embed_real(0, 64).mid_double());

  UnitGroup c = group_of({-2, 0, 0, 1}, Rat(1), Rat(2));
  CHECK(dominant_unit(c, 100) == c.fundamental_units[0].pow(3));
}

TEST_CASE("units in a conjugate-ratio region grow geometrically") {
  UnitGroup g = group_of({-1, -2, 1, 1}, Rat(1), Rat(2));
  auto reg = units_in_region(g, Rat(1, 2), Rat(2), 20);
  REQUIRE(!reg.empty());
  double prev = 1;
  for (const FieldElement& u : reg) {
    double s0 = u.embed_real(0, 64).mid_double();
    CHECK(s0 > prev);
    double r = u.embed_real(1, 64).mid_double() / u.embed_real(2, 64).mid_double();
    CHECK(r > 0.5);
    CHECK(r < 2);
    prev = s0;
  }
  for (size_t i = 1; i < reg.size(); ++i) {
    CHECK(reg[i].embed_real(0, 64).mid_double() /
              reg[i - 1].embed_real(0, 64).mid_double() >
          1.01);
  }
}

TEST_CASE("user-supplied units are verified before being trusted") {
  FieldPtr f = field_new({-1, -1, 1}, Rat(1), Rat(2));
  MultiplierRingBasis ring = multiplier_ring(power_basis_lattice(f));
  FieldElement phi = FieldElement::generator(f);
  UnitGroup g = unit_group_from(ring, {phi});
  CHECK(g.fundamental_units.size() == 1);
  CHECK_THROWS_AS(unit_group_from(ring, {phi + phi}), Error);  // not a unit
}
