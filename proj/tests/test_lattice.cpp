#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "napprox/lattice.hpp"

using namespace napprox;

namespace {

FieldPtr golden() { return field_new({-1, -1, 1}, Rat(1), Rat(2)); }
FieldPtr cbrt2() { return field_new({-2, 0, 0, 1}, Rat(1), Rat(2)); }

}  // namespace

TEST_CASE("golden Gram matrix and dual basis") {
  ModuleLattice lat = power_basis_lattice(golden());
  GramMatrix g = gram(lat);
  CHECK(g.entries.at(0, 0) == 2);
  CHECK(g.entries.at(0, 1) == 1);
  CHECK(g.entries.at(1, 1) == 3);
  CHECK(g.det == 5);

  DualBasis d = dual_basis(lat);
  CHECK(d.elements[0].coords() == std::vector<Rat>{Rat(3, 5), Rat(-1, 5)});
  CHECK(d.elements[1].coords() == std::vector<Rat>{Rat(-1, 5), Rat(2, 5)});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK((lat.basis[i] * d.elements[j]).trace() == (i == j ? 1 : 0));

  CHECK(dual_membership(d.elements[1], lat));
  CHECK(!dual_membership(d.elements[1].scaled(Rat(1, 2)), lat));
}

TEST_CASE("cubic Gram determinant and dual") {
  ModuleLattice lat = power_basis_lattice(cbrt2());
  GramMatrix g = gram(lat);
  CHECK(g.det == -108);
  CHECK(g.entries.at(0, 0) == 3);
  CHECK(g.entries.at(1, 1) == 0);
  CHECK(g.entries.at(1, 2) == 6);
  DualBasis d = dual_basis(lat);
  CHECK(d.elements[1].coords() == std::vector<Rat>{Rat(0), Rat(0), Rat(1, 6)});
}

TEST_CASE("Gram determinant is a unimodular invariant (randomized)") {
  FieldPtr f = field_new({-1, -2, 1, 1}, Rat(1), Rat(2));
  ModuleLattice lat = power_basis_lattice(f);
  Rat det0 = gram(lat).det;
  std::mt19937_64 rng(987654);
  std::uniform_int_distribution<long> small(-3, 3);
  for (int it = 0; it < 20; ++it) {
    // random elementary row operations keep the lattice
    // the first basis element must stay 1, so only mix the other rows
    std::vector<FieldElement> b = lat.basis;
    for (int step = 0; step < 4; ++step) {
      int i = 1 + (int)(rng() % 2), j = (int)(rng() % 3);
      if (i == j) continue;
      b[i] = b[i] + b[j].scaled(Rat(small(rng)));
    }
    CHECK(gram(make_lattice(f, b)).det == det0);
  }
}

TEST_CASE("dual of the dual is the original lattice") {
  for (const auto& mk : {golden(), cbrt2()}) {
    ModuleLattice lat = power_basis_lattice(mk);
    int n = mk->degree();
    GramMatrix g = gram(lat);
    DualBasis d = dual_basis(lat);
    // Gram of the dual is A^{-1}, and A applied to the dual recovers the basis
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK((d.elements[i] * d.elements[j]).trace() == d.inverse_gram.at(i, j));
    for (int i = 0; i < n; ++i) {
      FieldElement back = FieldElement::zero(mk);
      for (int j = 0; j < n; ++j) back = back + d.elements[j].scaled(g.entries.at(i, j));
      CHECK(back == lat.basis[i]);
    }
  }
}

TEST_CASE("embedding matrix inverse-transpose columns are the embedded duals") {
  ModuleLattice lat = power_basis_lattice(cbrt2());
  DualBasis d = dual_basis(lat);
  BallMatrix bit = ball_mat_transpose(ball_mat_inverse(b_matrix(lat, 128)));
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(bit[0][j].mid_double() - d.elements[j].embed_real(0, 128).mid_double()) <
          1e-20);
    CBall z = d.elements[j].embed_complex(0, 128);
    CHECK(std::abs(bit[1][j].mid_double() - z.re().mid_double()) < 1e-20);
    CHECK(std::abs(bit[2][j].mid_double() - z.im().mid_double()) < 1e-20);
  }
}

TEST_CASE("golden embedding dual column hits +-1/sqrt(5)") {
  ModuleLattice lat = power_basis_lattice(golden());
  BallMatrix bit = ball_mat_transpose(ball_mat_inverse(b_matrix(lat, 64)));
  CHECK(std::abs(bit[0][1].mid_double() - 0.4472135955) < 1e-9);
  CHECK(std::abs(bit[1][1].mid_double() + 0.4472135955) < 1e-9);
}

TEST_CASE("multiplier rings: full orders and the Z + 2sqrt5 Z suborder") {
  FieldPtr f = golden();
  ModuleLattice lat = power_basis_lattice(f);
  MultiplierRingBasis r = multiplier_ring(lat);
  CHECK(r.index == 1);
  for (const auto& e : r.basis) CHECK(dual_stability_check(e, lat));

  // 2 sqrt5 = 4 phi - 2; the stabilizer of Z + 2 sqrt5 Z is the order itself
  ModuleLattice sub =
      make_lattice(f, {FieldElement::one(f), FieldElement(f, {Rat(-2), Rat(4)})});
  MultiplierRingBasis sr = multiplier_ring(sub);
  CHECK(sr.index == 1);
  for (const auto& e : sr.basis) CHECK(dual_stability_check(e, sub));

  ModuleLattice clat = power_basis_lattice(cbrt2());
  MultiplierRingBasis cr = multiplier_ring(clat);
  CHECK(cr.index == 1);
  for (const auto& e : cr.basis) CHECK(dual_stability_check(e, clat));
}

TEST_CASE("point enumeration in a small ball") {
  ModuleLattice lat = power_basis_lattice(golden());
  DualBasis d = dual_basis(lat);
  auto pts = enumerate_points(d.elements, Rat(1, 2), 64);
  CHECK(pts.size() == 3);  // 0 and +-alpha_1*
  int zeros = 0;
  for (const auto& p : pts)
    if (p.is_zero()) ++zeros;
  CHECK(zeros == 1);
}

TEST_CASE("enumeration radius monotonicity") {
  ModuleLattice lat = power_basis_lattice(cbrt2());
  DualBasis d = dual_basis(lat);
  size_t prev = 0;
  for (long num : {1, 2, 4, 8}) {
    auto pts = enumerate_points(d.elements, Rat(num, 5), 64);
    CHECK(pts.size() >= std::max<size_t>(prev, 1));
    prev = pts.size();
  }
}

TEST_CASE("norm spectrum of the cbrt(2) dual with the missing level 7") {
  DualBasis d = dual_basis(power_basis_lattice(cbrt2()));
  NormSpectrum ns = norm_spectrum(d.elements, 10, 8);
  CHECK(ns.min_abs_norm == Rat(1, 108));
  for (long k = 1; k <= 6; ++k) CHECK(level_attained(ns, k));
  CHECK(!level_attained(ns, 7));
  CHECK(level_attained(ns, 8));
  // witnesses really achieve their stated norms
  for (const NormLevel& nl : ns.levels) {
    FieldElement e = FieldElement::zero(d.elements[0].field());
    for (size_t k = 0; k < nl.witness.size(); ++k)
      e = e + d.elements[k].scaled(Rat(nl.witness[k]));
    CHECK(e.norm() == nl.signed_norm);
    CHECK(abs(nl.signed_norm) == nl.level * ns.min_abs_norm);
  }
}

TEST_CASE("inert prime certificate") {
  FieldPtr c = cbrt2();
  CHECK(inert_prime_certificate(c, 7));
  CHECK(!inert_prime_certificate(c, 5));  // 5 splits: 3^3 = 27 = 2 mod 5
}
