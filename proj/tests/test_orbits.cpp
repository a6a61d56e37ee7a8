#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "napprox/orbits.hpp"

using namespace napprox;

namespace {

struct Setup {
  FieldPtr field;
  ModuleLattice lat;
  UnitGroup units;
  DualBasis dual;
};

Setup setup(const std::vector<Int>& poly, const Rat& lo, const Rat& hi) {
  Setup s;
  s.field = field_new(poly, lo, hi);
  s.lat = power_basis_lattice(s.field);
  s.units = fundamental_units(multiplier_ring(s.lat));
  s.dual = dual_basis(s.lat);
  return s;
}

}  // namespace

TEST_CASE("m_alpha for the golden ratio is sqrt 5") {
  Setup s = setup({-1, -1, 1}, Rat(1), Rat(2));
  MAlphaMatrix m = m_alpha(s.lat, 96);
  CHECK(std::abs(m.m[0][0].mid_double() - std::sqrt(5.0)) < 1e-20);
}

TEST_CASE("exact q/p recovery from dual elements and units") {
  Setup s = setup({-1, -1, 1}, Rat(1), Rat(2));
  auto [q0, p0] = recover_qp(s.dual.elements[1], FieldElement::one(s.field), s.lat);
  CHECK(q0 == 0);
  CHECK(p0[0] == 1);
  auto [q1, p1] = recover_qp(s.dual.elements[0], FieldElement::one(s.field), s.lat);
  CHECK(q1 == 1);
  CHECK(p1[0] == 0);
  // s = alpha_1*, u = phi^2 recovers the first convergent 2/1 of phi
  auto [q2, p2] = recover_qp(s.dual.elements[1], s.units.fundamental_units[0].pow(2), s.lat);
  CHECK(q2 == 1);
  CHECK(p2[0] == 2);
}

TEST_CASE("gamma tends to |N(s)| and beta to the unit point set (golden)") {
  Setup s = setup({-1, -1, 1}, Rat(1), Rat(2));
  GammaBeta gb =
      gamma_beta(s.dual.elements[1], s.units.fundamental_units[0].pow(12), s.lat, 128);
  CHECK(std::abs(gb.gamma.mid_double() - 0.2) < 1e-4);  // |N(alpha_1*)| = 1/5
  CHECK(std::abs(std::abs(gb.beta[0].mid_double()) - 1.0) < 1e-12);
  CHECK_THROWS_AS(gamma_beta(s.dual.elements[1], FieldElement::one(s.field), s.lat, 64),
                  ZeroQ);
}

TEST_CASE("golden oracle finds the Fibonacci convergents") {
  Setup s = setup({-1, -1, 1}, Rat(1), Rat(2));
  auto oracle = oracle_scan(s.lat, {Rat(1), 50});
  std::set<long> qs;
  for (const auto& na : oracle)
    if (na.q > 0) qs.insert((long)na.q.get_si());
  for (long fib : {1L, 2L, 3L, 5L, 8L, 13L, 21L, 34L}) CHECK(qs.count(fib) == 1);
}

TEST_CASE("oracle output is symmetric under negation and sorted") {
  Setup s = setup({-2, 0, 0, 1}, Rat(1), Rat(2));
  auto oracle = oracle_scan(s.lat, {Rat(3), 300});
  std::set<std::pair<long, std::vector<long>>> keys;
  for (const auto& na : oracle) {
    std::vector<long> p;
    for (const Int& x : na.p) p.push_back((long)x.get_si());
    keys.insert({(long)na.q.get_si(), p});
  }
  CHECK(keys.size() == oracle.size());  // no duplicates
  for (const auto& [q, p] : keys) {
    std::vector<long> np;
    for (long x : p) np.push_back(-x);
    CHECK(keys.count({-q, np}) == 1);
  }
  for (size_t i = 1; i < oracle.size(); ++i)
    CHECK(abs(oracle[i - 1].q) <= abs(oracle[i].q));
}

TEST_CASE("algebraic enumeration equals the oracle at moderate scale") {
  Setup g = setup({-1, -1, 1}, Rat(1), Rat(2));
  ApproxWindow w{Rat(1), 2000};
  CHECK(same_qp_sets(oracle_scan(g.lat, w), enumerate_algebraic(g.lat, g.units, w)));

  Setup c = setup({-2, 0, 0, 1}, Rat(1), Rat(2));
  ApproxWindow cw{Rat(3), 2000};
  CHECK(same_qp_sets(oracle_scan(c.lat, cw), enumerate_algebraic(c.lat, c.units, cw)));
}

TEST_CASE("q values of a fixed-C stream grow geometrically past a burn-in") {
  Setup g = setup({-1, -1, 1}, Rat(1), Rat(2));
  auto list = enumerate_algebraic(g.lat, g.units, {Rat(1, 2), 100000});
  std::vector<double> qs;
  for (const auto& na : list)
    if (na.q > 2) qs.push_back(na.q.get_d());
  REQUIRE(qs.size() >= 5);
  for (size_t i = 1; i < qs.size(); ++i) CHECK(qs[i] / qs[i - 1] > 1.2);
}

TEST_CASE("exploratory eta scan differs from the critical exponent") {
  Setup g = setup({-1, -1, 1}, Rat(1), Rat(2));
  auto critical = oracle_scan(g.lat, {Rat(1, 2), 200}, 96);
  auto same = oracle_scan(g.lat, {Rat(1, 2), 200}, 96, 1.0);  // 1/d = 1 here
  CHECK(same_qp_sets(critical, same));
  auto looser = oracle_scan(g.lat, {Rat(1, 2), 200}, 96, 0.5);
  CHECK(looser.size() > critical.size());
  auto stricter = oracle_scan(g.lat, {Rat(1, 2), 200}, 96, 1.5);
  CHECK(stricter.size() < critical.size());
}

TEST_CASE("quadratic accumulation set has minimum 1/sqrt 5") {
  Setup g = setup({-1, -1, 1}, Rat(1), Rat(2));
  QuadAccumulation acc = accumulation_set_quadratic(g.lat, 10);
  CHECK(acc.factor_sq == 5);
  CHECK(acc.spectrum.min_abs_norm == Rat(1, 5));
  double minmag = 1e9;
  for (const auto& [n, b] : acc.points) minmag = std::min(minmag, std::abs(b.mid_double()));
  CHECK(std::abs(minmag - 0.4472135954999579) < 1e-12);
}

TEST_CASE("ellipse dilation levels skip the inert level 7") {
  Setup c = setup({-2, 0, 0, 1}, Rat(1), Rat(2));
  CurveFamily fam = accumulation_curves_cubic(c.lat, 10, 8);
  CHECK(fam.kind == CurveKind::Ellipse);
  std::set<long> lv;
  for (const auto& dl : fam.dilations)
    if (is_integer(dl.level)) lv.insert((long)dl.level.get_num().get_si());
  for (long k = 1; k <= 6; ++k) CHECK(lv.count(k) == 1);
  CHECK(lv.count(7) == 0);
}

TEST_CASE("hyperbola sign classes split by field") {
  Setup t = setup({-1, -2, 1, 1}, Rat(1), Rat(2));
  CurveFamily tf = accumulation_curves_cubic(t.lat, 8, 8);
  CHECK(tf.kind == CurveKind::HyperbolaPair);
  std::map<Rat, std::set<int>> classes;
  for (const auto& dl : tf.dilations) classes[dl.level].insert(dl.sign_class);
  REQUIRE(!classes.empty());
  for (const auto& [lvl, cs] : classes) CHECK(cs.size() == 2);

  FieldPtr f2 = field_new({21, -19, 0, 1}, Rat(1), Rat(13, 10));
  CurveFamily t2 = accumulation_curves_cubic(power_basis_lattice(f2), 8, 8);
  std::map<Rat, std::set<int>> c2;
  for (const auto& dl : t2.dilations) c2[dl.level].insert(dl.sign_class);
  REQUIRE(!c2.empty());
  for (const auto& [lvl, cs] : c2) CHECK(cs.size() == 1);
}

TEST_CASE("convergence report: certified gamma errors shrink onto the curve") {
  Setup c = setup({-2, 0, 0, 1}, Rat(1), Rat(2));
  ConvergenceReport rep = convergence_report(c.dual.elements[0], c.lat, c.units, 10);
  REQUIRE(rep.rows.size() == 10);
  for (const auto& row : rep.rows) CHECK(row.gamma_err.sign() != 0);
  CHECK(std::abs(rep.rows.back().gamma_err.mid_double()) < 1e-4);
  // curve_dist is measured against a sampled polyline, so its floor is the
  // sampling resolution, not the certified error
  CHECK(rep.rows.back().curve_dist < 1e-3);
}

TEST_CASE("transference probes hold on random samples") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(0, 1);
  for (int i = 0; i < 10; ++i) {
    for (int d = 1; d <= 2; ++d) {
      std::vector<double> a;
      for (int k = 0; k < d; ++k) a.push_back(unif(rng));
      DispersionProbe dp = dispersion_probe(a, 500);
      CHECK(dp.ok);
      LinearFormProbe lp = linear_form_probe(a, 500);
      CHECK(lp.ok);
    }
  }
}
