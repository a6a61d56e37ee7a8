// Acceptance gate: one line per criterion, PASS/FAIL, with pinned tolerances.
// Usage: acceptance <cli-binary> <jobs-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "napprox/napprox.hpp"

using namespace napprox;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int n, bool pass, const std::string& what, double secs) {
  std::printf("criterion %d: %s  %s  (%.2fs)\n", n, pass ? "PASS" : "FAIL", what.c_str(),
              secs);
  if (!pass) ++g_failures;
}

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. algebraic enumeration == brute-force oracle at q_max = 1e5, per-field < 60 s
void criterion1() {
  struct Case {
    const char* name;
    std::vector<Int> poly;
    Rat lo, hi, c;
  };
  std::vector<Case> cases = {
      {"golden", {-1, -1, 1}, Rat(1), Rat(2), Rat(1)},
      {"sqrt2", {-2, 0, 1}, Rat(1), Rat(2), Rat(1)},
      {"x^3-2", {-2, 0, 0, 1}, Rat(1), Rat(2), Rat(3)},
      {"x^3+x^2-2x-1", {-1, -2, 1, 1}, Rat(1), Rat(2), Rat(3)},
  };
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const Case& cs : cases) {
    auto tf = Clock::now();
    FieldPtr f = field_new(cs.poly, cs.lo, cs.hi);
    ModuleLattice lat = power_basis_lattice(f);
    UnitGroup units = fundamental_units(multiplier_ring(lat));
    ApproxWindow w{cs.c, 100000};
    auto oracle = oracle_scan(lat, w);
    auto alg = enumerate_algebraic(lat, units, w);
    double dt = secs_since(tf);
    bool eq = same_qp_sets(oracle, alg) && !oracle.empty();
    ok = ok && eq && dt < 60.0;
    detail += std::string(cs.name) + "=" + (eq ? "eq" : "DIFF") + " ";
  }
  report(1, ok, "oracle equivalence at q_max=1e5: " + detail, secs_since(t0));
}

// 2. golden minimum accumulation point is 5^{-1/2}; convergents 20..30 of phi
//    give q|q phi - p| within 1e-6 of 0.447213595
void criterion2() {
  auto t0 = Clock::now();
  FieldPtr f = field_new({-1, -1, 1}, Rat(1), Rat(2));
  ModuleLattice lat = power_basis_lattice(f);
  QuadAccumulation acc = accumulation_set_quadratic(lat, 10);

  long prec = 256;
  Ball inv_sqrt5 =
      Ball::exact_int(1, prec) / ball_ops::sqrt(Ball::exact_int(5, prec));
  // closed form: sqrt(factor_sq) * min |N(s)| reproduces 1/sqrt 5 to full precision
  Ball closed_form = ball_ops::sqrt(Ball::from_rat(acc.factor_sq, prec)) *
                     Ball::from_rat(acc.spectrum.min_abs_norm, prec);
  Ball diff = closed_form - inv_sqrt5;
  bool exact_side = diff.contains_rat(Rat(0)) && diff.rad_double() < 1e-60;

  double minmag = 1e9;
  for (const auto& [n, b] : acc.points) minmag = std::min(minmag, std::abs(b.mid_double()));
  bool min_ok = std::abs(minmag - 0.4472135954999579) < 1e-12;

  // oracle side: Fibonacci convergents p/q = F_{n+1}/F_n, n = 20..30
  Ball phi = FieldElement::generator(f).embed_real(0, prec);
  Int a = 1, b = 1;  // F_1, F_2
  bool conv_ok = true;
  for (int n = 2; n <= 30; ++n) {
    Int c = a + b;
    a = b;
    b = c;  // now a = F_n, b = F_{n+1}
    if (n < 20) continue;
    Ball v = ball_ops::abs(Ball::from_int(a, prec) *
                           (Ball::from_int(a, prec) * phi - Ball::from_int(b, prec)));
    if (std::abs(v.mid_double() - 0.447213595) > 1e-6) conv_ok = false;
  }
  report(2, exact_side && min_ok && conv_ok,
         "golden accumulation minimum = 5^{-1/2}, convergents 20..30 within 1e-6",
         secs_since(t0));
}

// 3. Z[2^{1/3}] dual: levels 1..6 attained, 7 missing up to cap 8, inert certificate
void criterion3() {
  auto t0 = Clock::now();
  FieldPtr f = field_new({-2, 0, 0, 1}, Rat(1), Rat(2));
  DualBasis dual = dual_basis(power_basis_lattice(f));
  NormSpectrum ns = norm_spectrum(dual.elements, 10, 8);
  bool ok = ns.min_abs_norm == Rat(1, 108);
  for (long k = 1; k <= 6; ++k) ok = ok && level_attained(ns, k);
  ok = ok && !level_attained(ns, 7);
  // witnesses really achieve the stated norms
  for (const NormLevel& nl : ns.levels) {
    FieldElement e = FieldElement::zero(f);
    for (size_t k = 0; k < nl.witness.size(); ++k)
      e = e + dual.elements[k].scaled(Rat(nl.witness[k]));
    ok = ok && e.norm() == nl.signed_norm;
  }
  ok = ok && inert_prime_certificate(f, 7);
  double dt = secs_since(t0);
  report(3, ok && dt < 10.0, "levels 1..6 attained, 7 missing (cap 8), 7 inert", dt);
}

// 4. x^3-2, s = alpha_0*: 15 dominant rows, certified nonzero gamma error
//    decreasing below 1e-6, beta on the unit circle within ball error
void criterion4() {
  auto t0 = Clock::now();
  FieldPtr f = field_new({-2, 0, 0, 1}, Rat(1), Rat(2));
  ModuleLattice lat = power_basis_lattice(f);
  UnitGroup units = fundamental_units(multiplier_ring(lat));
  FieldElement s = dual_basis(lat).elements[0];

  ConvergenceReport rep = convergence_report(s, lat, units, 15);
  bool ok = rep.rows.size() == 15 && rep.skipped_zero_q == 0;
  std::vector<double> errs;
  for (const auto& row : rep.rows) {
    ok = ok && row.gamma_err.sign() != 0;  // certified nonzero at every row
    errs.push_back(std::abs(row.gamma_err.mid_double()));
  }
  // decreasing with a 3-row window (the stream is not strictly monotone row
  // by row), ending below 1e-6
  for (size_t i = 3; i < errs.size(); ++i) ok = ok && errs[i] < errs[i - 3];
  ok = ok && errs.back() < 1e-6;

  for (const FieldElement& u : dominant_stream(units, 2.0, 15)) {
    GammaBeta gb = gamma_beta(s, u, lat, 128);
    Ball circ = gb.beta[0] * gb.beta[0] + gb.beta[1] * gb.beta[1] -
                Ball::exact_int(1, 128);
    ok = ok && circ.contains_rat(Rat(0));  // on the circle within ball error
  }
  double dt = secs_since(t0);
  report(4, ok && dt < 10.0,
         "15 rows, certified gamma error decreasing below 1e-6, beta on circle", dt);
}

// 5. x^3+x^2-2x-1: both sign classes at every attained level (cap 8);
//    x^3-19x+21: exactly one class per level and positive units are totally positive
void criterion5() {
  auto t0 = Clock::now();
  FieldPtr tf = field_new({-1, -2, 1, 1}, Rat(1), Rat(2));
  CurveFamily both = accumulation_curves_cubic(power_basis_lattice(tf), 8, 8);
  std::map<Rat, std::set<int>> cb;
  for (const auto& dl : both.dilations) cb[dl.level].insert(dl.sign_class);
  bool ok = !cb.empty();
  for (const auto& [lvl, cls] : cb) ok = ok && cls.size() == 2;

  FieldPtr t2 = field_new({21, -19, 0, 1}, Rat(1), Rat(13, 10));
  ModuleLattice l2 = power_basis_lattice(t2);
  CurveFamily one = accumulation_curves_cubic(l2, 8, 8);
  std::map<Rat, std::set<int>> c1;
  for (const auto& dl : one.dilations) c1[dl.level].insert(dl.sign_class);
  ok = ok && !c1.empty();
  for (const auto& [lvl, cls] : c1) ok = ok && cls.size() == 1;

  // every positive unit u1^a u2^b in the search window has all-positive conjugates
  UnitGroup u2 = fundamental_units(multiplier_ring(l2));
  ok = ok && u2.fundamental_units.size() == 2;
  if (u2.fundamental_units.size() == 2)
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) {
        FieldElement u =
            u2.fundamental_units[0].pow(a) * u2.fundamental_units[1].pow(b);
        for (int sgn : sign_pattern(u)) ok = ok && sgn == 1;
      }
  double dt = secs_since(t0);
  report(5, ok && dt < 120.0,
         "sign classes: two per level vs one per level; positive units totally positive",
         dt);
}

// 6. exact algebra identities on all four fields plus Z + 2 sqrt5 Z
void criterion6() {
  auto t0 = Clock::now();
  std::vector<ModuleLattice> lats;
  lats.push_back(power_basis_lattice(field_new({-1, -1, 1}, Rat(1), Rat(2))));
  lats.push_back(power_basis_lattice(field_new({-2, 0, 1}, Rat(1), Rat(2))));
  lats.push_back(power_basis_lattice(field_new({-2, 0, 0, 1}, Rat(1), Rat(2))));
  lats.push_back(power_basis_lattice(field_new({-1, -2, 1, 1}, Rat(1), Rat(2))));
  FieldPtr gf = lats[0].field;
  lats.push_back(
      make_lattice(gf, {FieldElement::one(gf), FieldElement(gf, {Rat(-2), Rat(4)})}));

  bool ok = true;
  for (const ModuleLattice& lat : lats) {
    int n = lat.field->degree();
    GramMatrix g = gram(lat);
    DualBasis d = dual_basis(lat);
    QMatrix prod = g.entries * d.inverse_gram;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ok = ok && prod.at(i, j) == (i == j ? 1 : 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        ok = ok && (lat.basis[i] * d.elements[j]).trace() == (i == j ? 1 : 0);

    MultiplierRingBasis ring = multiplier_ring(lat);
    // ring closure: products of basis elements stay in the ring, exactly
    for (const FieldElement& a : ring.basis)
      for (const FieldElement& b : ring.basis)
        for (const Rat& c : coords_in_basis(a * b, ring.basis)) ok = ok && is_integer(c);
    // gamma Lambda subset Lambda and gamma Lambda* subset Lambda*
    for (const FieldElement& gamma : ring.basis) {
      for (const FieldElement& bl : lat.basis)
        for (const Rat& c : coords_in_basis(gamma * bl, lat.basis)) ok = ok && is_integer(c);
      ok = ok && dual_stability_check(gamma, lat);
    }
  }
  double dt = secs_since(t0);
  report(6, ok && dt < 5.0, "exact Gram/dual/ring identities on 5 lattices", dt);
}

// 7. transference probes: zero violations, 100 samples each, d in {1,2}, Q = 1e3
void criterion7() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0, 1);
  long bad = 0;
  for (int d = 1; d <= 2; ++d)
    for (int i = 0; i < 100; ++i) {
      std::vector<double> alpha;
      for (int k = 0; k < d; ++k) alpha.push_back(unif(rng));
      if (!dispersion_probe(alpha, 1000).ok) ++bad;
      if (!linear_form_probe(alpha, 1000).ok) ++bad;
    }
  double dt = secs_since(t0);
  report(7, bad == 0 && dt < 60.0,
         "dispersion + linear form inequalities, 100 samples, d in {1,2}, Q=1e3", dt);
}

// 8. the checked-in plot jobs are byte-identical across runs (CSV and SVG)
void criterion8(const std::string& cli, const std::string& jobs_dir) {
  auto t0 = Clock::now();
  bool ok = true;
  for (const char* job : {"fig1-ellipse", "fig1-hyperbola"}) {
    for (int run = 1; run <= 2; ++run) {
      std::string cmd = cli + " plot --config " + jobs_dir + "/" + job +
                        ".json --out /tmp/acc-" + job + "-" + std::to_string(run) +
                        " > /dev/null 2>&1";
      ok = ok && std::system(cmd.c_str()) == 0;
    }
    for (const char* ext : {".csv", ".svg"}) {
      std::string a = slurp("/tmp/acc-" + std::string(job) + "-1" + ext);
      std::string b = slurp("/tmp/acc-" + std::string(job) + "-2" + ext);
      ok = ok && !a.empty() && a == b;
    }
  }
  report(8, ok, "Figure-1 jobs byte-identical across runs (CSV + SVG)", secs_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <jobs-dir>\n";
    return 2;
  }
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8(argv[1], argv[2]);
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 8 criteria PASS\n");
  return 0;
}
