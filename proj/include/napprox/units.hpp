#ifndef NAPPROX_UNITS_HPP
#define NAPPROX_UNITS_HPP

// Logarithmic embedding, fundamental units of multiplier rings (degree 2
// and 3), the kappa covering bound, dominant units, and sign/region
// classification.

#include <algorithm>
#include <cmath>
#include <vector>

#include "napprox/ball.hpp"
#include "napprox/field.hpp"
#include "napprox/lattice.hpp"
#include "napprox/rational.hpp"

namespace napprox {

// ---- logarithmic embedding ----

// (log|sigma_0(x)|, ..., log|sigma_{r+s}(x)|), complex pairs once
struct LogVector {
  std::vector<Ball> v;
};

inline LogVector log_embedding(const FieldElement& x, long prec) {
  if (x.is_zero()) throw DivisionByZero("log embedding of zero");
  Signature sig = x.field()->signature();
  for (long p = std::max<long>(prec, 32); p <= kPrecCap; p *= 2) {
    LogVector lv;
    bool ok = true;
    for (int i = 0; i < sig.r_plus_1 && ok; ++i) {
      Ball a = ball_ops::abs(x.embed_real(i, p));
      if (a.contains_zero()) {
        ok = false;
        break;
      }
      lv.v.push_back(ball_ops::log(a));
    }
    for (int i = 0; i < sig.s && ok; ++i) {
      Ball a2 = x.embed_complex(i, p).abs2();
      if (a2.contains_zero()) {
        ok = false;
        break;
      }
      Ball half = Ball::from_rat(Rat(1, 2), a2.prec());
      lv.v.push_back(half * ball_ops::log(a2));
    }
    if (ok) return lv;
  }
  throw PrecisionExhausted("log_embedding");
}

inline std::vector<double> log_vector_mid(const LogVector& lv) {
  std::vector<double> out;
  for (const Ball& b : lv.v) out.push_back(b.mid_double());
  return out;
}

inline double log_vector_supnorm_hi(const LogVector& lv) {
  double m = 0;
  for (const Ball& b : lv.v) m = std::max(m, std::max(std::abs(b.lo_double()), std::abs(b.hi_double())));
  return m;
}

// ---- unit group ----

struct UnitGroup {
  FieldPtr field;
  std::vector<FieldElement> ring_basis;        // Z-basis of the multiplier ring
  std::vector<FieldElement> fundamental_units;  // rank r+s, each sigma_0 > 1
  Ball regulator;
  long certification_cap = 0;  // coordinate bound of the fundamentality search
};

struct KappaBound {
  double kappa = 0;  // > 1, upper bound for the covering constant
};

inline bool in_ring(const FieldElement& x, const std::vector<FieldElement>& ring_basis) {
  for (const Rat& c : coords_in_basis(x, ring_basis))
    if (!is_integer(c)) return false;
  return true;
}

inline bool is_unit_of(const FieldElement& x, const std::vector<FieldElement>& ring_basis) {
  return in_ring(x, ring_basis) && abs(x.norm()) == 1;
}

namespace detail {

// normalize a unit so that sigma_0(u) > 1
inline FieldElement normalize_unit(FieldElement u) {
  for (long p = 64; p <= kPrecCap; p *= 2) {
    Ball s0 = u.embed_real(0, p);
    int sg = s0.sign();
    if (sg == 0) continue;
    if (sg < 0) {
      u = -u;
      s0 = -s0;
    }
    if (s0.certainly_gt(Ball::exact_int(1, s0.prec()))) return u;
    if (s0.certainly_lt(Ball::exact_int(1, s0.prec()))) return normalize_unit(u.inverse());
    // |sigma_0(u)| could equal 1 only for torsion; keep doubling otherwise
  }
  throw PrecisionExhausted("normalize_unit");
}

// fundamental unit of a real quadratic order Z + Z*omega via the exact
// continued fraction of the larger root of omega's minimal relation
inline FieldElement quadratic_fundamental_unit(const FieldPtr& field,
                                               const FieldElement& omega) {
  Int t = to_integer(omega.trace());
  Int nm = to_integer(omega.norm());
  Int d0 = t * t - 4 * nm;  // positive nonsquare for a real quadratic order
  Int s = isqrt(d0);
  if (s * s == d0) throw Error("quadratic order discriminant is a square");

  // surd continued fraction of (t + sqrt(d0)) / 2
  Int pk = t, qk = 2;
  if ((d0 - pk * pk) % qk != 0) {
    pk *= 2;
    d0 *= 4;
    qk *= 2;
    s = isqrt(d0);
  }
  Int h1 = 1, h0 = 0;  // numerator convergents
  Int k1 = 0, k0 = 1;  // denominator convergents
  for (int iter = 0; iter < 100000; ++iter) {
    Int a = qk > 0 ? floor_div(pk + s, qk) : floor_div(pk + s + 1, qk);
    Int h = a * h1 + h0, k = a * k1 + k0;
    h0 = h1;
    h1 = h;
    k0 = k1;
    k1 = k;
    if (k > 0) {
      // candidates h - k*conj(omega) for either labeling of the roots
      FieldElement c1 = FieldElement::from_rat(field, Rat(h - k * t)) + omega.scaled(Rat(k));
      FieldElement c2 = FieldElement::from_rat(field, Rat(h)) - omega.scaled(Rat(k));
      for (const FieldElement& cand : {c1, c2})
        if (abs(cand.norm()) == 1) return normalize_unit(cand);
    }
    pk = a * qk - pk;
    qk = (d0 - pk * pk) / qk;
  }
  throw SearchExhausted("continued fraction found no unit");
}

// all units (|N| = 1, != +-1) with ring coordinates in [-box, box]
inline std::vector<FieldElement> units_in_box(const std::vector<FieldElement>& ring_basis,
                                              long box) {
  int n = (int)ring_basis.size();
  const FieldPtr& field = ring_basis[0].field();
  std::vector<FieldElement> out;
  std::vector<long> c(n, -box);
  while (true) {
    FieldElement e = FieldElement::zero(field);
    for (int k = 0; k < n; ++k)
      if (c[k] != 0) e = e + ring_basis[k].scaled(Rat(c[k]));
    if (!e.is_zero() && abs(e.norm()) == 1) {
      bool torsion = e == FieldElement::one(field) || e == -FieldElement::one(field);
      if (!torsion) out.push_back(e);
    }
    int k = 0;
    while (k < n && c[k] == box) c[k++] = -box;
    if (k == n) break;
    ++c[k];
  }
  return out;
}

// exact check u == u1^a * u2^b for doubles-estimated exponents
inline bool matches_power(const FieldElement& u, const std::vector<FieldElement>& gens,
                          const std::vector<long>& e) {
  FieldElement w = FieldElement::one(u.field());
  for (size_t i = 0; i < gens.size(); ++i) w = w * gens[i].pow(e[i]);
  return u == w || u == -w;
}

}  // namespace detail

// Fundamental units of the multiplier ring. Quadratic real: continued
// fractions. Cubic: growing coordinate-box search for norm +-1 elements,
// then greedy reduction of the log-lattice; every found unit must re-expand
// exactly as a power product of the claimed generators.
inline UnitGroup fundamental_units(const MultiplierRingBasis& ring,
                                   long certification_cap = 20) {
  const FieldPtr& field = ring.basis[0].field();
  Signature sig = field->signature();
  int rank = sig.r_plus_1 - 1 + sig.s;
  UnitGroup ug;
  ug.field = field;
  ug.ring_basis = ring.basis;
  ug.certification_cap = certification_cap;

  if (field->degree() == 2) {
    if (sig.s != 0) throw ConfigError("imaginary quadratic fields have no unit rank");
    ug.fundamental_units.push_back(
        detail::quadratic_fundamental_unit(field, ring.basis[1]));
  } else {
    std::vector<FieldElement> found;
    for (long box = 2; box <= 32 && (long)found.size() < (rank == 1 ? 1 : 6); box *= 2)
      found = detail::units_in_box(ring.basis, box);
    if (found.empty()) throw SearchExhausted("no cubic units within the search box");

    // full log vectors for geometry; leading entries for exponent solves
    auto logs = [&](const FieldElement& u) { return log_vector_mid(log_embedding(u, 64)); };
    auto nrm2 = [](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x * x;
      return s;
    };
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
      double s = 0;
      for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
      return s;
    };

    std::vector<std::pair<std::vector<double>, FieldElement>> cand;
    for (const FieldElement& u : found) cand.emplace_back(logs(u), u);
    std::sort(cand.begin(), cand.end(), [&](const auto& a, const auto& b) {
      return nrm2(a.first) < nrm2(b.first);
    });

    FieldElement u1 = detail::normalize_unit(cand.front().second);
    std::vector<FieldElement> gens{u1};
    if (rank == 2) {
      std::vector<double> l1 = logs(u1);
      double best = 0;
      FieldElement u2;
      for (const auto& [lv, u] : cand) {
        // reduce against u1 and keep the shortest independent residual
        long r = (long)std::lround(dot(lv, l1) / nrm2(l1));
        std::vector<double> res(lv);
        for (size_t k = 0; k < res.size(); ++k) res[k] -= r * l1[k];
        double n2 = nrm2(res);
        if (n2 < 1e-12) continue;  // dependent
        if (u2.field() == nullptr || n2 < best) {
          best = n2;
          u2 = detail::normalize_unit(u * u1.pow(-r));
        }
      }
      if (u2.field() == nullptr) throw SearchExhausted("unit rank 2 not reached");
      // Gauss reduction of the pair
      for (int round = 0; round < 64; ++round) {
        std::vector<double> a = logs(u1), b = logs(u2);
        if (nrm2(b) < nrm2(a)) {
          std::swap(u1, u2);
          std::swap(a, b);
        }
        long r = (long)std::lround(dot(a, b) / nrm2(a));
        if (r == 0) break;
        u2 = detail::normalize_unit(u2 * u1.pow(-r));
      }
      gens = {u1, u2};
    }

    // every unit found must be a power product of the generators
    for (const FieldElement& u : found) {
      std::vector<double> lu = logs(u);
      std::vector<long> e(rank, 0);
      if (rank == 1) {
        double l1 = logs(gens[0])[0];
        e[0] = (long)std::lround(lu[0] / l1);
      } else {
        std::vector<double> a = logs(gens[0]), b = logs(gens[1]);
        double det = a[0] * b[1] - a[1] * b[0];
        e[0] = (long)std::lround((lu[0] * b[1] - lu[1] * b[0]) / det);
        e[1] = (long)std::lround((a[0] * lu[1] - a[1] * lu[0]) / det);
      }
      if (!detail::matches_power(u, gens, e))
        throw SearchExhausted("box unit escapes the claimed fundamental system");
    }
    ug.fundamental_units = gens;
  }

  // regulator: |det| of the leading rank x rank log minor
  {
    long p = 128;
    if (rank == 1) {
      ug.regulator = ball_ops::abs(log_embedding(ug.fundamental_units[0], p).v[0]);
    } else {
      LogVector l1 = log_embedding(ug.fundamental_units[0], p);
      LogVector l2 = log_embedding(ug.fundamental_units[1], p);
      ug.regulator = ball_ops::abs(l1.v[0] * l2.v[1] - l1.v[1] * l2.v[0]);
    }
  }

  // height-capped fundamentality check: no unit strictly inside the
  // fundamental parallelepiped of the claimed log-lattice basis
  {
    long box = std::min<long>(certification_cap, 20);
    for (const FieldElement& u : detail::units_in_box(ring.basis, box)) {
      std::vector<double> lu = log_vector_mid(log_embedding(u, 64));
      std::vector<double> frac;
      if (rank == 1) {
        double l1 = log_vector_mid(log_embedding(ug.fundamental_units[0], 64))[0];
        frac = {lu[0] / l1};
      } else {
        std::vector<double> a = log_vector_mid(log_embedding(ug.fundamental_units[0], 64));
        std::vector<double> b = log_vector_mid(log_embedding(ug.fundamental_units[1], 64));
        double det = a[0] * b[1] - a[1] * b[0];
        frac = {(lu[0] * b[1] - lu[1] * b[0]) / det,
                (a[0] * lu[1] - a[1] * lu[0]) / det};
      }
      for (double f : frac)
        if (std::abs(f - std::lround(f)) > 1e-6)
          throw SearchExhausted("claimed units are not fundamental (interior point)");
    }
  }
  return ug;
}

// user-supplied units: verified for norm +-1 and ring membership, trusted
// for fundamentality
inline UnitGroup unit_group_from(const MultiplierRingBasis& ring,
                                 const std::vector<FieldElement>& units) {
  const FieldPtr& field = ring.basis[0].field();
  Signature sig = field->signature();
  int rank = sig.r_plus_1 - 1 + sig.s;
  if ((int)units.size() != rank) throw ConfigError("unit count must equal r+s");
  UnitGroup ug;
  ug.field = field;
  ug.ring_basis = ring.basis;
  for (const FieldElement& u : units) {
    if (!is_unit_of(u, ring.basis)) throw ConfigError("supplied element is not a ring unit");
    ug.fundamental_units.push_back(detail::normalize_unit(u));
  }
  long p = 128;
  if (rank == 1) {
    ug.regulator = ball_ops::abs(log_embedding(ug.fundamental_units[0], p).v[0]);
  } else {
    LogVector l1 = log_embedding(ug.fundamental_units[0], p);
    LogVector l2 = log_embedding(ug.fundamental_units[1], p);
    ug.regulator = ball_ops::abs(l1.v[0] * l2.v[1] - l1.v[1] * l2.v[0]);
  }
  ug.certification_cap = 0;
  return ug;
}

// Upper bound for the covering constant: every cube of side log(kappa)
// centered on the unit hyperplane contains a log-unit. The sum of the
// basis-vector sup-norms bounds the covering radius of the log-lattice.
inline KappaBound kappa(const UnitGroup& units) {
  double s = 0;
  for (const FieldElement& u : units.fundamental_units)
    s += log_vector_supnorm_hi(log_embedding(u, 64));
  return {std::exp(s)};
}

// ---- dominant units ----

namespace detail {

inline std::vector<long> dominant_exponents(const UnitGroup& units, double t) {
  const Signature sig = units.field->signature();
  int rank = (int)units.fundamental_units.size();
  int dim = sig.r_plus_1 + sig.s;  // log coordinates
  int d = units.field->degree() - 1;
  double lt = std::log(std::max(t, 1.0));
  std::vector<double> target(dim, -lt / d);
  target[0] = lt;

  std::vector<std::vector<double>> gl;
  for (const FieldElement& u : units.fundamental_units)
    gl.push_back(log_vector_mid(log_embedding(u, 64)));

  // least-squares center, then a local sweep for the sup-distance minimizer
  std::vector<double> center(rank, 0);
  {
    // normal equations G a = r
    double g[2][2] = {{0, 0}, {0, 0}}, rhs[2] = {0, 0};
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        for (int k = 0; k < dim; ++k) g[i][j] += gl[i][k] * gl[j][k];
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < dim; ++k) rhs[i] += gl[i][k] * target[k];
    if (rank == 1) {
      center[0] = rhs[0] / g[0][0];
    } else {
      double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
      center[0] = (rhs[0] * g[1][1] - rhs[1] * g[0][1]) / det;
      center[1] = (g[0][0] * rhs[1] - g[1][0] * rhs[0]) / det;
    }
  }

  std::vector<long> best(rank, 0);
  double best_dist = -1;
  std::vector<long> e(rank);
  const long W = 3;
  std::vector<long> off(rank, -W);
  while (true) {
    for (int i = 0; i < rank; ++i) e[i] = (long)std::lround(center[i]) + off[i];
    double dist = 0;
    for (int k = 0; k < dim; ++k) {
      double v = 0;
      for (int i = 0; i < rank; ++i) v += e[i] * gl[i][k];
      dist = std::max(dist, std::abs(v - target[k]));
    }
    if (best_dist < 0 || dist < best_dist - 1e-12 ||
        (dist < best_dist + 1e-12 && e < best)) {
      best_dist = dist;
      best = e;
    }
    int k = 0;
    while (k < rank && off[k] == W) off[k++] = -W;
    if (k == rank) break;
    ++off[k];
  }
  return best;
}

}  // namespace detail

// The unit whose log vector minimizes the sup-distance to
// (log t, -(log t)/d, ..., -(log t)/d); sign chosen with sigma_0 > 0.
inline FieldElement dominant_unit(const UnitGroup& units, double t) {
  std::vector<long> e = detail::dominant_exponents(units, t);
  FieldElement u = FieldElement::one(units.field);
  for (size_t i = 0; i < units.fundamental_units.size(); ++i)
    u = u * units.fundamental_units[i].pow(e[i]);
  return u;
}

// dominant units with strictly increasing sigma_0
inline std::vector<FieldElement> dominant_stream(const UnitGroup& units, double t0,
                                                 int count) {
  std::vector<FieldElement> out;
  double kap = kappa(units).kappa;
  double grow = std::max(kap, 1.0 + 1e-6);
  double t = std::max(t0, 1.0);
  double last = -1;
  for (int iter = 0; (int)out.size() < count && iter < 100 * count + 100; ++iter) {
    FieldElement u = dominant_unit(units, t);
    double s0 = u.embed_real(0, 64).mid_double();
    if (out.empty() || s0 > last + 1e-12 * (1 + std::abs(last))) {
      out.push_back(u);
      last = s0;
    }
    t *= grow;
  }
  if ((int)out.size() < count) throw SearchExhausted("dominant stream stalled");
  return out;
}

// certified signs of the real embeddings
inline std::vector<int> sign_pattern(const FieldElement& u) {
  Signature sig = u.field()->signature();
  std::vector<int> out;
  for (int i = 0; i < sig.r_plus_1; ++i) {
    int s = 0;
    for (long p = 64; p <= kPrecCap && s == 0; p *= 2) s = u.embed_real(i, p).sign();
    if (s == 0) throw PrecisionExhausted("sign_pattern");
    out.push_back(s);
  }
  return out;
}

// All u = u1^{2a1} u2^{2a2} > 1 with c1 < sigma_1(u)/sigma_2(u) < c2 and
// log sigma_0(u) <= x0_max, for a totally real cubic. Sorted by sigma_0.
inline std::vector<FieldElement> units_in_region(const UnitGroup& units, const Rat& c1,
                                                 const Rat& c2, double x0_max) {
  if (units.field->signature().r_plus_1 != 3)
    throw ConfigError("units_in_region needs a totally real cubic");
  if (!(0 < c1 && c1 < c2)) throw ConfigError("need 0 < c1 < c2");

  std::vector<std::vector<double>> gl;
  for (const FieldElement& u : units.fundamental_units)
    gl.push_back(log_vector_mid(log_embedding(u, 64)));
  // coordinates (x0, x1 - x2) of 2*a1*l1 + 2*a2*l2
  double m00 = 2 * gl[0][0], m01 = 2 * gl[1][0];
  double m10 = 2 * (gl[0][1] - gl[0][2]), m11 = 2 * (gl[1][1] - gl[1][2]);
  double det = m00 * m11 - m01 * m10;
  double lc = std::max(std::abs(std::log(mpq_get_d(c1.get_mpq_t()))),
                       std::abs(std::log(mpq_get_d(c2.get_mpq_t()))));
  double bx = std::abs(x0_max) + 1, by = lc + 1;
  long a1b = (long)std::ceil((std::abs(m11) * bx + std::abs(m01) * by) / std::abs(det)) + 2;
  long a2b = (long)std::ceil((std::abs(m10) * bx + std::abs(m00) * by) / std::abs(det)) + 2;

  std::vector<std::pair<double, FieldElement>> hits;
  for (long a1 = -a1b; a1 <= a1b; ++a1)
    for (long a2 = -a2b; a2 <= a2b; ++a2) {
      if (a1 == 0 && a2 == 0) continue;
      double x0 = a1 * m00 + a2 * m01;
      if (x0 <= 1e-12 || x0 > x0_max + 1e-9) continue;
      FieldElement u =
          units.fundamental_units[0].pow(2 * a1) * units.fundamental_units[1].pow(2 * a2);
      // certified filters
      long p = 96;
      Ball s0 = u.embed_real(0, p);
      if (!s0.certainly_gt(Ball::exact_int(1, s0.prec()))) continue;
      Ball ls0 = ball_ops::log(s0);
      if (!(ls0.hi_double() <= x0_max)) continue;
      Ball ratio = u.embed_real(1, p) / u.embed_real(2, p);
      if (!(ratio.certainly_gt_rat(c1) && ratio.certainly_lt_rat(c2))) continue;
      hits.emplace_back(s0.mid_double(), u);
    }
  std::sort(hits.begin(), hits.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FieldElement> out;
  for (auto& [s0, u] : hits) out.push_back(std::move(u));
  return out;
}

}  // namespace napprox

#endif
