#ifndef NAPPROX_ORBITS_HPP
#define NAPPROX_ORBITS_HPP

// Normalized Diophantine approximations to algebraic vectors: algebraic
// enumeration through the dual lattice and the unit orbit, an independent
// brute-force oracle, accumulation sets (points / ellipses / hyperbola
// pairs), convergence reports, and transference probes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "napprox/ball.hpp"
#include "napprox/field.hpp"
#include "napprox/lattice.hpp"
#include "napprox/rational.hpp"
#include "napprox/units.hpp"

namespace napprox {

// ---- domain types ----

struct ApproxWindow {
  Rat C;        // sup-norm bound on the normalized value
  long q_max = 0;
};

struct NormalizedApproximation {
  Int q;
  std::vector<Int> p;        // length d
  std::vector<Ball> value;   // |q|^(1/d) (q*alpha - p)
  bool has_provenance = false;
  FieldElement s;  // dual lattice element (when algebraic)
  FieldElement u;  // unit (when algebraic)
};

struct MAlphaMatrix {
  BallMatrix m;  // d x d, rows = conjugate coordinates, columns = j
};

enum class CurveKind { Ellipse, HyperbolaPair };

struct Dilation {
  Rat level;        // |N(s)| / min nonzero |N|
  Rat abs_norm;     // |N(s)|
  int sign_class;   // +1 / -1 for hyperbolas, 0 for ellipses
  std::vector<Int> witness;  // coordinates over the dual basis
};

struct CurveFamily {
  CurveKind kind;
  MAlphaMatrix m_alpha;
  std::vector<Dilation> dilations;
};

// ---- M(alpha), q/p recovery, gamma/beta ----

// Row i (conjugate coordinate), column j: real conjugates give
// alpha_j - sigma_i(alpha_j); a complex pair gives the rows
// 2 Re(w_j) and -2 Im(w_j) with w_j = alpha_j - sigma_c(alpha_j).
inline MAlphaMatrix m_alpha(const ModuleLattice& lat, long prec) {
  Signature sig = lat.field->signature();
  int r = sig.r_plus_1 - 1;
  int d = lat.field->degree() - 1;
  for (long p = std::max<long>(prec, 64); p <= kPrecCap; p *= 2) {
    BallMatrix m(d, std::vector<Ball>(d, Ball(mpfr_prec_t(p))));
    for (int j = 1; j <= d; ++j) {
      Ball a0 = lat.basis[j].embed_real(0, p);
      for (int i = 1; i <= r; ++i) m[i - 1][j - 1] = a0 - lat.basis[j].embed_real(i, p);
      for (int i = 0; i < sig.s; ++i) {
        CBall w = CBall::from_real(a0) - lat.basis[j].embed_complex(i, p);
        Ball two = Ball::exact_int(2, w.re().prec());
        m[r + 2 * i][j - 1] = two * w.re();
        m[r + 2 * i + 1][j - 1] = -(two * w.im());
      }
    }
    Ball det = d == 1 ? m[0][0] : m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det.sign() != 0) return {std::move(m)};
  }
  throw PrecisionExhausted("m_alpha determinant straddles zero");
}

// q = Tr(su), p_i = Tr(su alpha_i); exact, NonIntegerTrace when s is not dual
inline std::pair<Int, std::vector<Int>> recover_qp(const FieldElement& s,
                                                   const FieldElement& u,
                                                   const ModuleLattice& lat) {
  FieldElement su = s * u;
  Int q = to_integer(su.trace());
  std::vector<Int> p;
  for (int j = 1; j < lat.field->degree(); ++j)
    p.push_back(to_integer((su * lat.basis[j]).trace()));
  return {std::move(q), std::move(p)};
}

struct GammaBeta {
  Ball gamma;
  std::vector<Ball> beta;
};

// gamma_u = |q_u|^(1/d) |sigma_1(su) ... sigma_d(su)|^(1/d);
// beta = (sigma_1(su),...,sigma_r(su), Re z, Im z) / |sigma_1...sigma_d|^(1/d)
inline GammaBeta gamma_beta(const FieldElement& s, const FieldElement& u,
                            const ModuleLattice& lat, long prec) {
  auto [q, p] = recover_qp(s, u, lat);
  if (q == 0) throw ZeroQ("gamma_beta with Tr(su) = 0");
  Signature sig = lat.field->signature();
  int r = sig.r_plus_1 - 1;
  int d = lat.field->degree() - 1;
  FieldElement su = s * u;

  long pr = std::max<long>(prec, 64);
  std::vector<Ball> comps;  // conjugate coordinates of su
  Ball prod = Ball::exact_int(1, mpfr_prec_t(pr));
  for (int i = 1; i <= r; ++i) {
    Ball v = su.embed_real(i, pr);
    prod = prod * ball_ops::abs(v);
    comps.push_back(v);
  }
  for (int i = 0; i < sig.s; ++i) {
    CBall z = su.embed_complex(i, pr);
    prod = prod * z.abs2();
    comps.push_back(z.re());
    comps.push_back(z.im());
  }
  Ball qb = Ball::from_int(abs(q), mpfr_prec_t(pr));
  GammaBeta gb;
  Ball root = d == 1 ? prod : ball_ops::sqrt(prod);
  gb.gamma = d == 1 ? qb * prod : ball_ops::sqrt(qb) * root;
  for (Ball& c : comps) gb.beta.push_back(c / root);
  return gb;
}

// ---- certified value computation ----

namespace detail {

// |q|^(1/d) (q alpha_j - p_j) at working precision
inline std::vector<Ball> approx_value(const ModuleLattice& lat, const Int& q,
                                      const std::vector<Int>& p, long prec) {
  int d = lat.field->degree() - 1;
  std::vector<Ball> v;
  Ball qb = Ball::from_int(q, mpfr_prec_t(prec));
  Ball qroot = d == 1 ? ball_ops::abs(qb)
                      : ball_ops::sqrt(ball_ops::abs(qb));
  for (int j = 1; j <= d; ++j) {
    Ball a = lat.basis[j].embed_real(0, prec);
    v.push_back(qroot * (qb * a - Ball::from_int(p[j - 1], mpfr_prec_t(prec))));
  }
  return v;
}

// certified sup-norm test: 1 inside, -1 outside, 0 ambiguous
inline int value_within(const std::vector<Ball>& v, const Rat& c) {
  bool inside = true;
  for (const Ball& x : v) {
    Ball a = ball_ops::abs(x);
    if (a.certainly_gt_rat(c)) return -1;
    if (!a.certainly_le_rat(c)) inside = false;
  }
  return inside ? 1 : 0;
}

inline std::vector<Ball> certified_value_within(const ModuleLattice& lat, const Int& q,
                                                const std::vector<Int>& p, const Rat& c,
                                                long start_prec, bool& inside) {
  for (long pr = start_prec; pr <= kPrecCap; pr *= 2) {
    std::vector<Ball> v = approx_value(lat, q, p, pr);
    int w = value_within(v, c);
    if (w != 0) {
      inside = (w > 0);
      return v;
    }
  }
  throw PrecisionExhausted("window membership undecidable at q = " + q.get_str());
}

struct QPLess {
  bool operator()(const std::pair<Int, std::vector<Int>>& a,
                  const std::pair<Int, std::vector<Int>>& b) const {
    if (cmp(a.first, b.first) != 0) return a.first < b.first;
    return a.second < b.second;
  }
};

inline void sort_approximations(std::vector<NormalizedApproximation>& out) {
  std::sort(out.begin(), out.end(),
            [](const NormalizedApproximation& a, const NormalizedApproximation& b) {
              Int aa = abs(a.q), ab = abs(b.q);
              if (aa != ab) return aa < ab;
              if (a.q != b.q) return a.q < b.q;
              return a.p < b.p;
            });
}

// double-precision embedding data for the prefilter
struct EmbedDoubles {
  std::vector<double> reals;                // sigma_0..sigma_r
  std::vector<std::complex<double>> cplx;   // one per pair
};

inline EmbedDoubles embed_doubles(const FieldElement& x, long prec) {
  EmbedDoubles e;
  Signature sig = x.field()->signature();
  for (int i = 0; i < sig.r_plus_1; ++i) e.reals.push_back(x.embed_real(i, prec).mid_double());
  for (int i = 0; i < sig.s; ++i) {
    CBall z = x.embed_complex(i, prec);
    e.cplx.emplace_back(z.re().mid_double(), z.im().mid_double());
  }
  return e;
}

// trace of the product from double embeddings
inline double trace_from_doubles(const EmbedDoubles& a, const EmbedDoubles& b) {
  double t = 0;
  for (size_t i = 0; i < a.reals.size(); ++i) t += a.reals[i] * b.reals[i];
  for (size_t i = 0; i < a.cplx.size(); ++i) t += 2 * (a.cplx[i] * b.cplx[i]).real();
  return t;
}

// all units +-free (sigma_0 > 0) whose log vector satisfies
// log sigma_0 in [lo0, hi0] and log|sigma_i| <= conj_cap for i >= 1
inline std::vector<FieldElement> units_in_logbox(const UnitGroup& units, double lo0,
                                                 double hi0, double conj_cap) {
  int rank = (int)units.fundamental_units.size();
  Signature sig = units.field->signature();
  int dim = sig.r_plus_1 + sig.s;
  std::vector<std::vector<double>> gl;
  for (const FieldElement& u : units.fundamental_units)
    gl.push_back(log_vector_mid(log_embedding(u, 64)));

  std::vector<std::vector<long>> exps;
  if (rank == 1) {
    double l0 = gl[0][0];  // > 0 by normalization
    long a_lo = (long)std::floor(lo0 / l0) - 1;
    long a_hi = (long)std::ceil(hi0 / l0) + 1;
    for (long a = a_lo; a <= a_hi; ++a) exps.push_back({a});
  } else {
    // invert the 2x2 leading log minor on the corner rectangle
    // coordinates (x0, x1); x1 in [-hi0 - conj_cap - 1, conj_cap + 1]
    double x1lo = -hi0 - conj_cap - 1, x1hi = conj_cap + 1;
    double det = gl[0][0] * gl[1][1] - gl[0][1] * gl[1][0];
    long a1lo = 0, a1hi = 0, a2lo = 0, a2hi = 0;
    bool first = true;
    for (double x0 : {lo0 - 1, hi0 + 1})
      for (double x1 : {x1lo, x1hi}) {
        double a1 = (x0 * gl[1][1] - x1 * gl[1][0]) / det;
        double a2 = (gl[0][0] * x1 - gl[0][1] * x0) / det;
        long f1 = (long)std::floor(a1), c1 = (long)std::ceil(a1);
        long f2 = (long)std::floor(a2), c2 = (long)std::ceil(a2);
        if (first) {
          a1lo = f1;
          a1hi = c1;
          a2lo = f2;
          a2hi = c2;
          first = false;
        } else {
          a1lo = std::min(a1lo, f1);
          a1hi = std::max(a1hi, c1);
          a2lo = std::min(a2lo, f2);
          a2hi = std::max(a2hi, c2);
        }
      }
    for (long a1 = a1lo - 1; a1 <= a1hi + 1; ++a1)
      for (long a2 = a2lo - 1; a2 <= a2hi + 1; ++a2) exps.push_back({a1, a2});
  }

  std::vector<FieldElement> out;
  for (const auto& e : exps) {
    // double filter with generous margin; the box itself is conservative
    std::vector<double> lv(dim, 0);
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < dim; ++k) lv[k] += e[i] * gl[i][k];
    if (lv[0] < lo0 - 0.25 || lv[0] > hi0 + 0.25) continue;
    bool ok = true;
    for (int k = 1; k < dim; ++k)
      if (lv[k] > conj_cap + 0.25) ok = false;
    if (!ok) continue;
    FieldElement u = FieldElement::one(units.field);
    for (int i = 0; i < rank; ++i) u = u * units.fundamental_units[i].pow(e[i]);
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace detail

// ---- algebraic enumeration and the oracle ----

// Enumerates S_C in the dual lattice (radius 1 + 2 C(alpha) with
// C(alpha) = C * sum of dual sup-norms), crosses with all units in the
// dominant log-box for q <= q_max, recovers (q, p) exactly, and keeps the
// pairs passing the certified window test.
inline std::vector<NormalizedApproximation> enumerate_algebraic(const ModuleLattice& lat,
                                                                const UnitGroup& units,
                                                                const ApproxWindow& window,
                                                                long prec = 96) {
  std::vector<NormalizedApproximation> out;
  if (window.q_max <= 0 || window.C <= 0) return out;
  int d = lat.field->degree() - 1;
  DualBasis dual = dual_basis(lat);

  // upper bound for C(alpha), exact from ball endpoints
  Rat calpha = 0;
  for (int j = 1; j <= d; ++j) {
    double hi = 0;
    Signature sig = lat.field->signature();
    for (int i = 0; i < sig.r_plus_1; ++i)
      hi = std::max(hi, ball_ops::abs(dual.elements[j].embed_real(i, 64)).hi_double());
    for (int i = 0; i < sig.s; ++i)
      hi = std::max(hi, dual.elements[j].embed_complex(i, 64).abs().hi_double());
    calpha += Rat(hi * (1 + 1e-12));
  }
  calpha *= window.C;
  Rat radius = 1 + 2 * calpha;

  std::vector<FieldElement> s_pool = enumerate_points(dual.elements, radius, prec);

  double kap = kappa(units).kappa;
  double margin = 0.7;
  std::vector<FieldElement> u_pool = detail::units_in_logbox(
      units, -margin, std::log(kap * (double)window.q_max) + margin,
      std::log(kap) + margin);

  // double-precision data for the prefilter
  std::vector<detail::EmbedDoubles> s_emb, u_emb, a_emb;
  for (const FieldElement& s : s_pool) s_emb.push_back(detail::embed_doubles(s, 64));
  for (const FieldElement& u : u_pool) u_emb.push_back(detail::embed_doubles(u, 64));
  for (int j = 0; j <= d; ++j) a_emb.push_back(detail::embed_doubles(lat.basis[j], 64));
  double c_d = mpq_get_d(window.C.get_mpq_t());
  double qmax_d = (double)window.q_max;
  double eta = 1.0 / d;

  std::set<std::pair<Int, std::vector<Int>>, detail::QPLess> seen;
  for (size_t si = 0; si < s_pool.size(); ++si) {
    if (s_pool[si].is_zero()) continue;
    for (size_t ui = 0; ui < u_pool.size(); ++ui) {
      // su embedding products in doubles
      detail::EmbedDoubles su;
      for (size_t k = 0; k < s_emb[si].reals.size(); ++k)
        su.reals.push_back(s_emb[si].reals[k] * u_emb[ui].reals[k]);
      for (size_t k = 0; k < s_emb[si].cplx.size(); ++k)
        su.cplx.push_back(s_emb[si].cplx[k] * u_emb[ui].cplx[k]);
      double q_d = detail::trace_from_doubles(su, a_emb[0]);
      if (std::abs(q_d) < 0.5 || std::abs(q_d) > qmax_d + 0.5) continue;
      // approximate normalized value with rounded p
      double qr = std::pow(std::abs(q_d), eta);
      bool maybe = true;
      for (int j = 1; j <= d && maybe; ++j) {
        double t = detail::trace_from_doubles(su, a_emb[j]);
        double v = qr * (q_d * a_emb[j].reals[0] - std::round(t));
        if (std::abs(v) > c_d + 1e-6) maybe = false;
      }
      if (!maybe) continue;

      auto [q, p] = recover_qp(s_pool[si], u_pool[ui], lat);
      if (q == 0 || abs(q) > window.q_max) continue;
      auto key = std::make_pair(q, p);
      if (seen.count(key)) continue;
      bool inside = false;
      std::vector<Ball> v = detail::certified_value_within(lat, q, p, window.C, prec, inside);
      if (!inside) continue;
      seen.insert(key);
      NormalizedApproximation na;
      na.q = q;
      na.p = p;
      na.value = std::move(v);
      na.has_provenance = true;
      na.s = s_pool[si];
      na.u = u_pool[ui];
      out.push_back(std::move(na));
    }
  }
  detail::sort_approximations(out);
  return out;
}

// Independent brute-force oracle: for every 1 <= q <= q_max, tries all
// integer vectors p within the admissible band and emits (+-q, +-p) pairs
// passing the certified window test. eta defaults to 1/d; an explicit
// eta > 0 runs an exploratory scan with |q|^eta normalization (the
// certified window test then uses the double-precision weight exactly
// representable closest to q^eta, so results stay deterministic).
inline std::vector<NormalizedApproximation> oracle_scan(const ModuleLattice& lat,
                                                        const ApproxWindow& window,
                                                        long prec = 96, double eta_opt = 0) {
  std::vector<NormalizedApproximation> out;
  if (window.q_max <= 0 || window.C <= 0) return out;
  int d = lat.field->degree() - 1;
  double c_d = mpq_get_d(window.C.get_mpq_t());
  double eta = eta_opt > 0 ? eta_opt : 1.0 / d;
  bool general_eta = eta_opt > 0 && std::abs(eta_opt - 1.0 / d) > 1e-15;

  long p0 = std::max<long>(prec, (long)(2 * std::log2((double)window.q_max + 2)) + 64);
  std::vector<Ball> alpha;
  std::vector<double> alpha_d;
  for (int j = 1; j <= d; ++j) {
    alpha.push_back(lat.basis[j].embed_real(0, p0));
    alpha_d.push_back(alpha.back().mid_double());
  }

  // certified window test for either the default or an exploratory eta
  auto certify = [&](const Int& qq, const std::vector<Int>& pp, bool& ins) {
    if (!general_eta) return detail::certified_value_within(lat, qq, pp, window.C, p0, ins);
    for (long pr = p0; pr <= kPrecCap; pr *= 2) {
      Ball qb = ball_ops::abs(Ball::from_int(qq, mpfr_prec_t(pr)));
      Ball w = ball_ops::exp(Ball::from_endpoints_d(eta, eta, mpfr_prec_t(pr)) *
                             ball_ops::log(qb));
      std::vector<Ball> v;
      for (int j = 1; j <= d; ++j) {
        Ball a = lat.basis[j].embed_real(0, pr);
        v.push_back(w * (Ball::from_int(qq, mpfr_prec_t(pr)) * a -
                         Ball::from_int(pp[j - 1], mpfr_prec_t(pr))));
      }
      int inw = detail::value_within(v, window.C);
      if (inw != 0) {
        ins = inw > 0;
        return v;
      }
    }
    throw PrecisionExhausted("window membership undecidable at q = " + qq.get_str());
  };

  for (long q = 1; q <= window.q_max; ++q) {
    double band = c_d * std::pow((double)q, -eta) + 0.50000001;
    long width = (long)std::ceil(band);
    std::vector<long> center(d), off(d, -width);
    for (int j = 0; j < d; ++j) center[j] = (long)std::llround(q * alpha_d[j]);
    while (true) {
      std::vector<Int> p;
      for (int j = 0; j < d; ++j) p.push_back(Int(center[j] + off[j]));
      // cheap double filter, generous margin
      bool maybe = true;
      double qr = std::pow((double)q, eta);
      for (int j = 0; j < d; ++j) {
        double v = qr * (q * alpha_d[j] - (center[j] + off[j]));
        if (std::abs(v) > c_d + 1e-6) maybe = false;
      }
      if (maybe) {
        bool inside = false;
        std::vector<Ball> v = certify(Int(q), p, inside);
        if (inside) {
          NormalizedApproximation na;
          na.q = q;
          na.p = p;
          na.value = v;
          out.push_back(na);
          NormalizedApproximation neg;
          neg.q = -q;
          for (const Int& x : p) neg.p.push_back(-x);
          bool ni = false;
          neg.value = certify(neg.q, neg.p, ni);
          out.push_back(std::move(neg));
        }
      }
      int k = 0;
      while (k < d && off[k] == width) off[k++] = -width;
      if (k == d) break;
      ++off[k];
    }
  }
  detail::sort_approximations(out);
  return out;
}

// exact set-of-(q,p) comparison between two approximation lists
inline bool same_qp_sets(const std::vector<NormalizedApproximation>& a,
                         const std::vector<NormalizedApproximation>& b) {
  std::set<std::pair<Int, std::vector<Int>>, detail::QPLess> sa, sb;
  for (const auto& x : a) sa.emplace(x.q, x.p);
  for (const auto& x : b) sb.emplace(x.q, x.p);
  return sa == sb;
}

// ---- accumulation sets ----

struct QuadAccumulation {
  Rat factor_sq;  // (2 b sqrt(D))^2 = (alpha - sigma_1(alpha))^2, exact
  NormSpectrum spectrum;  // of the dual lattice, witnesses included
  std::vector<std::pair<Rat, Ball>> points;  // (N(s), +-|2b sqrt(D) N(s)|), sign via Rat
};

// A_1(alpha) = {+-2 b sqrt(D) N(s) : s in the dual, s != 0}
inline QuadAccumulation accumulation_set_quadratic(const ModuleLattice& lat,
                                                   long level_max, long height_cap = 10) {
  if (lat.field->degree() != 2) throw WrongDimension("quadratic accumulation needs d = 1");
  DualBasis dual = dual_basis(lat);
  QuadAccumulation acc;
  // (alpha - sigma_1(alpha))^2 = Tr(alpha)^2 - 4 N(alpha), exact
  Rat t = lat.basis[1].trace(), n = lat.basis[1].norm();
  acc.factor_sq = t * t - 4 * n;
  acc.spectrum = norm_spectrum(dual.elements, level_max, height_cap);

  long prec = 128;
  Ball factor = ball_ops::sqrt(Ball::from_rat(acc.factor_sq, mpfr_prec_t(prec)));
  for (const NormLevel& nl : acc.spectrum.levels) {
    Rat an = abs(nl.signed_norm);
    Ball mag = factor * Ball::from_rat(an, mpfr_prec_t(prec));
    acc.points.emplace_back(an, mag);
    acc.points.emplace_back(-an, -mag);
  }
  std::sort(acc.points.begin(), acc.points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return acc;
}

// certified sign of sigma_1(s) sigma_2(s) for a totally real cubic
inline int hyperbola_sign_class(const FieldElement& s) {
  // sigma_1 sigma_2 = N(s) / sigma_0(s)
  Rat n = s.norm();
  int s0 = 0;
  for (long p = 64; p <= kPrecCap && s0 == 0; p *= 2) s0 = s.embed_real(0, p).sign();
  if (s0 == 0) throw PrecisionExhausted("sign class");
  return sgn(n) * s0;
}

// Dilation levels of the accumulation curves, with per-(level, sign class)
// witnesses for hyperbola pairs.
inline CurveFamily accumulation_curves_cubic(const ModuleLattice& lat, long level_max,
                                             long height_cap = 8, long prec = 96) {
  if (lat.field->degree() != 3) throw WrongDimension("cubic accumulation needs d = 2");
  Signature sig = lat.field->signature();
  CurveFamily fam;
  fam.kind = sig.s == 1 ? CurveKind::Ellipse : CurveKind::HyperbolaPair;
  fam.m_alpha = m_alpha(lat, prec);

  DualBasis dual = dual_basis(lat);
  NormSpectrum spec = norm_spectrum(dual.elements, level_max, height_cap);
  if (spec.min_abs_norm == 0) return fam;

  // re-enumerate to classify witnesses per sign class
  int n = 3;
  std::map<std::pair<Rat, int>, std::vector<Int>> witnesses;
  std::vector<long> c(n, -height_cap);
  while (true) {
    bool zero = true;
    for (long x : c)
      if (x) zero = false;
    if (!zero) {
      FieldElement e = FieldElement::zero(lat.field);
      for (int k = 0; k < n; ++k)
        if (c[k] != 0) e = e + dual.elements[k].scaled(Rat(c[k]));
      Rat an = abs(e.norm());
      if (an != 0) {
        Rat level = an / spec.min_abs_norm;
        if (level <= level_max) {
          int cls = fam.kind == CurveKind::Ellipse ? 0 : hyperbola_sign_class(e);
          auto key = std::make_pair(level, cls);
          if (!witnesses.count(key)) {
            std::vector<Int> w;
            for (long x : c) w.push_back(Int(x));
            witnesses.emplace(key, std::move(w));
          }
        }
      }
    }
    int k = 0;
    while (k < n && c[k] == height_cap) c[k++] = -height_cap;
    if (k == n) break;
    ++c[k];
  }
  for (auto& [key, w] : witnesses) {
    Dilation dl;
    dl.level = key.first;
    dl.abs_norm = key.first * spec.min_abs_norm;
    dl.sign_class = key.second;
    dl.witness = w;
    fam.dilations.push_back(std::move(dl));
  }
  return fam;
}

// ---- convergence report ----

struct ConvergenceRow {
  double u_sigma0;      // |u|
  Ball gamma;
  Ball gamma_err;       // gamma - |N(s)|^(1/d), certified nonzero
  double curve_dist;    // distance of the value to the dilated limit set
  Int q;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  int skipped_zero_q = 0;
};

namespace detail {

// distance of the value vector to |N|^(1/d) * curve, sampled numerically
inline double curve_distance(const ModuleLattice& lat, const MAlphaMatrix& ma,
                             const std::vector<Ball>& value, double dilation,
                             int sign_class) {
  int d = (int)value.size();
  std::vector<double> v;
  for (const Ball& b : value) v.push_back(b.mid_double());
  double m[2][2] = {{0, 0}, {0, 0}};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = ma.m[i][j].mid_double();
  if (d == 1) {
    // point set {+- dilation * m00}
    return std::min(std::abs(v[0] - dilation * m[0][0]),
                    std::abs(v[0] + dilation * m[0][0]));
  }
  Signature sig = lat.field->signature();
  double best = 1e300;
  auto dist_to = [&](double b1, double b2) {
    double x = dilation * (b1 * m[0][0] + b2 * m[1][0]);
    double y = dilation * (b1 * m[0][1] + b2 * m[1][1]);
    double dx = v[0] - x, dy = v[1] - y;
    best = std::min(best, std::sqrt(dx * dx + dy * dy));
  };
  if (sig.s == 1) {
    for (int k = 0; k < 4096; ++k) {
      double th = 2 * M_PI * k / 4096;
      dist_to(std::cos(th), std::sin(th));
    }
  } else {
    for (int k = 0; k <= 4096; ++k) {
      double t = -8 + 16.0 * k / 4096;
      double e = std::exp(t);
      if (sign_class >= 0) {
        dist_to(e, 1 / e);
        dist_to(-e, -1 / e);
      }
      if (sign_class <= 0) {
        dist_to(e, -1 / e);
        dist_to(-e, 1 / e);
      }
    }
  }
  return best;
}

}  // namespace detail

// gamma and curve-distance behavior of a fixed s along the dominant stream
inline ConvergenceReport convergence_report(const FieldElement& s, const ModuleLattice& lat,
                                            const UnitGroup& units, int unit_count,
                                            double t0 = 2.0, long prec = 96) {
  if (s.is_zero()) throw ConfigError("convergence_report needs s != 0");
  int d = lat.field->degree() - 1;
  ConvergenceReport rep;
  MAlphaMatrix ma = m_alpha(lat, prec);
  Rat an = abs(s.norm());
  double dilation = std::pow(mpq_get_d(an.get_mpq_t()), 1.0 / d);
  int cls = 0;
  if (d == 2 && lat.field->signature().s == 0) cls = hyperbola_sign_class(s);

  std::vector<FieldElement> stream = dominant_stream(units, t0, unit_count);
  for (const FieldElement& u : stream) {
    auto [q, p] = recover_qp(s, u, lat);
    if (q == 0) {
      ++rep.skipped_zero_q;
      continue;
    }
    ConvergenceRow row;
    row.q = q;
    row.u_sigma0 = u.embed_real(0, 64).mid_double();
    // certified nonzero gamma error, doubling precision as needed
    for (long pr = prec;; pr *= 2) {
      if (pr > kPrecCap) throw PrecisionExhausted("gamma error sign");
      GammaBeta gb = gamma_beta(s, u, lat, pr);
      Ball target = d == 1 ? Ball::from_rat(an, mpfr_prec_t(pr))
                           : ball_ops::sqrt(Ball::from_rat(an, mpfr_prec_t(pr)));
      Ball err = gb.gamma - target;
      if (err.sign() != 0) {
        row.gamma = gb.gamma;
        row.gamma_err = err;
        break;
      }
    }
    row.curve_dist =
        detail::curve_distance(lat, ma, detail::approx_value(lat, q, p, prec), dilation, cls);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---- transference probes ----

struct DispersionProbe {
  double delta = 0;
  double q_prime = 0;
  double rho_bound = 0;
  double rho_empirical = 0;
  bool degenerate = false;
  bool ok = false;
};

namespace detail {

inline double dist_to_int(double x) { return std::abs(x - std::round(x)); }

inline double sup_dist_to_lattice(const std::vector<double>& x) {
  double m = 0;
  for (double c : x) m = std::max(m, dist_to_int(c));
  return m;
}

}  // namespace detail

// Transference inequality: delta = min_{0<q<=Q} ||q alpha||, then the set
// {q alpha : |q| <= Q'} is rho-dense with Q' = max(Q, delta^-d) and
// rho = max(delta, 1/(Q delta^(d-1))). Empirical covering radius measured
// on a torus grid.
inline DispersionProbe dispersion_probe(const std::vector<double>& alpha, long q_cap,
                                        int grid = 48) {
  int d = (int)alpha.size();
  DispersionProbe pr;
  double delta = 2;
  for (long q = 1; q <= q_cap; ++q) {
    std::vector<double> x;
    for (double a : alpha) x.push_back(q * a);
    delta = std::min(delta, detail::sup_dist_to_lattice(x));
  }
  pr.delta = delta;
  if (delta < 1e-15) {
    pr.degenerate = true;
    pr.ok = true;
    return pr;
  }
  pr.q_prime = std::max((double)q_cap, std::pow(1 / delta, d));
  pr.rho_bound = std::max(delta, 1 / ((double)q_cap * std::pow(delta, d - 1)));
  long qp = std::min((long)std::ceil(pr.q_prime), (long)2000000);

  // fractional parts of q*alpha for |q| <= Q', bucketed on the torus grid
  std::vector<std::vector<double>> pts;
  std::map<std::vector<int>, std::vector<int>> buckets;
  for (long q = -qp; q <= qp; ++q) {
    std::vector<double> x;
    std::vector<int> cell;
    for (double a : alpha) {
      double f = q * a - std::floor(q * a);
      x.push_back(f);
      cell.push_back(std::min((int)(f * grid), grid - 1));
    }
    buckets[cell].push_back((int)pts.size());
    pts.push_back(std::move(x));
  }
  double h = 1.0 / grid;
  auto torus_dist = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0;
    for (int k = 0; k < d; ++k) {
      double t = std::abs(x[k] - y[k]);
      m = std::max(m, std::min(t, 1 - t));
    }
    return m;
  };
  double worst = 0;
  std::vector<int> g(d, 0);
  while (true) {
    std::vector<double> target;
    for (int k = 0; k < d; ++k) target.push_back((g[k] + 0.5) / grid);
    // ring search outward from the target cell
    double bestd = 1e300;
    for (int rr = 0; rr <= grid / 2 + 1; ++rr) {
      std::vector<int> off(d, -rr);
      while (true) {
        bool on_ring = false;
        for (int k = 0; k < d; ++k)
          if (std::abs(off[k]) == rr) on_ring = true;
        if (on_ring || rr == 0) {
          std::vector<int> cell(d);
          for (int k = 0; k < d; ++k) cell[k] = ((g[k] + off[k]) % grid + grid) % grid;
          auto it = buckets.find(cell);
          if (it != buckets.end())
            for (int idx : it->second) bestd = std::min(bestd, torus_dist(pts[idx], target));
        }
        int k = 0;
        while (k < d && off[k] == rr) off[k++] = -rr;
        if (k == d) break;
        ++off[k];
      }
      if (bestd <= rr * h) break;  // farther rings cannot beat this
    }
    worst = std::max(worst, bestd);
    int k = 0;
    while (k < d && g[k] == grid - 1) g[k++] = 0;
    if (k == d) break;
    ++g[k];
  }
  pr.rho_empirical = worst;
  pr.ok = worst <= pr.rho_bound + 1e-9;
  return pr;
}

struct LinearFormProbe {
  double delta = 0;
  double r_bound = 0;
  double rho_bound = 0;
  double attained = 0;
  bool ok = false;
};

// Dual transference: with delta as above, some 0 < |r| <= R = d Q^(1/d)
// satisfies ||r . alpha|| <= rho = d delta / Q^(1 - 1/d).
inline LinearFormProbe linear_form_probe(const std::vector<double>& alpha, long q_cap) {
  int d = (int)alpha.size();
  LinearFormProbe pr;
  double delta = 2;
  for (long q = 1; q <= q_cap; ++q) {
    std::vector<double> x;
    for (double a : alpha) x.push_back(q * a);
    delta = std::min(delta, detail::sup_dist_to_lattice(x));
  }
  pr.delta = delta;
  pr.r_bound = d * std::pow((double)q_cap, 1.0 / d);
  pr.rho_bound = d * delta / std::pow((double)q_cap, 1.0 - 1.0 / d);
  long rb = (long)std::floor(pr.r_bound + 1e-9);
  double best = 1e300;
  std::vector<long> r(d, -rb);
  while (true) {
    bool zero = true;
    for (long x : r)
      if (x) zero = false;
    if (!zero) {
      double v = 0;
      for (int k = 0; k < d; ++k) v += r[k] * alpha[k];
      best = std::min(best, detail::dist_to_int(v));
    }
    int k = 0;
    while (k < d && r[k] == rb) r[k++] = -rb;
    if (k == d) break;
    ++r[k];
  }
  pr.attained = best;
  pr.ok = best <= pr.rho_bound + 1e-9;
  return pr;
}

}  // namespace napprox

#endif
