#ifndef NAPPROX_POLY_HPP
#define NAPPROX_POLY_HPP

// Rational polynomials, Sturm sequences, and real root isolation.
// Coefficients are stored low-to-high.

#include <utility>
#include <vector>

#include "napprox/ball.hpp"
#include "napprox/rational.hpp"

namespace napprox {

using QPoly = std::vector<Rat>;

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int qpoly_deg(const QPoly& p) { return (int)p.size() - 1; }

inline Rat qpoly_eval(const QPoly& p, const Rat& x) {
  Rat v;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

inline Ball qpoly_eval_ball(const QPoly& p, const Ball& x, mpfr_prec_t prec) {
  Ball v(prec);
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    v = v * x + Ball::from_rat(*it, prec);
  return v;
}

inline CBall qpoly_eval_cball(const QPoly& p, const CBall& x, mpfr_prec_t prec) {
  CBall v{Ball(prec), Ball(prec)};
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    v = v * x + CBall::from_real(Ball::from_rat(*it, prec));
  return v;
}

inline QPoly qpoly_derivative(const QPoly& p) {
  QPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat((long)i));
  return d;
}

// -p mod division remainder, used for the Sturm chain
inline QPoly qpoly_rem(QPoly a, const QPoly& b) {
  qpoly_trim(a);
  while (qpoly_deg(a) >= qpoly_deg(b) && !a.empty()) {
    Rat f = a.back() / b.back();
    int shift = qpoly_deg(a) - qpoly_deg(b);
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    qpoly_trim(a);
  }
  return a;
}

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain;
  chain.push_back(p);
  chain.push_back(qpoly_derivative(p));
  qpoly_trim(chain.back());
  while (qpoly_deg(chain.back()) > 0) {
    QPoly r = qpoly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

inline int sturm_sign_changes(const std::vector<QPoly>& chain, const Rat& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    Rat v = qpoly_eval(p, x);
    int s = sgn(v);
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

// number of distinct real roots in (a, b]
inline int sturm_count(const std::vector<QPoly>& chain, const Rat& a, const Rat& b) {
  return sturm_sign_changes(chain, a) - sturm_sign_changes(chain, b);
}

inline Rat cauchy_root_bound(const QPoly& p) {
  Rat m;
  Rat lead = abs(p.back());
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Rat c = abs(p[i]) / lead;
    if (c > m) m = c;
  }
  return m + 1;
}

// Isolating intervals (a, b] for all distinct real roots, ascending.
// Requires squarefree input.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& p) {
  auto chain = sturm_chain(p);
  Rat bound = cauchy_root_bound(p);
  std::vector<std::pair<Rat, Rat>> done;
  std::vector<std::pair<Rat, Rat>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int n = sturm_count(chain, a, b);
    if (n == 0) continue;
    if (n == 1) {
      done.emplace_back(a, b);
      continue;
    }
    Rat m = (a + b) / 2;
    // nudge off an exact root of the chain head
    while (qpoly_eval(p, m) == 0) m = (a + m) / 2;
    work.emplace_back(a, m);
    work.emplace_back(m, b);
  }
  std::sort(done.begin(), done.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return done;
}

// Shrink an isolating interval by sign bisection until width <= eps.
inline std::pair<Rat, Rat> refine_root_bisect(const QPoly& p, Rat a, Rat b, const Rat& eps) {
  int sa = sgn(qpoly_eval(p, a));
  if (sa == 0) {
    // endpoint is a root only if rational; nudge inward
    a = (a * 3 + b) / 4;
    sa = sgn(qpoly_eval(p, a));
  }
  while (b - a > eps) {
    Rat m = (a + b) / 2;
    int sm = sgn(qpoly_eval(p, m));
    if (sm == 0) {
      // rational root hit exactly
      Rat w = eps / 4;
      return {m - w, m + w};
    }
    if (sm == sa)
      a = m;
    else
      b = m;
  }
  return {a, b};
}

// Interval Newton refinement of an enclosure down to radius <= 2^-target_prec.
// Falls back to ball bisection when the derivative enclosure straddles zero.
inline Ball refine_root_ball(const QPoly& p, const QPoly& dp, Ball x, long target_prec) {
  mpfr_prec_t wp = std::max<mpfr_prec_t>(x.prec(), target_prec + 32);
  x = ball_ops::widen_prec(x, wp);
  for (int iter = 0; iter < 256; ++iter) {
    if (x.radius_below_2exp(target_prec)) return x;
    wp = std::max<mpfr_prec_t>(wp, mpfr_prec_t(2 * (target_prec + 32)));
    if (wp > kPrecCap) throw PrecisionExhausted("root refinement exceeded precision cap");
    x = ball_ops::widen_prec(x, wp);
    Ball d = qpoly_eval_ball(dp, x, wp);
    // midpoint as an exact ball
    Ball m(wp);
    mpfr_add(m.lo(), x.lo(), x.hi(), MPFR_RNDN);
    mpfr_div_2ui(m.lo(), m.lo(), 1, MPFR_RNDN);
    mpfr_set(m.hi(), m.lo(), MPFR_RNDU);
    Ball fm = qpoly_eval_ball(p, m, wp);
    if (!d.contains_zero()) {
      Ball nx = m - fm / d;
      x = ball_ops::intersect(x, nx);
    } else {
      // bisect on the certified sign of p at the midpoint
      int sm = fm.sign();
      if (sm == 0) continue;  // widen precision next round
      Ball flo = qpoly_eval_ball(p, Ball(x), wp);
      (void)flo;
      Ball left(wp), right(wp);
      mpfr_set(left.lo(), x.lo(), MPFR_RNDD);
      mpfr_set(left.hi(), m.hi(), MPFR_RNDU);
      mpfr_set(right.lo(), m.lo(), MPFR_RNDD);
      mpfr_set(right.hi(), x.hi(), MPFR_RNDU);
      Ball le(wp);
      mpfr_set(le.lo(), x.lo(), MPFR_RNDD);
      mpfr_set(le.hi(), x.lo(), MPFR_RNDU);
      int sl = qpoly_eval_ball(p, le, wp).sign();
      if (sl == 0) return x;  // cannot split safely; caller refines later
      x = (sl != sm) ? left : right;
    }
  }
  throw PrecisionExhausted("root refinement did not converge");
}

}  // namespace napprox

#endif
