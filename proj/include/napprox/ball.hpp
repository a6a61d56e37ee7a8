#ifndef NAPPROX_BALL_HPP
#define NAPPROX_BALL_HPP

// Certified real and complex ball arithmetic. A Ball is stored as an
// outward-rounded MPFR interval [lo, hi]; every operation returns an
// enclosure of the exact result. Center/radius views are derived.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "napprox/errors.hpp"
#include "napprox/rational.hpp"

namespace napprox {

constexpr mpfr_prec_t kDefaultPrec = 128;
constexpr mpfr_prec_t kPrecCap = 8192;

class Ball {
 public:
  Ball() : Ball(kDefaultPrec) {}

  explicit Ball(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  Ball(const Ball& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }

  Ball(Ball&& o) noexcept {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  Ball& operator=(Ball o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }

  ~Ball() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Ball exact_int(long v, mpfr_prec_t prec = kDefaultPrec) {
    Ball b(prec);
    mpfr_set_si(b.lo_, v, MPFR_RNDD);
    mpfr_set_si(b.hi_, v, MPFR_RNDU);
    return b;
  }

  static Ball from_rat(const Rat& r, mpfr_prec_t prec = kDefaultPrec) {
    Ball b(prec);
    mpfr_set_q(b.lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b.hi_, r.get_mpq_t(), MPFR_RNDU);
    return b;
  }

  static Ball from_int(const Int& v, mpfr_prec_t prec = kDefaultPrec) {
    Ball b(prec);
    mpfr_set_z(b.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(b.hi_, v.get_mpz_t(), MPFR_RNDU);
    return b;
  }

  static Ball from_endpoints_d(double lo, double hi, mpfr_prec_t prec = kDefaultPrec) {
    Ball b(prec);
    mpfr_set_d(b.lo_, lo, MPFR_RNDD);
    mpfr_set_d(b.hi_, hi, MPFR_RNDU);
    return b;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  mpfr_t& lo() { return lo_; }
  mpfr_t& hi() { return hi_; }

  double mid_double() const {
    return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2;
  }
  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  // upper bound on the radius around the midpoint
  double rad_double() const {
    Ball w = *this;
    mpfr_sub(w.hi_, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w.hi_, w.hi_, 1, MPFR_RNDU);
    return mpfr_get_d(w.hi_, MPFR_RNDU);
  }

  bool contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
  }
  bool is_exact_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }

  // -1 / +1 if the sign is certified, 0 if the ball straddles zero
  int sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
  }

  bool certainly_lt(const Ball& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
  bool certainly_le(const Ball& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
  bool certainly_gt(const Ball& o) const { return o.certainly_lt(*this); }

  bool certainly_le_rat(const Rat& r) const {
    return mpfr_cmp_q(hi_, r.get_mpq_t()) <= 0;
  }
  bool certainly_gt_rat(const Rat& r) const {
    return mpfr_cmp_q(lo_, r.get_mpq_t()) > 0;
  }
  bool certainly_lt_rat(const Rat& r) const {
    return mpfr_cmp_q(hi_, r.get_mpq_t()) < 0;
  }

  bool contains_rat(const Rat& r) const {
    return mpfr_cmp_q(lo_, r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, r.get_mpq_t()) >= 0;
  }

  // radius <= 2^-k ?
  bool radius_below_2exp(long k) const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    mpfr_t bound;
    mpfr_init2(bound, 64);
    mpfr_set_ui(bound, 1, MPFR_RNDN);
    mpfr_div_2ui(bound, bound, (unsigned long)k, MPFR_RNDN);
    bool ok = mpfr_cmp(w, bound) <= 0;
    mpfr_clear(w);
    mpfr_clear(bound);
    return ok;
  }

  std::string mid_string(int sig_digits = 12) const {
    mpfr_t m;
    mpfr_init2(m, std::max<mpfr_prec_t>(prec(), 64));
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", sig_digits, m);
    mpfr_clear(m);
    return buf;
  }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

namespace ball_ops {

inline mpfr_prec_t rprec(const Ball& a, const Ball& b) {
  return std::max(a.prec(), b.prec());
}

inline Ball add(const Ball& a, const Ball& b) {
  Ball r(rprec(a, b));
  mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

inline Ball sub(const Ball& a, const Ball& b) {
  Ball r(rprec(a, b));
  mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
  return r;
}

inline Ball neg(const Ball& a) {
  Ball r(a.prec());
  mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
  mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
  return r;
}

inline Ball mul(const Ball& a, const Ball& b) {
  mpfr_prec_t p = rprec(a, b);
  Ball r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_t* as[2] = {&a.lo(), &a.hi()};
  const mpfr_t* bs[2] = {&b.lo(), &b.hi()};
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, *as[i], *bs[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo()) < 0) mpfr_set(r.lo(), t, MPFR_RNDD);
      mpfr_mul(t, *as[i], *bs[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi()) > 0) mpfr_set(r.hi(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

inline Ball div(const Ball& a, const Ball& b) {
  if (b.contains_zero()) throw DivisionByZero("ball division by interval containing zero");
  mpfr_prec_t p = rprec(a, b);
  Ball r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_t* as[2] = {&a.lo(), &a.hi()};
  const mpfr_t* bs[2] = {&b.lo(), &b.hi()};
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t, *as[i], *bs[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo()) < 0) mpfr_set(r.lo(), t, MPFR_RNDD);
      mpfr_div(t, *as[i], *bs[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi()) > 0) mpfr_set(r.hi(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

inline Ball abs(const Ball& a) {
  if (mpfr_sgn(a.lo()) >= 0) return a;
  if (mpfr_sgn(a.hi()) <= 0) return neg(a);
  Ball r(a.prec());
  mpfr_set_zero(r.lo(), 1);
  mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
  if (mpfr_cmp(a.hi(), r.hi()) > 0) mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

inline Ball sqrt(const Ball& a) {
  if (mpfr_sgn(a.hi()) < 0) throw Error("sqrt of negative interval");
  Ball r(a.prec());
  if (mpfr_sgn(a.lo()) <= 0)
    mpfr_set_zero(r.lo(), 1);
  else
    mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

inline Ball log(const Ball& a) {
  if (mpfr_sgn(a.lo()) <= 0) throw Error("log of interval touching zero");
  Ball r(a.prec());
  mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

inline Ball exp(const Ball& a) {
  Ball r(a.prec());
  mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

inline Ball pow_ui(const Ball& a, unsigned long e) {
  Ball r = Ball::exact_int(1, a.prec());
  Ball base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

inline Ball hull(const Ball& a, const Ball& b) {
  Ball r(rprec(a, b));
  mpfr_set(r.lo(), mpfr_cmp(a.lo(), b.lo()) < 0 ? a.lo() : b.lo(), MPFR_RNDD);
  mpfr_set(r.hi(), mpfr_cmp(a.hi(), b.hi()) > 0 ? a.hi() : b.hi(), MPFR_RNDU);
  return r;
}

// intersection; throws if disjoint
inline Ball intersect(const Ball& a, const Ball& b) {
  Ball r(rprec(a, b));
  mpfr_set(r.lo(), mpfr_cmp(a.lo(), b.lo()) > 0 ? a.lo() : b.lo(), MPFR_RNDD);
  mpfr_set(r.hi(), mpfr_cmp(a.hi(), b.hi()) < 0 ? a.hi() : b.hi(), MPFR_RNDU);
  if (mpfr_cmp(r.lo(), r.hi()) > 0) throw Error("empty interval intersection");
  return r;
}

inline Ball widen_prec(const Ball& a, mpfr_prec_t p) {
  Ball r(p);
  mpfr_set(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

}  // namespace ball_ops

inline Ball operator+(const Ball& a, const Ball& b) { return ball_ops::add(a, b); }
inline Ball operator-(const Ball& a, const Ball& b) { return ball_ops::sub(a, b); }
inline Ball operator*(const Ball& a, const Ball& b) { return ball_ops::mul(a, b); }
inline Ball operator/(const Ball& a, const Ball& b) { return ball_ops::div(a, b); }
inline Ball operator-(const Ball& a) { return ball_ops::neg(a); }

// rectangular complex enclosure
class CBall {
 public:
  CBall() = default;
  CBall(Ball re, Ball im) : re_(std::move(re)), im_(std::move(im)) {}

  static CBall from_real(const Ball& re) {
    return CBall(re, Ball(re.prec()));
  }

  const Ball& re() const { return re_; }
  const Ball& im() const { return im_; }

  CBall conj() const { return CBall(re_, -im_); }

  CBall operator+(const CBall& o) const { return CBall(re_ + o.re_, im_ + o.im_); }
  CBall operator-(const CBall& o) const { return CBall(re_ - o.re_, im_ - o.im_); }
  CBall operator*(const CBall& o) const {
    return CBall(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }

  Ball abs2() const { return re_ * re_ + im_ * im_; }
  Ball abs() const { return ball_ops::sqrt(abs2()); }

 private:
  Ball re_, im_;
};

}  // namespace napprox

#endif
