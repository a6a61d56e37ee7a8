#ifndef NAPPROX_FIELD_HPP
#define NAPPROX_FIELD_HPP

// Number fields of degree 2 or 3 given by a monic integer polynomial,
// exact field-element arithmetic in the power basis, and certified
// evaluation of all embeddings.
//
// Embedding order is frozen: sigma_0 is the root picked by the selector,
// the remaining real roots follow in ascending order, then one
// representative per complex-conjugate pair (upper half-plane).

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "napprox/ball.hpp"
#include "napprox/errors.hpp"
#include "napprox/poly.hpp"
#include "napprox/rational.hpp"

namespace napprox {

struct Signature {
  int r_plus_1 = 0;  // number of real embeddings
  int s = 0;         // number of complex-conjugate pairs
};

struct EmbeddingSet {
  std::vector<Ball> real_roots;   // sigma_0 .. sigma_r
  std::vector<CBall> complex_pairs;  // sigma_{r+1} .. sigma_{r+s}
  Signature signature;
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // min_poly: monic integer coefficients low-to-high, degree 2 or 3.
  // (sel_lo, sel_hi): rational interval isolating the root used as sigma_0.
  static FieldPtr create(const std::vector<Int>& min_poly, const Rat& sel_lo,
                         const Rat& sel_hi) {
    return FieldPtr(new NumberField(min_poly, sel_lo, sel_hi));
  }

  int degree() const { return n_; }
  int dim() const { return n_ - 1; }
  const QPoly& min_poly() const { return poly_; }
  const std::vector<Int>& min_poly_int() const { return ipoly_; }
  Signature signature() const { return sig_; }
  std::pair<Rat, Rat> root_selector() const { return {sel_lo_, sel_hi_}; }

  // alpha^k reduced into the power basis, k = 0 .. 2n-2
  const std::vector<std::vector<Rat>>& power_table() const { return powers_; }

  // All embeddings with every root enclosure of radius <= 2^-prec.
  EmbeddingSet embeddings(long prec) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->by_prec.lower_bound(prec);
    if (it != cache_->by_prec.end()) return it->second;
    EmbeddingSet es = compute_embeddings(prec);
    cache_->by_prec[prec] = es;
    return es;
  }

 private:
  NumberField(const std::vector<Int>& min_poly, const Rat& sel_lo, const Rat& sel_hi)
      : ipoly_(min_poly), sel_lo_(sel_lo), sel_hi_(sel_hi) {
    n_ = (int)min_poly.size() - 1;
    if (n_ < 2 || n_ > 3) throw ConfigError("field degree must be 2 or 3");
    if (min_poly.back() != 1) throw ConfigError("min_poly must be monic");
    for (const Int& c : min_poly) poly_.push_back(Rat(c));
    check_irreducible();
    isolate_roots();
    build_power_table();
    cache_ = std::make_shared<Cache>();
  }

  // degree <= 3: reducible over Q iff there is a rational (hence integer) root
  void check_irreducible() const {
    const Int& a0 = ipoly_[0];
    if (a0 == 0) throw ReducibleError("rational root 0");
    Int bound = abs(a0);
    for (Int d = 1; d <= bound; ++d) {
      if (abs(a0) % d != 0) continue;
      for (int sign : {1, -1}) {
        Rat x(sign > 0 ? d : -d);
        if (qpoly_eval(poly_, x) == 0)
          throw ReducibleError("rational root " + x.get_str());
      }
    }
  }

  void isolate_roots() {
    auto isolated = isolate_real_roots(poly_);
    int sel = -1;
    for (size_t i = 0; i < isolated.size(); ++i) {
      auto [a, b] = refine_root_bisect(poly_, isolated[i].first, isolated[i].second,
                                       Rat(1, 1024));
      // shrink until the enclosure is inside or disjoint from the selector
      for (int round = 0; round < 64 && !(b <= sel_lo_ || a >= sel_hi_) &&
                          !(a >= sel_lo_ && b <= sel_hi_);
           ++round) {
        std::tie(a, b) = refine_root_bisect(poly_, a, b, (b - a) / 1024);
      }
      if (a >= sel_lo_ && b <= sel_hi_) {
        if (sel >= 0) throw NoRealRootError("selector isolates more than one root");
        sel = (int)i;
      }
      refined_.emplace_back(a, b);
    }
    if (sel < 0) throw NoRealRootError("selector contains no real root");
    // sigma_0 first, remaining real roots stay in ascending order
    auto sel_iv = refined_[sel];
    refined_.erase(refined_.begin() + sel);
    refined_.insert(refined_.begin(), sel_iv);
    sig_.r_plus_1 = (int)refined_.size();
    sig_.s = (n_ - sig_.r_plus_1) / 2;
  }

  void build_power_table() {
    powers_.assign(2 * n_ - 1, std::vector<Rat>(n_));
    powers_[0][0] = 1;
    for (int k = 1; k < 2 * n_ - 1; ++k) {
      // multiply previous by alpha, reduce with the monic relation
      std::vector<Rat> cur(n_ + 1);
      for (int i = 0; i < n_; ++i) cur[i + 1] = powers_[k - 1][i];
      Rat top = cur[n_];
      for (int i = 0; i < n_; ++i) cur[i] -= top * poly_[i];
      cur.resize(n_);
      powers_[k] = std::move(cur);
    }
  }

  EmbeddingSet compute_embeddings(long prec) const {
    EmbeddingSet es;
    es.signature = sig_;
    QPoly dp = qpoly_derivative(poly_);
    for (auto [a, b] : refined_) {
      // tighten rationally until Newton has a nonzero derivative enclosure
      Rat eps(1, 1);
      eps /= 1024 * 1024;  // 2^-20
      auto [ra, rb] = refine_root_bisect(poly_, a, b, eps);
      Ball x(std::max<mpfr_prec_t>(kDefaultPrec, prec + 32));
      mpfr_set_q(x.lo(), ra.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(x.hi(), rb.get_mpq_t(), MPFR_RNDU);
      es.real_roots.push_back(refine_root_ball(poly_, dp, x, prec));
    }
    if (sig_.s == 1) {
      // cubic with one real root: the pair solves the residual quadratic.
      // sum of pair = -a2 - r, product of pair = -a0 / r
      const Ball& r = es.real_roots[0];
      mpfr_prec_t wp = r.prec();
      Ball a2 = Ball::from_rat(poly_[2], wp);
      Ball a0 = Ball::from_rat(poly_[0], wp);
      Ball re = -(a2 + r) / Ball::exact_int(2, wp);
      Ball mod2 = -(a0 / r);
      Ball im2 = mod2 - re * re;
      Ball im = ball_ops::sqrt(im2);
      es.complex_pairs.emplace_back(re, im);
    }
    return es;
  }

  struct Cache {
    std::mutex mu;
    std::map<long, EmbeddingSet> by_prec;
  };

  int n_ = 0;
  std::vector<Int> ipoly_;
  QPoly poly_;
  Rat sel_lo_, sel_hi_;
  std::vector<std::pair<Rat, Rat>> refined_;  // rational root enclosures
  Signature sig_;
  std::vector<std::vector<Rat>> powers_;
  std::shared_ptr<Cache> cache_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<Rat> coords)
      : field_(std::move(field)), coords_(std::move(coords)) {
    if ((int)coords_.size() != field_->degree())
      throw ConfigError("coordinate count does not match field degree");
  }

  static FieldElement zero(const FieldPtr& f) {
    return FieldElement(f, std::vector<Rat>(f->degree()));
  }
  static FieldElement one(const FieldPtr& f) {
    std::vector<Rat> c(f->degree());
    c[0] = 1;
    return FieldElement(f, std::move(c));
  }
  static FieldElement generator(const FieldPtr& f) {
    std::vector<Rat> c(f->degree());
    c[1] = 1;
    return FieldElement(f, std::move(c));
  }
  static FieldElement from_rat(const FieldPtr& f, const Rat& r) {
    std::vector<Rat> c(f->degree());
    c[0] = r;
    return FieldElement(f, std::move(c));
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coords() const { return coords_; }
  int degree() const { return field_->degree(); }

  bool is_zero() const {
    for (const Rat& c : coords_)
      if (c != 0) return false;
    return true;
  }

  bool operator==(const FieldElement& o) const { return coords_ == o.coords_; }

  FieldElement operator+(const FieldElement& o) const {
    std::vector<Rat> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return FieldElement(field_, std::move(c));
  }
  FieldElement operator-(const FieldElement& o) const {
    std::vector<Rat> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return FieldElement(field_, std::move(c));
  }
  FieldElement operator-() const {
    std::vector<Rat> c(coords_);
    for (auto& x : c) x = -x;
    return FieldElement(field_, std::move(c));
  }

  FieldElement operator*(const FieldElement& o) const {
    int n = degree();
    const auto& tab = field_->power_table();
    std::vector<Rat> c(n);
    for (int i = 0; i < n; ++i) {
      if (coords_[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (o.coords_[j] == 0) continue;
        Rat f = coords_[i] * o.coords_[j];
        const auto& red = tab[i + j];
        for (int k = 0; k < n; ++k) c[k] += f * red[k];
      }
    }
    return FieldElement(field_, std::move(c));
  }

  FieldElement scaled(const Rat& r) const {
    std::vector<Rat> c(coords_);
    for (auto& x : c) x *= r;
    return FieldElement(field_, std::move(c));
  }

  // matrix of multiplication by this element in the power basis
  QMatrix mul_matrix() const {
    int n = degree();
    const auto& tab = field_->power_table();
    QMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
      // image of alpha^j
      for (int i = 0; i < n; ++i) {
        if (coords_[i] == 0) continue;
        const auto& red = tab[i + j];
        for (int k = 0; k < n; ++k) m.at(k, j) += coords_[i] * red[k];
      }
    }
    return m;
  }

  FieldElement inverse() const {
    if (is_zero()) throw DivisionByZero("field element inverse of zero");
    QMatrix inv = mul_matrix().inverse();
    std::vector<Rat> e(degree());
    e[0] = 1;
    return FieldElement(field_, inv.apply(e));
  }

  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

  FieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r = one(field_);
    FieldElement base = *this;
    unsigned long u = (unsigned long)e;
    while (u) {
      if (u & 1) r = r * base;
      base = base * base;
      u >>= 1;
    }
    return r;
  }

  Rat trace() const { return mul_matrix().trace(); }
  Rat norm() const { return mul_matrix().det(); }

  // certified enclosure of sigma_i(x), i = 0..r  (real embeddings)
  Ball embed_real(int i, long prec) const {
    for (long p = prec + 8; p <= kPrecCap; p *= 2) {
      EmbeddingSet es = field_->embeddings(p);
      Ball v = eval_at(es.real_roots[i], p);
      if (v.radius_below_2exp(prec)) return v;
    }
    throw PrecisionExhausted("embed_real");
  }

  // enclosure of sigma_{r+1+i}(x), complex representative i = 0..s-1
  CBall embed_complex(int i, long prec) const {
    for (long p = prec + 8; p <= kPrecCap; p *= 2) {
      EmbeddingSet es = field_->embeddings(p);
      CBall x = es.complex_pairs[i];
      CBall v{Ball(mpfr_prec_t(p)), Ball(mpfr_prec_t(p))};
      for (int k = degree() - 1; k >= 0; --k)
        v = v * x + CBall::from_real(Ball::from_rat(coords_[k], p));
      if (v.re().radius_below_2exp(prec) && v.im().radius_below_2exp(prec)) return v;
    }
    throw PrecisionExhausted("embed_complex");
  }

 private:
  Ball eval_at(const Ball& x, long prec) const {
    Ball v((mpfr_prec_t)prec);
    for (int k = degree() - 1; k >= 0; --k)
      v = v * x + Ball::from_rat(coords_[k], prec);
    return v;
  }

  FieldPtr field_;
  std::vector<Rat> coords_;
};

inline FieldPtr field_new(const std::vector<Int>& min_poly, const Rat& sel_lo,
                          const Rat& sel_hi) {
  return NumberField::create(min_poly, sel_lo, sel_hi);
}

}  // namespace napprox

#endif
