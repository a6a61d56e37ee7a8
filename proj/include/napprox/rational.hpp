#ifndef NAPPROX_RATIONAL_HPP
#define NAPPROX_RATIONAL_HPP

// Exact scalars: arbitrary-precision integers and rationals on top of GMP.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "napprox/errors.hpp"

namespace napprox {

using Int = mpz_class;
using Rat = mpq_class;  // canonicalized, denominator > 0

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int to_integer(const Rat& r) {
  if (!is_integer(r)) throw NonIntegerTrace("expected integer, got " + r.get_str());
  return r.get_num();
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

// nearest integer, ties toward +infinity
inline Int rat_round(const Rat& r) { return rat_floor(r + Rat(1, 2)); }

inline Int isqrt(const Int& n) {
  Int s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// ---- small dense rational matrices ----

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return a_[i * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[i * cols_ + j]; }

  QMatrix operator*(const QMatrix& o) const {
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        if (at(i, k) == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }

  QMatrix operator+(const QMatrix& o) const {
    QMatrix r(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  QMatrix scaled(const Rat& c) const {
    QMatrix r(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] * c;
    return r;
  }

  Rat trace() const {
    Rat t;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  Rat det() const {
    QMatrix m(*this);
    Rat d = 1;
    for (int c = 0; c < cols_; ++c) {
      int piv = -1;
      for (int r = c; r < rows_; ++r)
        if (m.at(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return Rat(0);
      if (piv != c) {
        for (int j = 0; j < cols_; ++j) swap(m.at(piv, j), m.at(c, j));
        d = -d;
      }
      d *= m.at(c, c);
      for (int r = c + 1; r < rows_; ++r) {
        if (m.at(r, c) == 0) continue;
        Rat f = m.at(r, c) / m.at(c, c);
        for (int j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(c, j);
      }
    }
    return d;
  }

  // Gauss-Jordan inverse; throws SingularGram on rank deficiency.
  QMatrix inverse() const {
    int n = rows_;
    QMatrix m(*this);
    QMatrix inv = identity(n);
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (m.at(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw SingularGram("singular matrix");
      if (piv != c)
        for (int j = 0; j < n; ++j) {
          swap(m.at(piv, j), m.at(c, j));
          swap(inv.at(piv, j), inv.at(c, j));
        }
      Rat p = m.at(c, c);
      for (int j = 0; j < n; ++j) {
        m.at(c, j) /= p;
        inv.at(c, j) /= p;
      }
      for (int r = 0; r < n; ++r) {
        if (r == c || m.at(r, c) == 0) continue;
        Rat f = m.at(r, c);
        for (int j = 0; j < n; ++j) {
          m.at(r, j) -= f * m.at(c, j);
          inv.at(r, j) -= f * inv.at(c, j);
        }
      }
    }
    return inv;
  }

  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    std::vector<Rat> y(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
    return y;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace napprox

#endif
