#ifndef NAPPROX_LATTICE_HPP
#define NAPPROX_LATTICE_HPP

// Trace-form Gram matrices, dual bases, multiplier rings, and certified
// enumeration of lattice points in Minkowski sup-norm balls.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "napprox/ball.hpp"
#include "napprox/field.hpp"
#include "napprox/intlinalg.hpp"
#include "napprox/rational.hpp"

namespace napprox {

// ---- small ball matrices ----

using BallMatrix = std::vector<std::vector<Ball>>;

inline BallMatrix ball_identity(int n, mpfr_prec_t prec) {
  BallMatrix m(n, std::vector<Ball>(n, Ball(prec)));
  for (int i = 0; i < n; ++i) m[i][i] = Ball::exact_int(1, prec);
  return m;
}

// Gauss-Jordan with certified nonzero pivots; throws PrecisionExhausted if
// a pivot ball straddles zero.
inline BallMatrix ball_mat_inverse(BallMatrix m) {
  int n = (int)m.size();
  mpfr_prec_t prec = n ? m[0][0].prec() : kDefaultPrec;
  BallMatrix inv = ball_identity(n, prec);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c].sign() != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw PrecisionExhausted("ball matrix pivot straddles zero");
    if (piv != c) {
      std::swap(m[piv], m[c]);
      std::swap(inv[piv], inv[c]);
    }
    Ball p = m[c][c];
    for (int j = 0; j < n; ++j) {
      m[c][j] = m[c][j] / p;
      inv[c][j] = inv[c][j] / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      Ball f = m[r][c];
      for (int j = 0; j < n; ++j) {
        m[r][j] = m[r][j] - f * m[c][j];
        inv[r][j] = inv[r][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

inline BallMatrix ball_mat_mul(const BallMatrix& a, const BallMatrix& b) {
  int n = (int)a.size(), m = (int)b[0].size(), k = (int)b.size();
  mpfr_prec_t prec = a[0][0].prec();
  BallMatrix r(n, std::vector<Ball>(m, Ball(prec)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      Ball s(prec);
      for (int t = 0; t < k; ++t) s = s + a[i][t] * b[t][j];
      r[i][j] = s;
    }
  return r;
}

inline BallMatrix ball_mat_transpose(const BallMatrix& a) {
  int n = (int)a.size(), m = (int)a[0].size();
  BallMatrix r(m, std::vector<Ball>(n, Ball(a[0][0].prec())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

// ---- domain types ----

// Lattice spanned over Z by a Q-basis of the field, with basis[0] = 1.
struct ModuleLattice {
  FieldPtr field;
  std::vector<FieldElement> basis;
};

struct GramMatrix {
  QMatrix entries;  // A_{ij} = Tr(b_i b_j)
  Rat det;
};

struct DualBasis {
  std::vector<FieldElement> elements;  // pairing Tr(b_i e_j) = delta_ij
  QMatrix inverse_gram;
};

struct MultiplierRingBasis {
  std::vector<FieldElement> basis;  // Z-basis of the multiplier ring
  Int index;                        // [Lambda : Z_Lambda]
};

inline ModuleLattice make_lattice(FieldPtr field, std::vector<FieldElement> basis) {
  int n = field->degree();
  if ((int)basis.size() != n) throw ConfigError("lattice basis size must equal degree");
  if (!(basis[0] == FieldElement::one(field)))
    throw ConfigError("lattice basis must start with 1");
  return {std::move(field), std::move(basis)};
}

inline ModuleLattice power_basis_lattice(const FieldPtr& field) {
  std::vector<FieldElement> b;
  FieldElement a = FieldElement::generator(field);
  FieldElement cur = FieldElement::one(field);
  for (int i = 0; i < field->degree(); ++i) {
    b.push_back(cur);
    cur = cur * a;
  }
  return {field, std::move(b)};
}

// ---- operations ----

inline GramMatrix gram(const ModuleLattice& lat) {
  int n = (int)lat.basis.size();
  QMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rat t = (lat.basis[i] * lat.basis[j]).trace();
      a.at(i, j) = t;
      a.at(j, i) = t;
    }
  Rat d = a.det();
  if (d == 0) throw SingularGram("trace-form Gram matrix is singular");
  return {std::move(a), std::move(d)};
}

inline DualBasis dual_basis(const ModuleLattice& lat) {
  GramMatrix g = gram(lat);
  QMatrix inv = g.entries.inverse();
  int n = (int)lat.basis.size();
  std::vector<FieldElement> dual;
  for (int j = 0; j < n; ++j) {
    FieldElement e = FieldElement::zero(lat.field);
    for (int i = 0; i < n; ++i) e = e + lat.basis[i].scaled(inv.at(i, j));
    dual.push_back(std::move(e));
  }
  return {std::move(dual), std::move(inv)};
}

// x in the dual lattice  iff  Tr(x b_i) is an integer for every basis element
inline bool dual_membership(const FieldElement& x, const ModuleLattice& lat) {
  for (const FieldElement& b : lat.basis)
    if (!is_integer((x * b).trace())) return false;
  return true;
}

// B with Tr(x y) = v(x) . (B column of y) where v collects real embeddings
// plus (Re, Im) of the complex representative; the weight block is
// diag(2, -2) on the complex rows. Columns of B^{-t} are then the embedded
// dual basis vectors.
inline BallMatrix b_matrix(const ModuleLattice& lat, long prec) {
  int n = lat.field->degree();
  Signature sig = lat.field->signature();
  BallMatrix b(n, std::vector<Ball>(n, Ball(mpfr_prec_t(prec + 16))));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < sig.r_plus_1; ++i) b[i][j] = lat.basis[j].embed_real(i, prec);
    for (int i = 0; i < sig.s; ++i) {
      CBall z = lat.basis[j].embed_complex(i, prec);
      Ball two = Ball::exact_int(2, z.re().prec());
      b[sig.r_plus_1 + 2 * i][j] = two * z.re();
      b[sig.r_plus_1 + 2 * i + 1][j] = -(two * z.im());
    }
  }
  return b;
}

// coordinates of x over the lattice basis (exact)
inline std::vector<Rat> coords_in_basis(const FieldElement& x,
                                        const std::vector<FieldElement>& basis) {
  int n = (int)basis.size();
  QMatrix p(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p.at(i, j) = basis[j].coords()[i];
  return p.inverse().apply(x.coords());
}

// Z_Lambda = {gamma in Lambda : gamma b_i in Lambda for all i}, computed as
// an integer stabilizer kernel in the lattice coordinates.
inline MultiplierRingBasis multiplier_ring(const ModuleLattice& lat) {
  int n = lat.field->degree();
  // T_i maps lattice coordinates of gamma to lattice coordinates of gamma*b_i
  QMatrix p(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p.at(i, j) = lat.basis[j].coords()[i];
  QMatrix pinv = p.inverse();
  std::vector<QMatrix> ts;
  for (int i = 0; i < n; ++i) ts.push_back(pinv * lat.basis[i].mul_matrix() * p);

  Int den = 1;
  for (const QMatrix& t : ts)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) den = lcm(den, t.at(i, j).get_den());

  // stacked congruence  D*T * c == 0  (mod D), solved over Z via the kernel
  // of [D*T | D*I]
  int m = n * n;
  ZMatrix sys = zmat(m, n + m);
  for (int bi = 0; bi < n; ++bi)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat scaled = ts[bi].at(i, j) * Rat(den);
        sys[bi * n + i][j] = to_integer(scaled);
      }
  for (int i = 0; i < m; ++i) sys[i][n + i] = den;
  ZMatrix ker = integer_kernel(sys);
  ZMatrix gens = zmat(n, (int)ker[0].size());
  for (int i = 0; i < n; ++i)
    for (size_t j = 0; j < ker[0].size(); ++j) gens[i][j] = ker[i][j];
  ZMatrix basis_mat = lattice_basis_from_generators(gens);

  std::vector<FieldElement> out;
  for (int j = 0; j < n; ++j) {
    FieldElement e = FieldElement::zero(lat.field);
    for (int i = 0; i < n; ++i) e = e + lat.basis[i].scaled(Rat(basis_mat[i][j]));
    out.push_back(std::move(e));
  }
  Int idx = abs(zmat_det(basis_mat));
  return {std::move(out), std::move(idx)};
}

// gamma * Lambda* subset of Lambda*  via dual membership of gamma * e_j
inline bool dual_stability_check(const FieldElement& gamma, const ModuleLattice& lat) {
  DualBasis dual = dual_basis(lat);
  for (const FieldElement& e : dual.elements)
    if (!dual_membership(gamma * e, lat)) return false;
  return true;
}

// ---- sup-norm ball enumeration ----

namespace detail {

struct BasisEmbeddings {
  // per basis element: real embedding balls, then (re, im) of complex pairs
  std::vector<std::vector<Ball>> real_parts;
  std::vector<std::vector<std::pair<Ball, Ball>>> cplx_parts;
  Signature sig;
};

inline BasisEmbeddings embed_basis(const std::vector<FieldElement>& basis, long prec) {
  BasisEmbeddings be;
  be.sig = basis[0].field()->signature();
  for (const FieldElement& b : basis) {
    std::vector<Ball> re;
    for (int i = 0; i < be.sig.r_plus_1; ++i) re.push_back(b.embed_real(i, prec));
    std::vector<std::pair<Ball, Ball>> cp;
    for (int i = 0; i < be.sig.s; ++i) {
      CBall z = b.embed_complex(i, prec);
      cp.emplace_back(z.re(), z.im());
    }
    be.real_parts.push_back(std::move(re));
    be.cplx_parts.push_back(std::move(cp));
  }
  return be;
}

// -1 outside, +1 inside, 0 ambiguous at this precision
inline int supnorm_within(const BasisEmbeddings& be, const std::vector<long>& c,
                          const Rat& r, const Rat& r2, mpfr_prec_t prec) {
  int n = (int)be.real_parts.size();
  bool inside = true;
  for (int i = 0; i < be.sig.r_plus_1; ++i) {
    Ball v(prec);
    for (int k = 0; k < n; ++k) {
      if (c[k] == 0) continue;
      v = v + Ball::exact_int(c[k], prec) * be.real_parts[k][i];
    }
    Ball a = ball_ops::abs(v);
    if (a.certainly_gt_rat(r)) return -1;
    if (!a.certainly_le_rat(r)) inside = false;
  }
  for (int i = 0; i < be.sig.s; ++i) {
    Ball re(prec), im(prec);
    for (int k = 0; k < n; ++k) {
      if (c[k] == 0) continue;
      Ball ck = Ball::exact_int(c[k], prec);
      re = re + ck * be.cplx_parts[k][i].first;
      im = im + ck * be.cplx_parts[k][i].second;
    }
    Ball m2 = re * re + im * im;
    if (m2.certainly_gt_rat(r2)) return -1;
    if (!m2.certainly_le_rat(r2)) inside = false;
  }
  return inside ? 1 : 0;
}

}  // namespace detail

// All lattice points with sup over embeddings |sigma_i(x)| <= R (complex
// embeddings by modulus). Complete: the search box comes from certified
// bounds on the inverse Minkowski Gram matrix.
inline std::vector<FieldElement> enumerate_points(const std::vector<FieldElement>& basis,
                                                  const Rat& radius, long prec) {
  if (radius <= 0) throw ConfigError("enumerate_points radius must be positive");
  int n = (int)basis.size();
  const FieldPtr& field = basis[0].field();
  Signature sig = field->signature();

  detail::BasisEmbeddings be = detail::embed_basis(basis, prec);
  mpfr_prec_t wp(std::max<long>(prec, kDefaultPrec));

  // Minkowski quadratic form: G_{jk} = sum_real s_j s_k + 2(Re_j Re_k + Im_j Im_k);
  // sup <= R implies x^t G x <= n R^2, hence |c_k| <= sqrt(n R^2 (G^-1)_{kk}).
  BallMatrix g(n, std::vector<Ball>(n, Ball(wp)));
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      Ball s(wp);
      for (int i = 0; i < sig.r_plus_1; ++i)
        s = s + be.real_parts[j][i] * be.real_parts[k][i];
      for (int i = 0; i < sig.s; ++i) {
        Ball t = be.cplx_parts[j][i].first * be.cplx_parts[k][i].first +
                 be.cplx_parts[j][i].second * be.cplx_parts[k][i].second;
        s = s + Ball::exact_int(2, wp) * t;
      }
      g[j][k] = s;
      g[k][j] = s;
    }
  BallMatrix ginv = ball_mat_inverse(g);
  Rat cap = Rat((long)field->degree()) * radius * radius;
  std::vector<long> box(n);
  for (int k = 0; k < n; ++k) {
    Ball bound = ball_ops::sqrt(Ball::from_rat(cap, wp) * ginv[k][k]);
    box[k] = (long)std::floor(bound.hi_double());
    if (box[k] < 0) box[k] = 0;
  }

  Rat r2 = radius * radius;
  std::vector<std::vector<long>> accepted, ambiguous;
  std::vector<long> c(n, 0);
  // odometer over the coordinate box
  for (int k = 0; k < n; ++k) c[k] = -box[k];
  while (true) {
    int v = detail::supnorm_within(be, c, radius, r2, wp);
    if (v > 0)
      accepted.push_back(c);
    else if (v == 0)
      ambiguous.push_back(c);
    int k = 0;
    while (k < n && c[k] == box[k]) c[k++] = -box[k];
    if (k == n) break;
    ++c[k];
  }

  // resolve borderline points by precision doubling
  long p = std::max<long>(prec, kDefaultPrec);
  while (!ambiguous.empty()) {
    p *= 2;
    if (p > kPrecCap) throw PrecisionExhausted("enumerate_points membership undecidable");
    detail::BasisEmbeddings fine = detail::embed_basis(basis, p);
    std::vector<std::vector<long>> still;
    for (const auto& cc : ambiguous) {
      int v = detail::supnorm_within(fine, cc, radius, r2, mpfr_prec_t(p));
      if (v > 0)
        accepted.push_back(cc);
      else if (v == 0)
        still.push_back(cc);
    }
    ambiguous = std::move(still);
  }

  std::sort(accepted.begin(), accepted.end());
  std::vector<FieldElement> out;
  for (const auto& cc : accepted) {
    FieldElement e = FieldElement::zero(field);
    for (int k = 0; k < n; ++k)
      if (cc[k] != 0) e = e + basis[k].scaled(Rat(cc[k]));
    out.push_back(std::move(e));
  }
  return out;
}

// ---- norm spectrum ----

struct NormLevel {
  Rat level;                // |N(s)| / min nonzero |N|
  std::vector<Int> witness;  // coordinates over the given basis
  Rat signed_norm;          // exact N(s) of the witness
};

struct NormSpectrum {
  Rat min_abs_norm;  // minimal nonzero |N(s)| within the cap
  std::vector<NormLevel> levels;  // ascending, level <= n_max
  long height_cap = 0;
};

// Attained scaled norm levels over a coefficient box |c_k| <= height_cap.
// Attainment is certain; absence of a level is only relative to the cap.
inline NormSpectrum norm_spectrum(const std::vector<FieldElement>& basis, long n_max,
                                  long height_cap) {
  if (n_max < 1) throw ConfigError("norm_spectrum requires n_max >= 1");
  int n = (int)basis.size();
  const FieldPtr& field = basis[0].field();

  std::vector<std::pair<std::vector<long>, Rat>> entries;  // coords, N(s)
  std::vector<long> c(n, -height_cap);
  while (true) {
    bool zero = true;
    for (long x : c)
      if (x) zero = false;
    if (!zero) {
      FieldElement e = FieldElement::zero(field);
      for (int k = 0; k < n; ++k)
        if (c[k] != 0) e = e + basis[k].scaled(Rat(c[k]));
      entries.emplace_back(c, e.norm());
    }
    int k = 0;
    while (k < n && c[k] == height_cap) c[k++] = -height_cap;
    if (k == n) break;
    ++c[k];
  }

  NormSpectrum spec;
  spec.height_cap = height_cap;
  for (const auto& [cc, nv] : entries) {
    Rat a = abs(nv);
    if (a == 0) continue;
    if (spec.min_abs_norm == 0 || a < spec.min_abs_norm) spec.min_abs_norm = a;
  }
  if (spec.min_abs_norm == 0) return spec;

  std::map<Rat, NormLevel> by_level;
  // deterministic witnesses: first hit in ascending coordinate order
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [cc, nv] : entries) {
    Rat a = abs(nv);
    if (a == 0) continue;
    Rat level = a / spec.min_abs_norm;
    if (level > n_max) continue;
    if (by_level.count(level)) continue;
    NormLevel nl;
    nl.level = level;
    for (long x : cc) nl.witness.push_back(Int(x));
    nl.signed_norm = nv;
    by_level.emplace(level, std::move(nl));
  }
  for (auto& [lv, nl] : by_level) spec.levels.push_back(std::move(nl));
  return spec;
}

inline bool level_attained(const NormSpectrum& spec, long k) {
  for (const NormLevel& nl : spec.levels)
    if (nl.level == k) return true;
  return false;
}

// Certificate that p is inert in Z[alpha] for a monogenic power-basis ring:
// the norm form has no nonzero root modulo p (exhaustive over p^deg tuples).
inline bool inert_prime_certificate(const FieldPtr& field, long p) {
  if (p < 2) throw ConfigError("inert_prime_certificate needs a prime p >= 2");
  int n = field->degree();
  ModuleLattice lat = power_basis_lattice(field);
  std::vector<long> c(n, 0);
  while (true) {
    bool zero = true;
    for (long x : c)
      if (x) zero = false;
    if (!zero) {
      FieldElement e = FieldElement::zero(field);
      for (int k = 0; k < n; ++k)
        if (c[k] != 0) e = e + lat.basis[k].scaled(Rat(c[k]));
      Int nv = to_integer(e.norm());
      if (nv % p == 0) return false;
    }
    int k = 0;
    while (k < n && c[k] == p - 1) c[k++] = 0;
    if (k == n) break;
    ++c[k];
  }
  return true;
}

}  // namespace napprox

#endif
