#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms with
// transformation matrices, lattice kernels, and the splitting
// Z^n = N(A) ⊕ C(A) for an idempotent integer matrix A.

#include "polyloop/error.hpp"
#include "polyloop/graded_series.hpp" // Integer

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyloop {

using IntVector = std::vector<Integer>;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector> &rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length n).
  static IntMatrix from_columns(const std::vector<IntVector> &cols, std::size_t n) {
    IntMatrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  Integer &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  [[nodiscard]] IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

  void add_row_multiple(std::size_t target, std::size_t source, const Integer &c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += c * (*this)(source, j);
  }
  void add_col_multiple(std::size_t target, std::size_t source, const Integer &c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += c * (*this)(i, source);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  /// (row_a, row_b) <- (x row_a + y row_b, u row_a + v row_b)
  void combine_rows(std::size_t a, std::size_t b, const Integer &x, const Integer &y,
                    const Integer &u, const Integer &v) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer ra = (*this)(a, j), rb = (*this)(b, j);
      (*this)(a, j) = x * ra + y * rb;
      (*this)(b, j) = u * ra + v * rb;
    }
  }

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend IntVector operator*(const IntMatrix &a, const IntVector &x) {
    if (a.cols_ != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes");
    IntVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }
  friend IntMatrix operator-(const IntMatrix &a, const IntMatrix &b) {
    IntMatrix c(a);
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct ExtendedGcd {
  Integer g; // non-negative
  Integer x;
  Integer y; // a x + b y = g
};

inline ExtendedGcd extended_gcd(const Integer &a, const Integer &b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Integer q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Floor division for signed big integers.
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

struct HermiteForm {
  IntMatrix h;                     // row-style Hermite normal form
  IntMatrix u;                     // unimodular, u * a == h
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

/// Row Hermite normal form: pivots positive, entries above a pivot reduced
/// into [0, pivot).
inline HermiteForm hermite_form(const IntMatrix &a) {
  HermiteForm out{a, IntMatrix::identity(a.rows()), {}};
  IntMatrix &h = out.h;
  IntMatrix &u = out.u;
  std::size_t r = 0;
  for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      const auto [g, x, y] = extended_gcd(h(r, col), h(i, col));
      const Integer p = h(r, col) / g, q = h(i, col) / g;
      h.combine_rows(r, i, x, y, -q, p);
      u.combine_rows(r, i, x, y, -q, p);
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(h(i, col), h(r, col));
      if (q == 0) continue;
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    out.pivots.push_back(col);
    ++r;
  }
  return out;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Rank over Q by fraction-free elimination.
inline std::size_t rational_rank(IntMatrix a) {
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t p = rank;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != rank)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(p, j));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j)
        a(i, j) = (a(i, j) * a(rank, col) - a(i, col) * a(rank, j)) / prev;
      a(i, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return rank;
}

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
inline std::vector<Integer> smith_invariants(const IntMatrix &a) {
  IntMatrix m = a;
  for (;;) {
    m = hermite_form(m).h.transpose();
    bool diagonal = true;
    for (std::size_t i = 0; i < m.rows() && diagonal; ++i)
      for (std::size_t j = 0; j < m.cols() && diagonal; ++j)
        if (i != j && m(i, j) != 0) diagonal = false;
    if (diagonal) break;
  }
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (m(i, i) != 0) d.push_back(boost::multiprecision::abs(m(i, i)));
  // enforce the divisibility chain
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const Integer g = boost::multiprecision::gcd(d[i], d[j]);
      const Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

/// Canonical basis (Hermite-reduced) of the lattice {x : A x = 0}.
inline std::vector<IntVector> kernel_basis(const IntMatrix &a) {
  const HermiteForm hf = hermite_form(a.transpose());
  std::vector<IntVector> raw;
  for (std::size_t i = hf.rank(); i < hf.u.rows(); ++i) raw.push_back(hf.u.row(i));
  if (raw.empty()) return {};
  const HermiteForm canon = hermite_form(IntMatrix::from_rows(raw));
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < canon.rank(); ++i) out.push_back(canon.h.row(i));
  return out;
}

/// Solves A y = x over the integers; nullopt if x is not in the column lattice.
inline std::optional<IntVector> solve_integer(const IntMatrix &a, const IntVector &x) {
  if (x.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  // rows of H = U Aᵀ span the column lattice of A
  const HermiteForm hf = hermite_form(a.transpose());
  IntVector rest = x;
  IntVector coeff(hf.u.rows()); // combination of rows of H
  for (std::size_t p = 0; p < hf.rank(); ++p) {
    const std::size_t c = hf.pivots[p];
    Integer q, r;
    boost::multiprecision::divide_qr(rest[c], hf.h(p, c), q, r);
    if (r != 0) return std::nullopt;
    coeff[p] = q;
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= q * hf.h(p, j);
  }
  for (const auto &v : rest)
    if (v != 0) return std::nullopt;
  // x = coeffᵀ H = coeffᵀ U Aᵀ, so y = Uᵀ coeff
  return hf.u.transpose() * coeff;
}

inline bool is_idempotent(const IntMatrix &a) { return a.is_square() && a * a == a; }

inline void require_idempotent(const IntMatrix &a) {
  if (!a.is_square()) throw Error(ErrorCode::NotIdempotent, "matrix is not square");
  if (a * a != a) throw Error(ErrorCode::NotIdempotent, "A*A != A");
}

struct IdempotentSplit {
  std::vector<IntVector> null_basis;
  std::vector<IntVector> col_basis;
  Integer determinant; // of [col_basis | null_basis] as columns; always ±1
};

inline IdempotentSplit idempotent_split(const IntMatrix &a) {
  require_idempotent(a);
  const std::size_t n = a.rows();
  IdempotentSplit s;
  s.null_basis = kernel_basis(a);
  // C(A) = {x : A x = x} for idempotent A
  s.col_basis = kernel_basis(a - IntMatrix::identity(n));
  std::vector<IntVector> all = s.col_basis;
  all.insert(all.end(), s.null_basis.begin(), s.null_basis.end());
  if (all.size() != n)
    throw Error(ErrorCode::NotIdempotent, "null and column ranks do not sum to n");
  s.determinant = determinant(IntMatrix::from_columns(all, n));
  return s;
}

/// True iff x lies in the column space of A; in that case A x = x is checked.
inline bool verify_column_fixed(const IntMatrix &a, const IntVector &x) {
  require_idempotent(a);
  if (!solve_integer(a, x)) return false;
  if (a * x != x) throw std::logic_error("column-space vector not fixed by an idempotent");
  return true;
}

struct BezoutCertificate {
  Integer gcd;
  IntVector coefficients; // Σ c_i v_i == gcd
  bool primitive = false;
  std::optional<std::size_t> odd_component; // first odd entry when primitive
};

inline BezoutCertificate primitive_bezout(const IntVector &v) {
  if (std::all_of(v.begin(), v.end(), [](const Integer &x) { return x == 0; }))
    throw Error(ErrorCode::ZeroVector, "gcd of the zero vector");
  BezoutCertificate c;
  c.coefficients.assign(v.size(), 0);
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (g == 0) {
      g = boost::multiprecision::abs(v[i]);
      c.coefficients[i] = v[i] < 0 ? -1 : 1;
      continue;
    }
    const auto [ng, x, y] = extended_gcd(g, v[i]);
    for (std::size_t j = 0; j < i; ++j) c.coefficients[j] *= x;
    c.coefficients[i] = y;
    g = ng;
  }
  c.gcd = g;
  Integer check = 0;
  for (std::size_t i = 0; i < v.size(); ++i) check += c.coefficients[i] * v[i];
  if (check != g) throw std::logic_error("Bezout certificate failed to verify");
  c.primitive = (g == 1);
  if (c.primitive)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (boost::multiprecision::abs(v[i]) % 2 == 1) {
        c.odd_component = i;
        break;
      }
  return c;
}

/// A U D U^{-1} with D a random 0/1 diagonal and U a product of elementary
/// row operations with multipliers in [-bound, bound].
template <class Rng>
IntMatrix random_idempotent(std::size_t n, Rng &rng, int bound = 2) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> mult(-bound, bound);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  IntMatrix u = IntMatrix::identity(n), u_inv = IntMatrix::identity(n);
  const std::size_t steps = 2 * n;
  for (std::size_t s = 0; s < steps && n > 1; ++s) {
    const std::size_t i = idx(rng);
    std::size_t j = idx(rng);
    if (i == j) j = (j + 1) % n;
    const Integer c = mult(rng);
    u.add_row_multiple(i, j, c);
    u_inv.add_col_multiple(j, i, -c);
  }
  IntMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = bit(rng);
  return u * d * u_inv;
}

struct LinalgSuiteResult {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures; // first few only
  [[nodiscard]] bool ok() const { return trials == passed; }
};

/// Randomized checks of the idempotent splitting and Bézout certificates:
/// unimodular concatenated bases, A y = y on the column basis, A x = 0 on
/// the null basis, and a verified certificate for a random vector.
inline LinalgSuiteResult run_idempotent_suite(std::size_t count, std::uint64_t seed,
                                              std::size_t max_n = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::uniform_int_distribution<int> entry(-12, 12);
  LinalgSuiteResult res;
  auto fail = [&](std::size_t trial, const std::string &why) {
    if (res.failures.size() < 10) res.failures.push_back("trial " + std::to_string(trial) + ": " + why);
  };
  for (std::size_t trial = 0; trial < count; ++trial) {
    ++res.trials;
    const std::size_t n = size(rng);
    const IntMatrix a = random_idempotent(n, rng);
    IntVector v(n);
    do {
      for (auto &x : v) x = entry(rng);
    } while (std::all_of(v.begin(), v.end(), [](const Integer &x) { return x == 0; }));
    try {
      const IdempotentSplit s = idempotent_split(a);
      bool good = true;
      if (s.null_basis.size() + s.col_basis.size() != n) { fail(trial, "ranks do not sum to n"); good = false; }
      if (boost::multiprecision::abs(s.determinant) != 1) { fail(trial, "basis not unimodular"); good = false; }
      for (const auto &y : s.col_basis)
        if (a * y != y || !verify_column_fixed(a, y)) { fail(trial, "column vector not fixed"); good = false; }
      for (const auto &x : s.null_basis)
        if (a * x != IntVector(n)) { fail(trial, "null vector not annihilated"); good = false; }
      const BezoutCertificate c = primitive_bezout(v);
      Integer dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += c.coefficients[i] * v[i];
      if (dot != c.gcd) { fail(trial, "Bezout certificate"); good = false; }
      if (c.primitive && !c.odd_component) { fail(trial, "primitive vector without odd entry"); good = false; }
      if (good) ++res.passed;
    } catch (const std::exception &e) {
      fail(trial, e.what());
    }
  }
  return res;
}

} // namespace polyloop
