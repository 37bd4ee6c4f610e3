#pragma once

// Exact one-variable generating functions with arbitrary-precision integer
// coefficients. A GradedSeries is a fraction num/den of integer polynomials
// whose denominator has constant term +1, so the formal power series
// expansion has integer coefficients.

#include "polyloop/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polyloop {

using Integer = boost::multiprecision::cpp_int;

inline constexpr int kDefaultCutoff = 20;

class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static Polynomial constant(Integer value) {
    return Polynomial(std::vector<Integer>{std::move(value)});
  }
  static Polynomial monomial(std::size_t degree, Integer value = 1) {
    std::vector<Integer> c(degree + 1);
    c[degree] = std::move(value);
    return Polynomial(std::move(c));
  }
  static Polynomial from_ints(std::span<const long long> coeffs) {
    std::vector<Integer> c(coeffs.begin(), coeffs.end());
    return Polynomial(std::move(c));
  }

  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept {
    return static_cast<int>(c_.size()) - 1;
  }
  [[nodiscard]] std::span<const Integer> coefficients() const noexcept {
    return c_;
  }
  [[nodiscard]] Integer operator[](std::size_t i) const {
    return i < c_.size() ? c_[i] : Integer(0);
  }
  [[nodiscard]] const Integer &leading() const { return c_.back(); }

  /// Lowest degree with a nonzero coefficient; nullopt for zero.
  [[nodiscard]] std::optional<std::size_t> valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return i;
    return std::nullopt;
  }

  [[nodiscard]] Integer content() const {
    Integer g = 0;
    for (const auto &x : c_) g = boost::multiprecision::gcd(g, x);
    return g;
  }

  [[nodiscard]] Polynomial shifted_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Integer> c(k, Integer(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return Polynomial(std::move(c));
  }

  [[nodiscard]] Polynomial shifted_down(std::size_t k) const {
    for (std::size_t i = 0; i < std::min(k, c_.size()); ++i)
      if (c_[i] != 0)
        throw Error(ErrorCode::InvalidSeries,
                    "polynomial not divisible by t^" + std::to_string(k));
    if (k >= c_.size()) return {};
    return Polynomial(std::vector<Integer>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  friend Polynomial operator+(const Polynomial &a, const Polynomial &b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial &a, const Polynomial &b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial &a) {
    std::vector<Integer> c(a.c_);
    for (auto &x : c) x = -x;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Integer &s, const Polynomial &a) {
    std::vector<Integer> c(a.c_);
    for (auto &x : c) x *= s;
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial &a, const Polynomial &b) {
    return a.c_ == b.c_;
  }

  /// Divides every coefficient by d, which must divide all of them.
  [[nodiscard]] Polynomial divided_by(const Integer &d) const {
    std::vector<Integer> c(c_);
    for (auto &x : c) x /= d;
    return Polynomial(std::move(c));
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Integer> c_;
};

inline Polynomial primitive_part(const Polynomial &p) {
  if (p.is_zero()) return p;
  Integer g = p.content();
  if (p.leading() < 0) g = -g;
  return p.divided_by(g);
}

/// lc(b)^e * a mod b for some e >= 0; enough for gcd computations.
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial &b) {
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const auto shift = static_cast<std::size_t>(a.degree() - db);
    a = b.leading() * a - (a.leading() * b).shifted_up(shift);
  }
  return a;
}

/// Primitive gcd over Z[t] with positive leading coefficient.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Polynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return a;
}

/// a / b when the division is exact over Z[t]; throws otherwise.
inline Polynomial exact_quotient(Polynomial a, const Polynomial &b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionUndefined, "polynomial division by zero");
  if (a.is_zero()) return {};
  std::vector<Integer> q(static_cast<std::size_t>(std::max(a.degree() - b.degree() + 1, 0)));
  while (!a.is_zero() && a.degree() >= b.degree()) {
    Integer c, r;
    boost::multiprecision::divide_qr(a.leading(), b.leading(), c, r);
    if (r != 0) break;
    const auto shift = static_cast<std::size_t>(a.degree() - b.degree());
    q[shift] = c;
    a = a - (c * b).shifted_up(shift);
  }
  if (!a.is_zero())
    throw Error(ErrorCode::InvalidSeries, "inexact polynomial division");
  return Polynomial(std::move(q));
}

class GradedSeries {
public:
  GradedSeries() : num_(), den_(Polynomial::constant(1)) {}
  explicit GradedSeries(Polynomial num, Polynomial den = Polynomial::constant(1))
      : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static GradedSeries from_ints(std::vector<long long> num,
                                std::vector<long long> den = {1}) {
    return GradedSeries(Polynomial::from_ints(num), Polynomial::from_ints(den));
  }
  static GradedSeries zero() { return {}; }
  static GradedSeries one() { return GradedSeries(Polynomial::constant(1)); }
  static GradedSeries monomial(std::size_t degree, Integer c = 1) {
    return GradedSeries(Polynomial::monomial(degree, std::move(c)));
  }
  /// 1/(1 - t^k)
  static GradedSeries geometric(std::size_t k) {
    return GradedSeries(Polynomial::constant(1),
                        Polynomial::constant(1) - Polynomial::monomial(k));
  }

  [[nodiscard]] const Polynomial &numerator() const noexcept { return num_; }
  [[nodiscard]] const Polynomial &denominator() const noexcept { return den_; }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
  [[nodiscard]] bool is_one() const { return den_ == num_; }

  /// Lowest degree with a nonzero coefficient; nullopt for the zero series.
  [[nodiscard]] std::optional<std::size_t> min_degree() const {
    return num_.valuation();
  }

  /// Coefficients c_0..c_D of the formal expansion.
  [[nodiscard]] std::vector<Integer> expand(int D) const {
    if (D < 0) throw Error(ErrorCode::InvalidSeries, "negative expansion degree");
    const auto n = static_cast<std::size_t>(D) + 1;
    std::vector<Integer> c(n);
    const auto dc = den_.coefficients();
    for (std::size_t i = 0; i < n; ++i) {
      Integer acc = num_[i];
      const std::size_t top = std::min(i, dc.size() - 1);
      for (std::size_t k = 1; k <= top; ++k)
        if (dc[k] != 0) acc -= dc[k] * c[i - k];
      c[i] = std::move(acc); // den(0) == 1
    }
    return c;
  }

  [[nodiscard]] Integer constant_term() const { return num_[0]; }

  [[nodiscard]] GradedSeries times_t(std::size_t k) const {
    return GradedSeries(num_.shifted_up(k), den_);
  }
  /// Exact division by t^k; throws if the expansion has terms below t^k.
  [[nodiscard]] GradedSeries divided_by_t(std::size_t k) const {
    return GradedSeries(num_.shifted_down(k), den_);
  }

  friend GradedSeries operator+(const GradedSeries &a, const GradedSeries &b) {
    if (a.den_ == b.den_) return GradedSeries(a.num_ + b.num_, a.den_);
    return GradedSeries(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend GradedSeries operator-(const GradedSeries &a, const GradedSeries &b) {
    if (a.den_ == b.den_) return GradedSeries(a.num_ - b.num_, a.den_);
    return GradedSeries(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend GradedSeries operator-(const GradedSeries &a) {
    return GradedSeries(-a.num_, a.den_);
  }
  friend GradedSeries operator*(const GradedSeries &a, const GradedSeries &b) {
    return GradedSeries(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend GradedSeries operator*(const Integer &s, const GradedSeries &a) {
    return GradedSeries(s * a.num_, a.den_);
  }
  friend GradedSeries operator/(const GradedSeries &a, const GradedSeries &b) {
    if (b.is_zero())
      throw Error(ErrorCode::DivisionUndefined, "division by the zero series");
    return GradedSeries(a.num_ * b.den_, a.den_ * b.num_);
  }
  /// Cross-multiplication equality of fractions.
  friend bool operator==(const GradedSeries &a, const GradedSeries &b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

private:
  // Lowest terms, den(0) == +1.
  void normalize() {
    if (den_.is_zero())
      throw Error(ErrorCode::DivisionUndefined, "zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial::constant(1);
      return;
    }
    const Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
    const Integer c = boost::multiprecision::gcd(num_.content(), den_.content());
    if (c > 1) {
      num_ = num_.divided_by(c);
      den_ = den_.divided_by(c);
    }
    const Integer d0 = den_[0];
    if (d0 == -1) {
      num_ = -num_;
      den_ = -den_;
    } else if (d0 != 1) {
      throw Error(ErrorCode::DivisionUndefined,
                  "denominator constant term is not a unit; expansion undefined");
    }
  }

  Polynomial num_;
  Polynomial den_;
};

inline GradedSeries series_mul(const GradedSeries &a, const GradedSeries &b) {
  return a * b;
}

inline GradedSeries series_div(const GradedSeries &a, const GradedSeries &b) {
  return a / b;
}

inline std::vector<Integer> series_expand(const GradedSeries &a, int D) {
  return a.expand(D);
}

/// Truncated convolution of two coefficient lists through degree D.
inline std::vector<Integer> convolve(std::span<const Integer> a,
                                     std::span<const Integer> b, int D) {
  std::vector<Integer> c(static_cast<std::size_t>(D) + 1);
  for (std::size_t i = 0; i < a.size() && i < c.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < c.size(); ++j)
      c[i + j] += a[i] * b[j];
  return c;
}

} // namespace polyloop
