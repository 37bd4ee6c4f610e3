#pragma once

// Calculus of homotopy types in the classes W (finite-type wedges of simply
// connected spheres) and P (finite-type products of S^1, S^3, S^7 and loops
// on simply connected spheres), tracked through homology Poincaré series.
//
// A space in P is recorded twice: the exact Poincaré series, and the
// multiset of canonical factors whose bottom homology degree is at most the
// cutoff D. Factors above the cutoff live only in the series.

#include "polyloop/error.hpp"
#include "polyloop/graded_series.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace polyloop {

namespace detail {

/// binomial(c, k) for a non-negative big c and small k.
inline Integer binomial(const Integer &c, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r = r * (c - i) / (i + 1);
  return r;
}

enum class PowerKind {
  OnePlus,       // (1 + t^d)^c
  OnePlusInv,    // (1 + t^d)^{-c}
  OneMinus,      // (1 - t^d)^c
  OneMinusInv,   // (1 - t^d)^{-c}
};

/// Multiplies a truncated expansion in place by a binomial power of t^d.
inline void multiply_power(std::vector<Integer> &a, int d, const Integer &c, PowerKind kind) {
  if (c == 0 || d <= 0) return;
  const int D = static_cast<int>(a.size()) - 1;
  const int kmax = D / d;
  std::vector<Integer> w(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) {
    const bool odd = (k % 2) == 1;
    switch (kind) {
    case PowerKind::OnePlus: w[k] = binomial(c, k); break;
    case PowerKind::OneMinus: w[k] = odd ? -binomial(c, k) : binomial(c, k); break;
    case PowerKind::OneMinusInv: w[k] = binomial(c + k - 1, k); break;
    case PowerKind::OnePlusInv: {
      Integer b = binomial(c + k - 1, k);
      w[k] = odd ? -b : b;
      break;
    }
    }
  }
  for (int i = D; i >= 0; --i) {
    Integer acc = 0;
    for (int k = 0; k <= i / d; ++k)
      if (w[k] != 0) acc += w[k] * a[static_cast<std::size_t>(i - k * d)];
    a[static_cast<std::size_t>(i)] = std::move(acc);
  }
}

inline bool all_non_negative(std::span<const Integer> a) {
  for (const auto &x : a)
    if (x < 0) return false;
  return true;
}

} // namespace detail

/// Reduced homology series of a connected space with free homology.
struct CellSeries {
  GradedSeries reduced;

  static CellSeries point() { return {}; }
  /// A space whose suspension is the wedge of S^d over the listed d.
  static CellSeries from_suspension_dims(std::span<const int> dims) {
    GradedSeries s;
    for (int d : dims) {
      if (d < 2)
        throw Error(ErrorCode::InvalidPairs,
                    "suspension sphere dimension " + std::to_string(d) + " < 2");
      s = s + GradedSeries::monomial(static_cast<std::size_t>(d - 1));
    }
    return {s};
  }

  [[nodiscard]] bool is_trivial() const { return reduced.is_zero(); }

  void validate(int D) const {
    const auto c = reduced.expand(D);
    if (c[0] != 0 || !detail::all_non_negative(c))
      throw Error(ErrorCode::InvalidPairs, "cell series must vanish in degree 0 and be non-negative");
  }

  /// Reduced series of the Cartesian product of the given spaces.
  static CellSeries product(std::span<const CellSeries> parts) {
    GradedSeries total = GradedSeries::one();
    for (const auto &p : parts) total = total * (GradedSeries::one() + p.reduced);
    return {total - GradedSeries::one()};
  }
};

/// A wedge of spheres: the degree-n coefficient of `cells` counts copies of S^n.
struct SphereWedge {
  GradedSeries cells;

  [[nodiscard]] bool is_trivial() const { return cells.is_zero(); }

  void validate(int D) const {
    const auto md = cells.min_degree();
    if (md && *md < 2)
      throw Error(ErrorCode::NotSimplyConnectedOutput,
                  "wedge contains a sphere of dimension " + std::to_string(*md));
    if (!detail::all_non_negative(cells.expand(D)))
      throw Error(ErrorCode::NotSimplyConnectedOutput, "negative sphere multiplicity");
  }
};

enum class FactorKind { Sphere, LoopSphere };

struct PFactor {
  FactorKind kind;
  int dim; // S^dim or ΩS^dim

  static PFactor sphere(int d) {
    if (d != 1 && d != 3 && d != 7)
      throw Error(ErrorCode::NotCanonicalP, "S^" + std::to_string(d) + " cannot be an H-space factor");
    return {FactorKind::Sphere, d};
  }
  static PFactor loop_sphere(int n) {
    if (n < 3 || n == 4 || n == 8)
      throw Error(ErrorCode::NotCanonicalP, "ΩS^" + std::to_string(n) + " is not in canonical form");
    return {FactorKind::LoopSphere, n};
  }
  /// The canonical factor whose homology starts in degree d.
  static PFactor with_bottom_degree(int d) {
    return (d == 1 || d == 3 || d == 7) ? sphere(d) : loop_sphere(d + 1);
  }

  [[nodiscard]] int bottom_degree() const {
    return kind == FactorKind::Sphere ? dim : dim - 1;
  }
  [[nodiscard]] GradedSeries series() const {
    const auto d = static_cast<std::size_t>(bottom_degree());
    return kind == FactorKind::Sphere ? GradedSeries::one() + GradedSeries::monomial(d)
                                      : GradedSeries::geometric(d);
  }
  [[nodiscard]] std::string name() const {
    return (kind == FactorKind::Sphere ? "S^" : "ΩS^") + std::to_string(dim);
  }

  friend auto operator<=>(const PFactor &a, const PFactor &b) {
    if (auto c = a.bottom_degree() <=> b.bottom_degree(); c != 0) return c;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    return a.dim <=> b.dim;
  }
  friend bool operator==(const PFactor &, const PFactor &) = default;
};

struct FactorCount {
  PFactor factor;
  Integer mult;
  friend bool operator==(const FactorCount &, const FactorCount &) = default;
};

/// An object of class P: exact Poincaré series plus its canonical factors
/// through the cutoff.
class PProduct {
public:
  explicit PProduct(int cutoff = kDefaultCutoff) : series_(GradedSeries::one()), cutoff_(cutoff) {}

  static PProduct trivial(int cutoff) { return PProduct(cutoff); }

  /// Product of the listed factors, each repeated `mult` times.
  static PProduct from_factors(std::span<const FactorCount> factors, int cutoff) {
    PProduct p(cutoff);
    for (const auto &f : factors) {
      if (f.mult <= 0) continue;
      // exact series power; multiplicities here are small
      const GradedSeries fs = f.factor.series();
      for (Integer i = 0; i < f.mult; ++i) p.series_ = p.series_ * fs;
      p.add(f.factor, f.mult);
    }
    return p;
  }

  [[nodiscard]] const GradedSeries &series() const noexcept { return series_; }
  [[nodiscard]] int cutoff() const noexcept { return cutoff_; }
  [[nodiscard]] const std::map<PFactor, Integer> &listed() const noexcept { return listed_; }
  [[nodiscard]] bool is_trivial() const { return series_.is_one(); }

  /// Listed factors in canonical order: ascending (bottom degree, kind).
  [[nodiscard]] std::vector<FactorCount> factors() const {
    std::vector<FactorCount> out;
    for (const auto &[f, k] : listed_) out.push_back({f, k});
    return out;
  }

  /// Adds `mult` copies of `f` to the listed multiset (if within the cutoff);
  /// the series is left to the caller.
  void add(const PFactor &f, const Integer &mult) {
    if (mult == 0 || f.bottom_degree() > cutoff_) return;
    listed_[f] += mult;
  }
  void set_series(GradedSeries s) { series_ = std::move(s); }

  /// Adds `mult` copies of ΩS^n, rewriting ΩS^n ≃ S^{n-1} × ΩS^{2n-1} for n in {2,4,8}.
  void add_loop_on_sphere(int n, const Integer &mult) {
    if (n == 2 || n == 4 || n == 8) {
      add(PFactor::sphere(n - 1), mult);
      add(PFactor::loop_sphere(2 * n - 1), mult);
    } else {
      add(PFactor::loop_sphere(n), mult);
    }
  }

  /// Restricts the listed factors to a (smaller) cutoff.
  [[nodiscard]] PProduct with_cutoff(int D) const {
    PProduct p(D);
    p.series_ = series_;
    for (const auto &[f, k] : listed_) p.add(f, k);
    return p;
  }

  /// Expansion of series ÷ ∏ listed factors through the cutoff.
  [[nodiscard]] std::vector<Integer> residual_expansion() const {
    auto r = series_.expand(cutoff_);
    for (const auto &[f, k] : listed_) {
      if (f.kind == FactorKind::Sphere)
        detail::multiply_power(r, f.bottom_degree(), k, detail::PowerKind::OnePlusInv);
      else
        detail::multiply_power(r, f.bottom_degree(), k, detail::PowerKind::OneMinus);
    }
    return r;
  }

  /// Throws NotCanonicalP when the recorded factors do not account for the series.
  void check_invariants() const {
    const auto e = series_.expand(cutoff_);
    if (e[0] != 1 || !detail::all_non_negative(e))
      throw Error(ErrorCode::NotCanonicalP, "series is not a Poincaré series of a connected space");
    const auto r = residual_expansion();
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != (i == 0 ? 1 : 0))
        throw Error(ErrorCode::NotCanonicalP,
                    "listed factors disagree with the series in degree " + std::to_string(i));
  }

  friend PProduct operator*(const PProduct &a, const PProduct &b) {
    PProduct p(std::min(a.cutoff_, b.cutoff_));
    p.series_ = a.series_ * b.series_;
    for (const auto &[f, k] : a.listed_) p.add(f, k);
    for (const auto &[f, k] : b.listed_) p.add(f, k);
    return p;
  }

  friend bool operator==(const PProduct &a, const PProduct &b) {
    return a.cutoff_ == b.cutoff_ && a.listed_ == b.listed_ && a.series_ == b.series_;
  }

private:
  GradedSeries series_;
  std::map<PFactor, Integer> listed_;
  int cutoff_;
};

/// X * Y ≃ Σ(X ∧ Y).
inline SphereWedge join_cells(const CellSeries &a, const CellSeries &b) {
  SphereWedge w{(a.reduced * b.reduced).times_t(1)};
  if (const auto md = w.cells.min_degree(); md && *md < 2)
    throw Error(ErrorCode::NotSimplyConnectedOutput, "join has cells below degree 2");
  return w;
}

/// Σ of a product in P, split as a wedge of spheres.
inline SphereWedge suspension_splitting(const PProduct &p) {
  return {(p.series() - GradedSeries::one()).times_t(1)};
}

/// Graded basic-product counts: the unique l_1..l_D with
/// ∏ (1 - t^n)^{l_n} ≡ 1 - f  (mod t^{D+1}). Index 0 of the result is 0.
inline std::vector<Integer> lyndon_counts(const GradedSeries &f, int D) {
  auto r = f.expand(D);
  if (r[0] != 0) throw Error(ErrorCode::NoSolution, "generating series has a constant term");
  for (auto &x : r) x = -x;
  r[0] = 1;
  std::vector<Integer> ell(static_cast<std::size_t>(D) + 1);
  for (int n = 1; n <= D; ++n) {
    const Integer l = -r[static_cast<std::size_t>(n)];
    if (l < 0)
      throw Error(ErrorCode::NoSolution, "negative basic-product count in degree " + std::to_string(n));
    ell[static_cast<std::size_t>(n)] = l;
    detail::multiply_power(r, n, l, detail::PowerKind::OneMinusInv);
  }
  return ell;
}

/// Ω of a wedge of spheres, expanded as a product of loops on spheres.
inline PProduct hilton_milnor(const SphereWedge &w, int D) {
  w.validate(D);
  const GradedSeries letters = w.cells.divided_by_t(1);
  const auto ell = lyndon_counts(letters, D);
  PProduct p(D);
  p.set_series(GradedSeries::one() / (GradedSeries::one() - letters));
  for (int n = 1; n <= D; ++n)
    if (ell[static_cast<std::size_t>(n)] > 0) p.add_loop_on_sphere(n + 1, ell[static_cast<std::size_t>(n)]);
  return p;
}

/// Ω(X ⋉ Y) ≃ Ω(X * ΩY) × ΩY, given the cells of X and the loop space ΩY.
inline PProduct loop_half_smash(const CellSeries &x, const PProduct &y_loop, int D) {
  const CellSeries loop_cells{y_loop.series() - GradedSeries::one()};
  return hilton_milnor(join_cells(x, loop_cells), D) * y_loop;
}

/// Residual wedge of the looped wedge-into-product fibration:
/// ⋁_{|T|>=2} (Σ ∧_{i∈T} ΩX_i)^{∨(|T|-1)}.
inline SphereWedge porter_residual(std::span<const PProduct> summands) {
  const std::size_t m = summands.size();
  std::vector<GradedSeries> reduced;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < m; ++i) {
    reduced.push_back(summands[i].series() - GradedSeries::one());
    if (!reduced.back().is_zero()) live.push_back(i);
  }
  GradedSeries total;
  const std::size_t n = live.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size < 2) continue;
    GradedSeries term = GradedSeries::one();
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (std::size_t{1} << j)) term = term * reduced[live[j]];
    total = total + Integer(size - 1) * term;
  }
  return {total.times_t(1)};
}

/// Ω(X_1 ∨ ... ∨ X_m) ≃ ∏ ΩX_i × Ω(residual wedge).
inline PProduct porter_loop_wedge(std::span<const PProduct> summands, int D) {
  PProduct p(D);
  for (const auto &s : summands) p = p * s;
  return p * hilton_milnor(porter_residual(summands), D);
}

/// Recovers the canonical factors of a P-series by bottom-degree induction.
inline PProduct greedy_factorize(const GradedSeries &s, int D) {
  auto r = s.expand(D);
  if (r[0] != 1) throw Error(ErrorCode::NotCanonicalP, "series does not start with 1");
  PProduct p(D);
  p.set_series(s);
  for (int d = 1; d <= D; ++d) {
    if (!detail::all_non_negative(r))
      throw Error(ErrorCode::NotCanonicalP, "negative coefficient before degree " + std::to_string(d));
    const Integer c = r[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    const PFactor f = PFactor::with_bottom_degree(d);
    if (f.kind == FactorKind::Sphere)
      detail::multiply_power(r, d, c, detail::PowerKind::OnePlusInv);
    else
      detail::multiply_power(r, d, c, detail::PowerKind::OneMinus);
    p.add(f, c);
  }
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != (i == 0 ? 1 : 0))
      throw Error(ErrorCode::NotCanonicalP, "residual is not 1 in degree " + std::to_string(i));
  return p;
}

/// The complementary factor Q with big ≃ small × Q.
inline PProduct divide_products(const PProduct &big, const PProduct &small) {
  const int D = std::min(big.cutoff(), small.cutoff());
  const GradedSeries q = big.series() / small.series();
  const auto e = q.expand(D);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0)
      throw Error(ErrorCode::NotADivisor, "quotient has a negative coefficient in degree " + std::to_string(i));
  return greedy_factorize(q, D);
}

} // namespace polyloop
