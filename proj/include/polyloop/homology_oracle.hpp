#pragma once

// Independent checks on the decomposition engine: simplicial homology of
// full subcomplexes, the Hochster rank table of the moment-angle complex
// Z_K, and the loop-space series predicted when Z_K is a wedge of spheres.

#include "polyloop/decomposition.hpp"
#include "polyloop/error.hpp"
#include "polyloop/graded_series.hpp"
#include "polyloop/integer_linalg.hpp"
#include "polyloop/simplicial_complex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyloop {

inline constexpr int kDefaultHochsterBound = 12;

namespace detail {

/// Faces of K grouped by dimension, each list sorted.
inline std::vector<std::vector<VertexMask>> faces_by_dimension(const SimplicialComplex &K) {
  std::vector<std::vector<VertexMask>> out(static_cast<std::size_t>(K.dimension() + 1));
  for (VertexMask f : K.faces()) out[static_cast<std::size_t>(popcount(f) - 1)].push_back(f);
  return out;
}

/// Augmented boundary map C_d -> C_{d-1} (C_{-1} = Z for d = 0).
inline IntMatrix boundary_matrix(const std::vector<std::vector<VertexMask>> &faces, int d) {
  const auto &cols = faces[static_cast<std::size_t>(d)];
  if (d == 0) {
    IntMatrix m(1, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m(0, j) = 1;
    return m;
  }
  const auto &rows = faces[static_cast<std::size_t>(d - 1)];
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const VertexMask f = cols[j];
    int sign = 1;
    for (VertexMask rest = f; rest != 0; rest &= rest - 1) {
      const VertexMask bit = rest & (~rest + 1);
      const auto it = std::lower_bound(rows.begin(), rows.end(), f & ~bit);
      m(static_cast<std::size_t>(it - rows.begin()), j) = sign;
      sign = -sign;
    }
  }
  return m;
}

} // namespace detail

/// Reduced rational homology ranks of K; the empty complex has H̃_{-1} = Q.
inline std::map<int, long> simplicial_homology_ranks(const SimplicialComplex &K) {
  if (K.face_count() == 0) return {{-1, 1}};
  const auto faces = detail::faces_by_dimension(K);
  const int top = K.dimension();
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0); // rank ∂_d, d = 0..top+1
  for (int d = 0; d <= top; ++d)
    rank[static_cast<std::size_t>(d)] = rational_rank(detail::boundary_matrix(faces, d));
  std::map<int, long> out;
  for (int d = 0; d <= top; ++d) {
    const long b = static_cast<long>(faces[static_cast<std::size_t>(d)].size()) -
                   static_cast<long>(rank[static_cast<std::size_t>(d)]) -
                   static_cast<long>(rank[static_cast<std::size_t>(d) + 1]);
    if (b != 0) out[d] = b;
  }
  return out;
}

/// Degrees d in which H̃_d(K; Z) has torsion (from Smith invariants of ∂_{d+1}).
inline std::vector<int> simplicial_torsion_degrees(const SimplicialComplex &K) {
  std::vector<int> out;
  if (K.face_count() == 0) return out;
  const auto faces = detail::faces_by_dimension(K);
  for (int d = 1; d <= K.dimension(); ++d) {
    const auto inv = smith_invariants(detail::boundary_matrix(faces, d));
    if (std::any_of(inv.begin(), inv.end(), [](const Integer &x) { return x > 1; })) out.push_back(d - 1);
  }
  return out;
}

struct HochsterTable {
  std::map<int, long> ranks;  // cohomological degree -> rank of H̃^*(Z_K; Q)
  std::map<int, bool> torsion; // filled only when torsion detection is requested
  [[nodiscard]] bool has_torsion() const {
    return std::any_of(torsion.begin(), torsion.end(), [](const auto &kv) { return kv.second; });
  }
};

/// H̃^i(Z_K) ≅ ⊕_{∅≠S⊆[m]} H̃^{i-|S|-1}(K_S).
inline HochsterTable hochster_table(const SimplicialComplex &K, bool detect_torsion = false,
                                    int bound = kDefaultHochsterBound) {
  const int m = K.vertex_count();
  if (m > bound)
    throw Error(ErrorCode::TooLarge, "Hochster table limited to m <= " + std::to_string(bound));
  HochsterTable t;
  const VertexMask all = full_mask(m);
  for (VertexMask s = 1; s <= all && s != 0; ++s) {
    const SimplicialComplex ks = full_subcomplex(K, s);
    const int shift = popcount(s) + 1;
    for (const auto &[d, r] : simplicial_homology_ranks(ks)) t.ranks[d + shift] += r;
    if (detect_torsion)
      // torsion in H̃_d(K_S) shows up in H̃^{d+1}(K_S)
      for (int d : simplicial_torsion_degrees(ks)) t.torsion[d + 1 + shift] = true;
    if (s == all) break;
  }
  for (auto it = t.ranks.begin(); it != t.ranks.end();)
    it = it->second == 0 ? t.ranks.erase(it) : std::next(it);
  return t;
}

/// 1/(1 - Σ_j r_j t^{j-1}) when Z_K is a wedge of spheres (chordal gate).
inline GradedSeries predicted_loop_series(const SimplicialComplex &K) {
  const Classification c = classify_input(K);
  const bool shape_ok = c.flag || K.dimension() <= 1;
  if (!shape_ok || !c.chordal_1_skeleton)
    throw Error(ErrorCode::NotApplicable,
                "Z_K is not known to be a wedge of spheres (needs a flag complex or graph with chordal 1-skeleton)");
  const HochsterTable t = hochster_table(K, true);
  if (t.has_torsion()) throw Error(ErrorCode::NotApplicable, "integral homology of Z_K has torsion");
  GradedSeries f;
  for (const auto &[j, r] : t.ranks) f = f + GradedSeries::monomial(static_cast<std::size_t>(j - 1), Integer(r));
  return GradedSeries::one() / (GradedSeries::one() - f);
}

/// True when K is the boundary of a square (a 4-cycle graph) on 4 vertices.
inline bool is_square_boundary(const SimplicialComplex &K) {
  if (K.vertex_count() != 4 || K.dimension() != 1) return false;
  const auto nb = neighbor_masks(K);
  std::size_t edges = 0;
  for (VertexMask f : K.faces()) edges += popcount(f) == 2;
  return edges == 4 && std::all_of(nb.begin(), nb.end(), [](VertexMask n) { return popcount(n) == 2; });
}

enum class CheckStatus { Pass, Fail, Skipped };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::Pass: return "PASS";
  case CheckStatus::Fail: return "FAIL";
  case CheckStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  std::optional<int> first_divergent_degree;
  std::optional<std::vector<Integer>> engine_series;
  std::optional<std::vector<Integer>> reference_series;

  CheckResult() = default;
  CheckResult(std::string n, CheckStatus s = CheckStatus::Pass, std::string d = {})
      : name(std::move(n)), status(s), detail(std::move(d)) {}
};

struct OracleReport {
  std::vector<CheckResult> checks;
  std::optional<Decomposition> decomposition;
  [[nodiscard]] bool passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult &c) { return c.status == CheckStatus::Fail; });
  }
};

inline std::optional<int> first_divergence(const std::vector<Integer> &a, const std::vector<Integer> &b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return static_cast<int>(i);
  if (a.size() != b.size()) return static_cast<int>(std::min(a.size(), b.size()));
  return std::nullopt;
}

/// The series of ΩZ_K for the boundary of a square: Z_K ≃ S^3 × S^3.
inline GradedSeries square_anchor_series() {
  return GradedSeries::geometric(2) * GradedSeries::geometric(2);
}

/// Runs the engine and checks it against every applicable independent route.
/// Engine errors become failed checks.
inline OracleReport verify_against_oracle(const SimplicialComplex &K, const PairSpec &pairs, int D) {
  OracleReport rep;
  try {
    rep.decomposition = decompose_loop(K, pairs, D);
  } catch (const Error &e) {
    rep.checks.emplace_back("decompose", CheckStatus::Fail, e.what());
    return rep;
  }
  const Decomposition &dec = *rep.decomposition;
  rep.checks.emplace_back("decompose", CheckStatus::Pass, "engine terminated");

  {
    const auto issues = verify_trace(*dec.trace, D);
    CheckResult c{"trace_identities", issues.empty() ? CheckStatus::Pass : CheckStatus::Fail,
                  std::to_string(trace_size(*dec.trace)) + " nodes checked"};
    if (!issues.empty()) c.detail = issues.front().path + " [" + issues.front().rule + "]: " + issues.front().message;
    rep.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"greedy_round_trip", CheckStatus::Pass, "canonical factors recovered from the series"};
    try {
      const PProduct g = greedy_factorize(dec.product.series(), D);
      if (g.listed() != dec.product.listed()) {
        c.status = CheckStatus::Fail;
        c.detail = "listed factors differ from greedy factorization of the series";
      }
      dec.product.check_invariants();
    } catch (const Error &e) {
      c.status = CheckStatus::Fail;
      c.detail = e.what();
    }
    rep.checks.push_back(std::move(c));
  }

  CheckResult ext{"oracle_series"};
  const auto engine = dec.product.series().expand(D);
  ext.engine_series = engine;
  std::optional<GradedSeries> reference;
  if (!pairs.is_moment_angle()) {
    ext.status = CheckStatus::Skipped;
    ext.detail = "no independent oracle for non-moment-angle pairs";
  } else {
    try {
      reference = predicted_loop_series(K);
      ext.detail = "Hochster ranks of a wedge-of-spheres Z_K";
    } catch (const Error &e) {
      if (e.code() != ErrorCode::NotApplicable) throw;
      if (is_square_boundary(K)) {
        reference = square_anchor_series();
        ext.detail = "boundary of a square: Z_K ≃ S^3 × S^3";
      } else {
        ext.status = CheckStatus::Skipped;
        ext.detail = "no independent oracle";
      }
    }
  }
  if (reference) {
    const auto ref = reference->expand(D);
    ext.reference_series = ref;
    ext.first_divergent_degree = first_divergence(engine, ref);
    const bool exact = dec.product.series() == *reference;
    ext.status = (exact && !ext.first_divergent_degree) ? CheckStatus::Pass : CheckStatus::Fail;
  }
  rep.checks.push_back(std::move(ext));
  return rep;
}

} // namespace polyloop
