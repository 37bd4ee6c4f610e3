#pragma once

// Loop-space decomposition of polyhedral products (CA,A)^K for K the
// k-skeleton of a flag complex. The recursion splits K at a non-dominating
// vertex v into K1 = K_{v ∪ N(v)}, K2 = K_{V \ v} glued along L = K_{N(v)}
// and assembles
//
//   Ω(CA,A)^K ≃ Ω(CA,A)^L × Ω((𝒜 * 𝒜') ∨ (G ⋊ 𝒜') ∨ (𝒜 ⋉ H))
//
// where 𝒜 = A_v, 𝒜' = ∏_{i ∉ v ∪ N(v)} A_i and ΩG, ΩH are the complements
// of Ω(CA,A)^L in Ω(CA,A)^{K1}, Ω(CA,A)^{K2}. Skeleta of simplices are
// handled directly as wedges of spheres.

#include "polyloop/error.hpp"
#include "polyloop/graded_series.hpp"
#include "polyloop/homotopy_algebra.hpp"
#include "polyloop/simplicial_complex.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace polyloop {

/// Per-vertex data for the pairs (CA_i, A_i): the reduced homology series of
/// A_i (equivalently the sphere cells of ΣA_i shifted down by one).
class PairSpec {
public:
  PairSpec() = default;
  explicit PairSpec(std::vector<CellSeries> vertices) : vertices_(std::move(vertices)) {}

  /// A_i = S^1 for all i: the moment-angle complex.
  static PairSpec moment_angle(int m) { return disks(2, m); }

  /// A_i = S^{n-1}: the pairs (D^n, S^{n-1}).
  static PairSpec disks(int n, int m) {
    if (n < 2) throw Error(ErrorCode::InvalidPairs, "disks:N needs N >= 2");
    const int dims[] = {n};
    return PairSpec(std::vector<CellSeries>(static_cast<std::size_t>(m), CellSeries::from_suspension_dims(dims)));
  }

  /// Sphere dimensions of ΣA_i, one list per vertex.
  static PairSpec from_suspension_dims(const std::vector<std::vector<int>> &dims) {
    std::vector<CellSeries> v;
    for (const auto &d : dims) {
      if (d.empty()) throw Error(ErrorCode::InvalidPairs, "a vertex has no suspension spheres");
      v.push_back(CellSeries::from_suspension_dims(d));
    }
    return PairSpec(std::move(v));
  }

  [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
  [[nodiscard]] const CellSeries &at(int label) const {
    return vertices_.at(static_cast<std::size_t>(label - 1));
  }
  [[nodiscard]] const std::vector<CellSeries> &vertices() const noexcept { return vertices_; }

  /// Pairs for a relabelled full subcomplex; labels are 1-based.
  [[nodiscard]] PairSpec restricted(const std::vector<int> &labels) const {
    std::vector<CellSeries> v;
    for (int l : labels) v.push_back(at(l));
    return PairSpec(std::move(v));
  }

  [[nodiscard]] bool is_moment_angle() const {
    const GradedSeries t = GradedSeries::monomial(1);
    for (const auto &c : vertices_)
      if (!(c.reduced == t)) return false;
    return !vertices_.empty();
  }

  void validate(int m, int D) const {
    if (static_cast<int>(vertices_.size()) != m)
      throw Error(ErrorCode::InvalidPairs, "pair data covers " + std::to_string(vertices_.size()) +
                                               " vertices, complex has " + std::to_string(m));
    for (const auto &c : vertices_) {
      c.validate(D);
      const auto md = c.reduced.min_degree();
      if (!md) throw Error(ErrorCode::InvalidPairs, "A_i must not be contractible");
    }
  }

private:
  std::vector<CellSeries> vertices_;
};

namespace rules {
inline constexpr const char *kSingleVertex = "single_vertex";
inline constexpr const char *kEmptyComplex = "empty_complex";
inline constexpr const char *kSkeletonOfSimplex = "skeleton_of_simplex";
inline constexpr const char *kPushout = "pushout_full_subcomplex";
inline constexpr const char *kPushoutEmpty = "pushout_common_face";
} // namespace rules

struct TraceNode;

struct TraceEdge {
  std::string role;        // "K1", "K2" or "L"
  std::vector<int> labels; // child vertex i is parent vertex labels[i-1]
  std::shared_ptr<const TraceNode> node;
};

/// One step of the derivation. Vertex labels are local to the node; edges
/// carry the relabelling into the parent.
struct TraceNode {
  std::string rule;
  std::string anchor;
  int vertex_count = 0;
  std::vector<std::vector<int>> facets;
  int split_vertex = 0; // 0 when the rule does not split
  std::vector<GradedSeries> pair_cells;
  std::map<std::string, GradedSeries> inputs;
  GradedSeries output;
  std::vector<TraceEdge> children;
};

inline std::string anchor_for(const std::string &rule) {
  if (rule == rules::kSingleVertex) return "one vertex: the polyhedral product is contractible";
  if (rule == rules::kEmptyComplex) return "empty complex: the polyhedral product is a point";
  if (rule == rules::kSkeletonOfSimplex)
    return "k-skeleton of a simplex: wedge of (Σ^{k+1} A_{i_1} ∧ ... ∧ A_{i_j})^{∨ C(j-1,k+1)}, looped by Hilton-Milnor";
  if (rule == rules::kPushout)
    return "vertex pushout K1 ∪_L K2 with L a proper full subcomplex: "
           "ΩL × Ω((𝒜*𝒜') ∨ (G⋊𝒜') ∨ (𝒜⋉H))";
  if (rule == rules::kPushoutEmpty)
    return "vertex pushout over the empty face: Ω((𝒜*𝒜') ∨ (K1⋊𝒜') ∨ (𝒜⋉K2))";
  return {};
}

/// (CA,A)^K for K the k-skeleton of Δ^{m-1}, as a wedge of spheres.
inline SphereWedge skeleton_simplex_wedge(int m, int k, const PairSpec &pairs) {
  if (k < 0 || k > m - 1) throw Error(ErrorCode::BadIndex, "skeleton dimension outside 0..m-1");
  if (static_cast<int>(pairs.size()) != m) throw Error(ErrorCode::InvalidPairs, "pair count mismatch");
  GradedSeries cells;
  const VertexMask all = full_mask(m);
  for (VertexMask s = 1; s <= all && s != 0; ++s) {
    const int j = popcount(s);
    if (j >= k + 2) {
      GradedSeries term = GradedSeries::monomial(static_cast<std::size_t>(k + 1));
      for (int v : mask_to_labels(s)) term = term * pairs.at(v).reduced;
      cells = cells + Integer(detail::binomial(Integer(j - 1), k + 1)) * term;
    }
    if (s == all) break;
  }
  return {cells};
}

/// dim(K) when K is a full skeleton of the simplex on its vertices.
inline std::optional<int> simplex_skeleton_dimension(const SimplicialComplex &K) {
  const int m = K.vertex_count();
  const int dim = K.dimension();
  std::size_t expected = 0;
  for (int i = 1; i <= dim + 1; ++i)
    expected += static_cast<std::size_t>(detail::binomial(Integer(m), i));
  if (expected != K.face_count()) return std::nullopt;
  return dim;
}

struct Decomposition {
  PProduct product;
  std::shared_ptr<const TraceNode> trace;
};

class DecompositionEngine {
public:
  explicit DecompositionEngine(int cutoff = kDefaultCutoff) : cutoff_(cutoff) {
    if (cutoff < 1) throw Error(ErrorCode::InvalidSeries, "cutoff must be >= 1");
  }

  /// Ω(CA,A)^K. `split_vertex` forces the top-level splitting vertex.
  Decomposition decompose(const SimplicialComplex &K, const PairSpec &pairs,
                          std::optional<int> split_vertex = std::nullopt) {
    if (K.empty()) throw Error(ErrorCode::NotFlagSkeleton, "empty input complex");
    if (!classify_input(K).k_skeleton_of_flag)
      throw Error(ErrorCode::NotFlagSkeleton, "K is not the k-skeleton of a flag complex");
    pairs.validate(K.vertex_count(), cutoff_);
    return solve(K, pairs, split_vertex);
  }

  [[nodiscard]] int cutoff() const noexcept { return cutoff_; }

  [[nodiscard]] std::size_t memo_size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
  }

private:
  std::string memo_key(const SimplicialComplex &K, const PairSpec &pairs) const {
    std::ostringstream os;
    os << K.vertex_count() << '|';
    for (VertexMask f : K.facets()) os << f << ',';
    os << '|';
    for (const auto &c : pairs.vertices()) {
      for (const auto &x : c.reduced.numerator().coefficients()) os << x << ' ';
      os << '/';
      for (const auto &x : c.reduced.denominator().coefficients()) os << x << ' ';
      os << ';';
    }
    return os.str();
  }

  static std::shared_ptr<TraceNode> make_node(const char *rule, const SimplicialComplex &K,
                                              const PairSpec &pairs) {
    auto node = std::make_shared<TraceNode>();
    node->rule = rule;
    node->anchor = anchor_for(rule);
    node->vertex_count = K.vertex_count();
    node->facets = K.facet_labels();
    for (const auto &c : pairs.vertices()) node->pair_cells.push_back(c.reduced);
    return node;
  }

  static int choose_vertex(const SimplicialComplex &K) {
    int best = 0;
    std::size_t best_degree = 0;
    for (const auto &rec : neighbors_and_domination(K)) {
      if (rec.dominating) continue;
      if (best == 0 || rec.neighbors.size() < best_degree) {
        best = rec.vertex;
        best_degree = rec.neighbors.size();
      }
    }
    return best;
  }

  Decomposition solve(const SimplicialComplex &K, const PairSpec &pairs, std::optional<int> forced) {
    std::string key;
    if (!forced) {
      key = memo_key(K, pairs);
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Decomposition d = compute(K, pairs, forced);
    if (!forced) {
      std::lock_guard lock(mutex_);
      memo_.try_emplace(key, d);
    }
    return d;
  }

  Decomposition compute(const SimplicialComplex &K, const PairSpec &pairs, std::optional<int> forced) {
    const int D = cutoff_;
    const int m = K.vertex_count();
    if (m == 0 || m == 1) {
      auto node = make_node(m == 0 ? rules::kEmptyComplex : rules::kSingleVertex, K, pairs);
      node->output = GradedSeries::one();
      return {PProduct::trivial(D), node};
    }
    if (!forced) {
      if (const auto k = simplex_skeleton_dimension(K)) {
        const SphereWedge w = skeleton_simplex_wedge(m, *k, pairs);
        PProduct p = hilton_milnor(w, D);
        auto node = make_node(rules::kSkeletonOfSimplex, K, pairs);
        node->inputs["wedge"] = w.cells;
        node->output = p.series();
        return {std::move(p), node};
      }
    }
    const int v = forced ? *forced : choose_vertex(K);
    if (v == 0) throw Error(ErrorCode::NotFlagSkeleton, "every vertex dominates but K is not a simplex skeleton");
    const PushoutSplit split = pushout_split(K, v);

    const Decomposition r1 = solve(split.k1, pairs.restricted(split.k1_labels), std::nullopt);
    const Decomposition r2 = solve(split.k2, pairs.restricted(split.k2_labels), std::nullopt);
    const Decomposition rl = solve(split.link, pairs.restricted(split.link_labels), std::nullopt);

    const PProduct loop_g = divide_products(r1.product, rl.product);
    const PProduct loop_h = divide_products(r2.product, rl.product);

    const CellSeries cells_a = pairs.at(v);
    std::vector<CellSeries> far;
    const VertexMask near = labels_to_mask(split.k1_labels);
    for (int u = 1; u <= m; ++u)
      if (!(near & (VertexMask{1} << (u - 1)))) far.push_back(pairs.at(u));
    const CellSeries cells_a_prime = CellSeries::product(far);

    const PProduct summands[] = {
        hilton_milnor(join_cells(cells_a, cells_a_prime), D),
        loop_half_smash(cells_a_prime, loop_g, D), // Ω(G ⋊ 𝒜') ≃ Ω(𝒜' ⋉ G)
        loop_half_smash(cells_a, loop_h, D),
    };
    PProduct p = rl.product * porter_loop_wedge(summands, D);

    auto node = make_node(split.link.empty() ? rules::kPushoutEmpty : rules::kPushout, K, pairs);
    node->split_vertex = v;
    node->inputs["cells_A"] = cells_a.reduced;
    node->inputs["cells_A_prime"] = cells_a_prime.reduced;
    node->inputs["loop_G"] = loop_g.series();
    node->inputs["loop_H"] = loop_h.series();
    node->output = p.series();
    node->children = {
        {"K1", split.k1_labels, r1.trace},
        {"K2", split.k2_labels, r2.trace},
        {"L", split.link_labels, rl.trace},
    };
    return {std::move(p), node};
  }

  int cutoff_;
  mutable std::mutex mutex_;
  std::map<std::string, Decomposition> memo_;
};

inline Decomposition decompose_loop(const SimplicialComplex &K, const PairSpec &pairs,
                                    int D = kDefaultCutoff,
                                    std::optional<int> split_vertex = std::nullopt) {
  DecompositionEngine engine(D);
  return engine.decompose(K, pairs, split_vertex);
}

/// Ω(X,A)^K ≃ ∏ ΩX_i × Ω(CY,Y)^K with Y_i the homotopy fibre of A_i → X_i.
inline PProduct decompose_general_pair(const SimplicialComplex &K,
                                       const std::vector<PProduct> &loops_of_x,
                                       const PairSpec &fibers, int D = kDefaultCutoff) {
  if (static_cast<int>(loops_of_x.size()) != K.vertex_count())
    throw Error(ErrorCode::InvalidPairs, "need one ΩX_i per vertex");
  PProduct p = decompose_loop(K, fibers, D).product;
  for (const auto &x : loops_of_x) p = p * x.with_cutoff(D);
  return p;
}

/// Per-vertex data for pairs (X_i, A_i): the loop spaces ΩX_i and the fibres Y_i.
struct GeneralPairs {
  std::vector<PProduct> loops_of_x;
  PairSpec fibers;
};

/// ΩCP^n: S^1 × ΩS^{2n+1}, or S^1 when n is infinite.
inline PProduct loop_cp(std::optional<int> n, int D) {
  std::vector<FactorCount> f{{PFactor::sphere(1), 1}};
  if (n) {
    if (*n < 1) throw Error(ErrorCode::InvalidPairs, "CP^n needs n >= 1");
    f.push_back({PFactor::loop_sphere(2 * *n + 1), 1});
  }
  return PProduct::from_factors(f, D);
}

/// (X_i, A_i) = (CP^n, *): Y_i = ΩCP^n.
inline GeneralPairs cp_point_pairs(std::optional<int> n, int m, int D) {
  const PProduct loop = loop_cp(n, D);
  const CellSeries fiber{suspension_splitting(loop).cells.divided_by_t(1)};
  return {std::vector<PProduct>(static_cast<std::size_t>(m), loop),
          PairSpec(std::vector<CellSeries>(static_cast<std::size_t>(m), fiber))};
}

/// (X_i, A_i) = (CP^n, CP^k), k < n: Y_i ≃ S^{2k+1} × ΩS^{2n+1}, or S^{2k+1}
/// when n is infinite.
inline GeneralPairs cp_pairs(std::optional<int> n, int k, int m, int D) {
  if (k < 1 || (n && k >= *n)) throw Error(ErrorCode::InvalidPairs, "(CP^n, CP^k) needs 1 <= k < n");
  GradedSeries y = GradedSeries::one() + GradedSeries::monomial(static_cast<std::size_t>(2 * k + 1));
  if (n) y = y * GradedSeries::geometric(static_cast<std::size_t>(2 * *n));
  // ΣY splits as the wedge with cells t·(P_Y - 1)
  const GradedSeries sigma_y = (y - GradedSeries::one()).times_t(1);
  const CellSeries fiber{sigma_y.divided_by_t(1)};
  return {std::vector<PProduct>(static_cast<std::size_t>(m), loop_cp(n, D)),
          PairSpec(std::vector<CellSeries>(static_cast<std::size_t>(m), fiber))};
}

struct TraceIssue {
  std::string path;
  std::string rule;
  std::string message;
};

namespace detail {

inline GradedSeries loop_of_wedge_series(const GradedSeries &cells) {
  return GradedSeries::one() / (GradedSeries::one() - cells.divided_by_t(1));
}

/// Series of Ω(X ⋉ Y) from the cells of X and the series of ΩY.
inline GradedSeries half_smash_series(const GradedSeries &x, const GradedSeries &y_loop) {
  return y_loop / (GradedSeries::one() - x * (y_loop - GradedSeries::one()));
}

inline void check_node(const TraceNode &node, const std::string &path, int D,
                       std::vector<TraceIssue> &issues) {
  auto fail = [&](const std::string &msg) { issues.push_back({path, node.rule, msg}); };
  const GradedSeries one = GradedSeries::one();
  try {
    if (node.rule == rules::kSingleVertex || node.rule == rules::kEmptyComplex) {
      if (!(node.output == one)) fail("contractible case must have series 1");
    } else if (node.rule == rules::kSkeletonOfSimplex) {
      const auto &w = node.inputs.at("wedge");
      if (!(node.output == loop_of_wedge_series(w))) fail("output != 1/(1 - wedge/t)");
    } else if (node.rule == rules::kPushout || node.rule == rules::kPushoutEmpty) {
      if (node.children.size() != 3) {
        fail("pushout node needs children K1, K2, L");
        return;
      }
      const GradedSeries &s1 = node.children[0].node->output;
      const GradedSeries &s2 = node.children[1].node->output;
      const GradedSeries &sl = node.children[2].node->output;
      const GradedSeries g = s1 / sl, h = s2 / sl;
      if (!(g == node.inputs.at("loop_G"))) fail("ΩG != ΩK1 / ΩL");
      if (!(h == node.inputs.at("loop_H"))) fail("ΩH != ΩK2 / ΩL");
      const GradedSeries &a = node.inputs.at("cells_A");
      const GradedSeries &ap = node.inputs.at("cells_A_prime");
      const GradedSeries x[] = {one / (one - a * ap), half_smash_series(ap, g), half_smash_series(a, h)};
      GradedSeries prod = one, residual;
      for (const auto &xi : x) prod = prod * xi;
      // Σ_{|T|>=2} (|T|-1) ∏_{i∈T} (x_i - 1) over the three summands
      const GradedSeries r[] = {x[0] - one, x[1] - one, x[2] - one};
      residual = r[0] * r[1] + r[0] * r[2] + r[1] * r[2] + Integer(2) * r[0] * r[1] * r[2];
      const GradedSeries expected = sl * prod / (one - residual);
      if (!(node.output == expected)) fail("output != ΩL × Ω(three-summand wedge)");
      const auto e = node.output.expand(D);
      if (!detail::all_non_negative(e)) fail("negative Poincaré coefficient");
    } else {
      fail("unknown rule");
    }
  } catch (const std::exception &ex) {
    fail(ex.what());
  }
  for (const auto &edge : node.children)
    check_node(*edge.node, path + "/" + edge.role, D, issues);
}

} // namespace detail

/// Re-derives every node's output series from its children by series
/// arithmetic alone; returns the nodes whose identity fails.
inline std::vector<TraceIssue> verify_trace(const TraceNode &root, int D) {
  std::vector<TraceIssue> issues;
  detail::check_node(root, "root", D, issues);
  return issues;
}

inline std::size_t trace_size(const TraceNode &node) {
  std::size_t n = 1;
  for (const auto &e : node.children) n += trace_size(*e.node);
  return n;
}

} // namespace polyloop
