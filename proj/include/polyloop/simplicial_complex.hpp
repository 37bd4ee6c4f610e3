#pragma once

// Finite abstract simplicial complexes on the vertex set {1..m}, stored as
// the full list of nonempty faces encoded as vertex bitmasks (bit i-1 for
// vertex i). Complexes in this library are desk-scale (m <= kMaxVertices).

#include "polyloop/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polyloop {

using VertexMask = std::uint32_t;

inline constexpr int kMaxVertices = 24;

inline int popcount(VertexMask s) { return std::popcount(s); }

inline VertexMask full_mask(int m) {
  return m >= 32 ? ~VertexMask{0} : ((VertexMask{1} << m) - 1);
}

/// 1-based vertex labels contained in the mask, ascending.
inline std::vector<int> mask_to_labels(VertexMask s) {
  std::vector<int> out;
  for (int i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i + 1);
  return out;
}

inline VertexMask labels_to_mask(std::span<const int> labels) {
  VertexMask s = 0;
  for (int v : labels) s |= VertexMask{1} << (v - 1);
  return s;
}

class SimplicialComplex {
public:
  /// The empty complex on zero vertices.
  SimplicialComplex() = default;

  /// Builds the downward closure of `facets` on {1..m}.
  static SimplicialComplex from_facets(const std::vector<std::vector<int>> &facets,
                                       int m) {
    if (m < 1 || m > kMaxVertices)
      throw Error(ErrorCode::BadIndex, "vertex count " + std::to_string(m) +
                                           " outside 1.." +
                                           std::to_string(kMaxVertices));
    std::vector<VertexMask> masks;
    for (const auto &f : facets) {
      VertexMask s = 0;
      for (int v : f) {
        if (v < 1 || v > m)
          throw Error(ErrorCode::BadIndex, "vertex " + std::to_string(v) +
                                               " outside 1.." + std::to_string(m));
        s |= VertexMask{1} << (v - 1);
      }
      if (s != 0) masks.push_back(s);
    }
    SimplicialComplex K = from_masks(masks, m);
    VertexMask seen = 0;
    for (VertexMask f : K.facets_) seen |= f;
    if (seen != full_mask(m)) {
      const auto missing = mask_to_labels(full_mask(m) & ~seen);
      throw Error(ErrorCode::GhostVertex,
                  "vertex " + std::to_string(missing.front()) + " lies in no facet");
    }
    return K;
  }

  /// Closure of the given generating faces; no ghost-vertex check.
  static SimplicialComplex from_masks(std::span<const VertexMask> generators, int m) {
    SimplicialComplex K;
    K.m_ = m;
    std::vector<VertexMask> faces;
    for (VertexMask g : generators) {
      // enumerate nonempty submasks
      for (VertexMask s = g; s != 0; s = (s - 1) & g) faces.push_back(s);
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    K.faces_ = std::move(faces);
    K.compute_facets();
    return K;
  }

  [[nodiscard]] int vertex_count() const noexcept { return m_; }
  [[nodiscard]] bool empty() const noexcept { return m_ == 0; }
  [[nodiscard]] std::span<const VertexMask> faces() const noexcept { return faces_; }
  [[nodiscard]] std::span<const VertexMask> facets() const noexcept { return facets_; }
  [[nodiscard]] std::size_t face_count() const noexcept { return faces_.size(); }

  [[nodiscard]] bool contains(VertexMask s) const {
    if (s == 0) return true;
    return std::binary_search(faces_.begin(), faces_.end(), s);
  }

  /// -1 for the empty complex.
  [[nodiscard]] int dimension() const {
    int d = -1;
    for (VertexMask f : facets_) d = std::max(d, popcount(f) - 1);
    return d;
  }

  [[nodiscard]] std::vector<std::vector<int>> facet_labels() const {
    std::vector<std::vector<int>> out;
    for (VertexMask f : facets_) out.push_back(mask_to_labels(f));
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const SimplicialComplex &a, const SimplicialComplex &b) {
    return a.m_ == b.m_ && a.faces_ == b.faces_;
  }

private:
  void compute_facets() {
    facets_.clear();
    for (VertexMask f : faces_) {
      bool maximal = true;
      for (int i = 0; i < m_ && maximal; ++i) {
        const VertexMask bit = VertexMask{1} << i;
        if (!(f & bit) && contains(f | bit)) maximal = false;
      }
      if (maximal) facets_.push_back(f);
    }
  }

  int m_ = 0;
  std::vector<VertexMask> faces_;  // sorted, nonempty faces only
  std::vector<VertexMask> facets_; // sorted
};

inline SimplicialComplex validate_complex(const std::vector<std::vector<int>> &facets,
                                          int m) {
  return SimplicialComplex::from_facets(facets, m);
}

/// K_S relabelled to 1..|S| in increasing label order.
inline SimplicialComplex full_subcomplex(const SimplicialComplex &K, VertexMask S) {
  S &= full_mask(K.vertex_count());
  const auto labels = mask_to_labels(S);
  std::vector<VertexMask> kept;
  for (VertexMask f : K.facets()) {
    const VertexMask r = f & S;
    if (r == 0) continue;
    VertexMask local = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (r & (VertexMask{1} << (labels[i] - 1))) local |= VertexMask{1} << i;
    kept.push_back(local);
  }
  return SimplicialComplex::from_masks(kept, static_cast<int>(labels.size()));
}

inline SimplicialComplex full_subcomplex(const SimplicialComplex &K,
                                         const std::vector<int> &labels) {
  return full_subcomplex(K, labels_to_mask(labels));
}

/// Adjacency in the 1-skeleton, indexed by 0-based vertex.
inline std::vector<VertexMask> neighbor_masks(const SimplicialComplex &K) {
  std::vector<VertexMask> nb(static_cast<std::size_t>(K.vertex_count()), 0);
  for (VertexMask f : K.faces()) {
    if (popcount(f) != 2) continue;
    const int a = std::countr_zero(f);
    const int b = std::countr_zero(f & (f - 1));
    nb[static_cast<std::size_t>(a)] |= VertexMask{1} << b;
    nb[static_cast<std::size_t>(b)] |= VertexMask{1} << a;
  }
  return nb;
}

struct VertexRecord {
  int vertex;                 // 1-based
  std::vector<int> neighbors; // 1-based, ascending
  bool dominating;
};

inline std::vector<VertexRecord> neighbors_and_domination(const SimplicialComplex &K) {
  const auto nb = neighbor_masks(K);
  const VertexMask all = full_mask(K.vertex_count());
  std::vector<VertexRecord> out;
  for (int v = 1; v <= K.vertex_count(); ++v) {
    const VertexMask n = nb[static_cast<std::size_t>(v - 1)];
    out.push_back({v, mask_to_labels(n), n == (all & ~(VertexMask{1} << (v - 1)))});
  }
  return out;
}

/// Minimal subsets of [m] that are not faces.
inline std::vector<VertexMask> minimal_non_faces(const SimplicialComplex &K) {
  std::vector<VertexMask> out;
  const VertexMask all = full_mask(K.vertex_count());
  for (VertexMask s = 1; s != 0 && s <= all; ++s) {
    if (K.contains(s)) continue;
    bool minimal = true;
    for (VertexMask rest = s; rest != 0 && minimal; rest &= rest - 1) {
      const VertexMask bit = rest & (~rest + 1);
      if (!K.contains(s & ~bit)) minimal = false;
    }
    if (minimal) out.push_back(s);
    if (s == all) break;
  }
  return out;
}

/// Cliques of the 1-skeleton with at most max_size vertices (nonempty).
inline std::vector<VertexMask> cliques_up_to(const SimplicialComplex &K, int max_size) {
  const auto nb = neighbor_masks(K);
  std::vector<VertexMask> out;
  // grow cliques by increasing maximal vertex
  std::vector<VertexMask> frontier;
  for (int v = 0; v < K.vertex_count(); ++v) frontier.push_back(VertexMask{1} << v);
  int size = 1;
  while (!frontier.empty() && size <= max_size) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    std::vector<VertexMask> next;
    for (VertexMask c : frontier) {
      const int top = 31 - std::countl_zero(c);
      VertexMask common = full_mask(K.vertex_count());
      for (VertexMask rest = c; rest != 0; rest &= rest - 1)
        common &= nb[static_cast<std::size_t>(std::countr_zero(rest))];
      for (int w = top + 1; w < K.vertex_count(); ++w)
        if (common & (VertexMask{1} << w)) next.push_back(c | (VertexMask{1} << w));
    }
    frontier = std::move(next);
    ++size;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Perfect-elimination test via lexicographic breadth-first search.
inline bool is_chordal_graph(std::span<const VertexMask> nb) {
  const int n = static_cast<int>(nb.size());
  if (n == 0) return true;
  // LexBFS with explicit label vectors (n is small)
  std::vector<std::vector<int>> label(static_cast<std::size_t>(n));
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::vector<int> order; // visit order
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)]) continue;
      if (best < 0 || label[static_cast<std::size_t>(v)] > label[static_cast<std::size_t>(best)])
        best = v;
    }
    done[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
    for (int w = 0; w < n; ++w)
      if (!done[static_cast<std::size_t>(w)] && (nb[static_cast<std::size_t>(best)] & (VertexMask{1} << w)))
        label[static_cast<std::size_t>(w)].push_back(n - step);
  }
  // reverse visit order is a perfect elimination ordering iff chordal
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  for (int v = 0; v < n; ++v) {
    // earlier-visited neighbours of v must form a clique
    VertexMask earlier = 0;
    for (int w = 0; w < n; ++w)
      if ((nb[static_cast<std::size_t>(v)] & (VertexMask{1} << w)) &&
          position[static_cast<std::size_t>(w)] < position[static_cast<std::size_t>(v)])
        earlier |= VertexMask{1} << w;
    if (earlier == 0) continue;
    // parent = latest-visited among them
    int parent = -1;
    for (int w = 0; w < n; ++w)
      if ((earlier & (VertexMask{1} << w)) &&
          (parent < 0 || position[static_cast<std::size_t>(w)] > position[static_cast<std::size_t>(parent)]))
        parent = w;
    const VertexMask rest = earlier & ~(VertexMask{1} << parent);
    if ((rest & ~nb[static_cast<std::size_t>(parent)]) != 0) return false;
  }
  return true;
}

struct Classification {
  bool flag = false;
  std::optional<int> k_skeleton_of_flag;
  std::optional<std::pair<int, int>> skeleton_of_simplex; // (m, k)
  bool chordal_1_skeleton = false;
};

inline Classification classify_input(const SimplicialComplex &K) {
  Classification c;
  if (K.empty()) return c;
  const int m = K.vertex_count();
  const int dim = K.dimension();

  const auto mnf = minimal_non_faces(K);
  c.flag = std::all_of(mnf.begin(), mnf.end(), [](VertexMask s) { return popcount(s) == 2; });

  const auto cliques = cliques_up_to(K, dim + 1);
  if (cliques.size() == K.face_count() &&
      std::equal(cliques.begin(), cliques.end(), K.faces().begin()))
    c.k_skeleton_of_flag = dim;

  std::size_t expected = 0;
  for (VertexMask s = 1; s <= full_mask(m) && s != 0; ++s) {
    if (popcount(s) <= dim + 1) ++expected;
    if (s == full_mask(m)) break;
  }
  bool all_small = true;
  for (VertexMask f : K.faces()) all_small = all_small && popcount(f) <= dim + 1;
  if (all_small && expected == K.face_count()) c.skeleton_of_simplex = std::pair{m, dim};

  c.chordal_1_skeleton = is_chordal_graph(neighbor_masks(K));
  return c;
}

/// The vertex pushout K = K1 ∪_L K2 at a non-dominating vertex v, with
/// K1 = K_{v ∪ N(v)}, L = K_{N(v)}, K2 = K_{V \ v}. Each part is relabelled
/// to 1..n; the label vectors map local index i (1-based) to labels[i-1] in K.
struct PushoutSplit {
  int vertex;
  SimplicialComplex k1;
  SimplicialComplex link; // L
  SimplicialComplex k2;
  std::vector<int> k1_labels;
  std::vector<int> link_labels;
  std::vector<int> k2_labels;
};

inline PushoutSplit pushout_split(const SimplicialComplex &K, int v) {
  if (v < 1 || v > K.vertex_count())
    throw Error(ErrorCode::BadIndex, "split vertex " + std::to_string(v) + " not in K");
  const auto nb = neighbor_masks(K);
  const VertexMask vbit = VertexMask{1} << (v - 1);
  const VertexMask n = nb[static_cast<std::size_t>(v - 1)];
  const VertexMask others = full_mask(K.vertex_count()) & ~vbit;
  if (n == others)
    throw Error(ErrorCode::DominatingVertex,
                "vertex " + std::to_string(v) + " is adjacent to every other vertex");
  PushoutSplit p;
  p.vertex = v;
  p.k1 = full_subcomplex(K, vbit | n);
  p.link = full_subcomplex(K, n);
  p.k2 = full_subcomplex(K, others);
  p.k1_labels = mask_to_labels(vbit | n);
  p.link_labels = mask_to_labels(n);
  p.k2_labels = mask_to_labels(others);
  return p;
}

/// Relabel K by a permutation: vertex i of K becomes perm[i-1].
inline SimplicialComplex relabel(const SimplicialComplex &K, std::span<const int> perm) {
  std::vector<VertexMask> gens;
  for (VertexMask f : K.facets()) {
    VertexMask g = 0;
    for (int v : mask_to_labels(f)) g |= VertexMask{1} << (perm[static_cast<std::size_t>(v - 1)] - 1);
    gens.push_back(g);
  }
  return SimplicialComplex::from_masks(gens, K.vertex_count());
}

/// Faces of K of dimension <= k.
inline SimplicialComplex skeleton(const SimplicialComplex &K, int k) {
  std::vector<VertexMask> gens;
  for (VertexMask f : K.faces())
    if (popcount(f) <= k + 1) gens.push_back(f);
  return SimplicialComplex::from_masks(gens, K.vertex_count());
}

/// Clique (flag) complex of a graph on {1..m}.
inline SimplicialComplex clique_complex(int m, const std::vector<std::pair<int, int>> &edges) {
  std::vector<VertexMask> gens;
  for (int v = 0; v < m; ++v) gens.push_back(VertexMask{1} << v);
  for (auto [a, b] : edges) gens.push_back((VertexMask{1} << (a - 1)) | (VertexMask{1} << (b - 1)));
  const SimplicialComplex graph = SimplicialComplex::from_masks(gens, m);
  const auto cl = cliques_up_to(graph, m);
  return SimplicialComplex::from_masks(cl, m);
}

/// The k-skeleton of the (m-1)-simplex.
inline SimplicialComplex simplex_skeleton(int m, int k) {
  std::vector<VertexMask> gens;
  for (VertexMask s = 1; s <= full_mask(m); ++s) {
    if (popcount(s) == std::min(k + 1, m) ) gens.push_back(s);
    if (s == full_mask(m)) break;
  }
  return SimplicialComplex::from_masks(gens, m);
}

} // namespace polyloop
