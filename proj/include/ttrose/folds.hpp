#pragma once

#include <string>
#include <vector>

#include "ttrose/edge_path.hpp"
#include "ttrose/rose_map.hpp"

namespace ttrose {

struct Certificate;

/// Oriented edge of a labeled graph, by edge id.
struct GraphEdge {
  int id = 0;
  bool inverted = false;

  GraphEdge inverse() const { return {id, !inverted}; }
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

using GraphPath = std::vector<GraphEdge>;

/// A graph whose edges carry labels in the target rose.
struct LabeledGraph {
  struct Edge {
    int tail = 0;
    int head = 0;
    EdgePath label;
    bool alive = true;
  };

  int rank = 0;
  std::vector<bool> vertex_alive;
  std::vector<Edge> edges;
  int basepoint = 0;

  /// The rose with edge i (0-based) labeled by g(x_{i+1}).
  static LabeledGraph from_map(const RoseMap& g);

  int vertex_count() const;
  int edge_count() const;
  std::vector<int> alive_edges() const;
  int valence(int v) const;
  bool is_rose() const { return vertex_count() == 1; }
};

/// One maximal fold and the substitutions it induces on edge ids, applied in order.
struct FoldStep {
  int vertex = 0;
  GraphEdge germ_a;
  GraphEdge germ_b;
  int length = 0;
  std::vector<std::pair<int, GraphPath>> substitutions;
};

struct FoldSequence {
  int rank = 0;
  std::vector<FoldStep> steps;
  /// Final homeomorphism: surviving edge id -> rose edge.
  std::vector<std::pair<int, OrientedEdge>> homeomorphism;
  /// Step counts t at which the graph after t folds is a rose, with its edge ids.
  std::vector<int> rose_indices;
  std::vector<std::vector<int>> rose_edges;
  /// Total label length after each step (index 0 = start).
  std::vector<long> label_lengths;
  /// Vertex count and maximal valence after each step (index 0 = start).
  std::vector<int> vertex_counts;
  std::vector<int> max_valences;

  std::size_t fold_count() const { return steps.size(); }
};

enum class FoldGranularity { maximal, single_letter };

/// Greedy Stallings folding: at the least vertex carrying two germs with equal
/// first label letter, fold their maximal common initial segments (or just the
/// first letter, with single_letter). A single-letter sequence has ||g|| - rank folds.
/// Throws PreconditionError if g is not a homotopy equivalence.
FoldSequence stallings_decomposition(const RoseMap& g, FoldGranularity granularity = FoldGranularity::maximal);

/// Recomposes folds and the final homeomorphism back into a rose map.
RoseMap replay(const FoldSequence& seq);

/// First-return rose map at the rose point with position `which` in rose_indices.
RoseMap first_return_map(const FoldSequence& seq, std::size_t which);

/// A signed permutation q of the rose edges: q(x_i) = x_{perm[i]} (reversed if flip[i]).
struct SignedPermutation {
  std::vector<int> perm;  // 1-based targets
  std::vector<bool> flip;
};

std::vector<SignedPermutation> signed_permutations(int rank);

/// q^{-1} . g . q
RoseMap conjugate(const RoseMap& g, const SignedPermutation& q);

/// Lexicographically least serialization over all signed-permutation conjugates.
std::string canonical_form(const RoseMap& g);

bool unmarked_equivalent(const RoseMap& f, const RoseMap& f2);

/// U(phi) from the rose points of one period of the fold line, canonicalized
/// and deduplicated (sorted). Requires a lone-axis certificate for g.
std::vector<std::string> unmarked_representatives(const RoseMap& g, const Certificate* certificate);

}  // namespace ttrose
