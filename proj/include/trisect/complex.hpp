#pragma once

// Cut complex: vertices are cut systems up to parallelism and reordering,
// type-0 edges replace one curve by a disjoint one, type-1 edges by one that
// meets it once.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trisect/surface.hpp"

namespace trisect {

enum class EdgeKind : std::uint8_t { Type0, Type1, NotAdjacent };

const char* edge_kind_name(EdgeKind k);

struct CutComplexEdge {
  EdgeKind kind = EdgeKind::NotAdjacent;
  std::size_t changed_first = 0;   // index of the differing curve in the first system
  std::size_t changed_second = 0;  // and in the second
};

CutComplexEdge edge_type(const CutSystem& v1, const CutSystem& v2);

// Same vertex of the cut complex: equal up to parallelism and reordering.
bool same_vertex(const CutSystem& v1, const CutSystem& v2);

// Throws Error when c1 is not a curve of cs1 or c2 not a curve of cs2.
bool is_good_pair(const Curve& c1, const Curve& c2, const CutSystem& cs1, const CutSystem& cs2);

// perm[i] is the index in cs2 paired with cs1[i]; lexicographically smallest.
std::optional<std::vector<std::size_t>> find_good_position(const CutSystem& cs1, const CutSystem& cs2);

// Number of parallel pairs in the good position, or nullopt if there is none.
std::optional<int> compute_k(const CutSystem& cs1, const CutSystem& cs2);

// Breadth-first search over type-0 edges whose new curves come from `pool`.
// Returns the vertex path (start first) or nullopt when the budget of edges
// is exhausted. Throws Error on an empty pool.
std::optional<std::vector<CutSystem>> type0_reachability(const CutSystem& start, const CutSystem& target,
                                                         int budget, const std::vector<Curve>& pool);

// All type-0 neighbours of v reachable with one pool curve, in pool order.
std::vector<CutSystem> type0_neighbours(const CutSystem& v, const std::vector<Curve>& pool);

// Curves of the diagram, the handle cores, and curves obtained by slides
// inside each system up to the given depth; one representative per class.
std::vector<Curve> candidate_pool(const TrisectionDiagram& d, int slide_depth);

// Marker positions (vertex indices) on a candidate loop. `alpha_beta` is the
// vertex of Gamma_alpha paired with `beta_alpha` in Gamma_beta, and so on.
struct LoopMarkers {
  std::size_t alpha = 0, beta = 0, gamma = 0;
  std::size_t alpha_beta = 0, alpha_gamma = 0;
  std::size_t beta_alpha = 0, beta_gamma = 0;
  std::size_t gamma_alpha = 0, gamma_beta = 0;
};

struct RealizationLoopCandidate {
  std::vector<CutSystem> vertices;  // cyclic
  LoopMarkers markers;
};

struct ConditionWitness {
  std::string condition;
  bool passed = false;
  std::optional<std::size_t> edge;  // failing edge, when the condition is about one
  std::string detail;
};

struct LoopReport {
  int l = 0;
  std::array<int, 3> k{0, 0, 0};  // (alpha,beta), (beta,gamma), (gamma,alpha)
  int L = 0;
  int direction = 1;  // +1 when markers run forward along the vertex list
  std::vector<EdgeKind> edges;
  std::vector<ConditionWitness> witnesses;

  bool ok() const;
};

// Checks edges, good pairs with their type-1 counts, and type-0 subpaths.
// Throws StructuralError when markers are out of range or out of order.
LoopReport verify_realization_loop(const RealizationLoopCandidate& loop, const TrisectionDiagram& d);

struct LengthBound {
  int bound = 0;
  RealizationLoopCandidate loop;
  LoopReport report;
};

// Best admissible loop found by type-0 searches from each base system that
// expand at most `budget` vertices each, over the candidate pool. nullopt
// when none is found.
std::optional<LengthBound> kt_length_upper_bound(const TrisectionDiagram& d, int budget, int slide_depth = 1);

}  // namespace trisect
