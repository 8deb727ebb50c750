#pragma once

#include <utility>
#include <vector>

#include "fsr/complex.hpp"
#include "fsr/subdivision.hpp"

namespace fsr {

/// A point of the sphere, known only up to the open cell containing it.
struct MetricPoint {
  CellRef cell;

  static MetricPoint in_tile(int t) { return {{Dim::Tile, t}}; }
  static MetricPoint on_edge(int e) { return {{Dim::Edge, e}}; }
  static MetricPoint at_vertex(int v) { return {{Dim::Vertex, v}}; }
  friend bool operator==(const MetricPoint&, const MetricPoint&) = default;
};

struct FatPath {
  std::vector<int> tiles;
  int length() const { return static_cast<int>(tiles.size()) - 1; }
};

/// Edge-adjacency distances from a set of source tiles (multi-source BFS).
std::vector<int> tile_distances(const Complex& c, const std::vector<int>& sources);

/// A shortest edge-adjacent chain of tiles from `a` to `b`.
std::vector<int> shortest_tile_path(const Complex& c, int a, int b);

int self_distance(const Complex& c, MetricPoint x);
int fat_path_distance(const Complex& c, MetricPoint x, MetricPoint y);

/// A minimal fat path realising fat_path_distance.
FatPath fat_path(const Complex& c, MetricPoint x, MetricPoint y);

/// Lifts an edge-adjacent level-n tile path to level n+1 starting at a
/// sigma-preimage of its first tile.
std::vector<int> lift_tile_path(const SubdivisionTower& t, int n, const std::vector<int>& path, int start);

struct NonexpansionCheck {
  int a = -1;
  int b = -1;
  int k = 0;          // level-n distance
  int k_lifted = 0;   // worst level-n distance between carriers of lifted endpoints
  int lifts = 0;
  bool pass = true;
};

/// For every pair, lifts a minimal path from each preimage of `a` and
/// compares the carrier distance of the lifted endpoints with the original.
/// An empty sample means all ordered pairs a <= b.
std::vector<NonexpansionCheck> check_pullback_nonexpansion(const SubdivisionTower& t, int n,
                                                           std::vector<std::pair<int, int>> sample = {});

}  // namespace fsr
