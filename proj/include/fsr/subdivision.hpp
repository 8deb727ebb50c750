#pragma once

#include <deque>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fsr/complex.hpp"

namespace fsr {

struct EdgeImage {
  int edge = -1;
  bool reversed = false;
};

/// Position i of the source word maps to position (i + offset) mod k of the
/// image word (or (offset - i) mod k with reversal).
struct TileImage {
  int tile = -1;
  int offset = 0;
  bool reversed = false;
};

/// A finite subdivision rule: base complex, its first subdivision, the
/// carrier of every refined cell, and the cellular subdivision map.
struct SubdivisionRule {
  std::string name;
  Complex base;
  Complex refined;
  std::vector<CellRef> vertex_carrier;
  std::vector<CellRef> edge_carrier;
  std::vector<CellRef> tile_carrier;
  std::vector<int> vertex_map;
  std::vector<EdgeImage> edge_map;
  std::vector<TileImage> tile_map;

  /// Sizes the carrier and map tables to the refined complex.
  void resize_maps();
};

/// Cut-open closure of a union of tiles: corners are glued only across the
/// edges selected as interior. Shared by the rule patterns and rendering.
struct CutDisk {
  std::vector<int> tiles;                        // tiles of the source complex
  std::vector<std::vector<int>> corner_vertex;   // [local tile][corner] -> disk vertex
  std::vector<int> vertex_source;                // disk vertex -> source vertex
  std::vector<SideRef> boundary;                 // boundary sides, in cycle order
  bool boundary_is_cycle = false;

  /// The disk as a standalone complex (ids derived from the source ids).
  DiskComplex to_disk(const Complex& source, const std::vector<bool>& interior_edge) const;
};

CutDisk cut_disk(const Complex& c, const std::vector<int>& tiles,
                 const std::vector<bool>& interior_edge);

/// Subdivision pattern of one base edge: refined cells in order from the
/// edge's initial vertex to its terminal vertex.
struct EdgePattern {
  std::vector<int> vertices;    // refined vertices, size = edges + 1
  std::vector<int> edges;       // refined edges
  std::vector<bool> forward;    // refined edge direction agrees with the base edge
};

/// Subdivision pattern of one base tile.
struct TilePattern {
  std::vector<int> tiles;  // refined tiles carried by the base tile
  std::vector<int> edges;  // refined edges carried by the base tile
  std::vector<int> interior_vertices;
  // For each refined tile (indexed like `tiles`), the base boundary position
  // of each side, or -1 for sides interior to the base tile.
  std::vector<std::vector<int>> side_position;

  struct VertexAddress {
    enum Kind { Interior, Corner, OnSide } kind = Interior;
    int position = -1;  // base boundary position (Corner, OnSide)
    int vertex = -1;    // refined vertex
  };
  std::vector<std::vector<VertexAddress>> corner_address;  // [local tile][corner]
  std::vector<std::pair<VertexAddress, VertexAddress>> edge_ends;  // aligned with `edges`
};

struct RulePatterns {
  std::vector<EdgePattern> edges;
  std::vector<TilePattern> tiles;
  std::vector<int> base_vertex_in_refined;
  std::vector<int> local_tile;  // refined tile -> index inside its pattern
};

ValidationReport validate_rule(const SubdivisionRule& r);

/// Builds the per-cell patterns; throws Error if the rule is not valid.
RulePatterns compile_patterns(const SubdivisionRule& r);

/// Constant number of preimage tiles per base tile.
int degree(const SubdivisionRule& r);

/// One level of an iterated subdivision. Level n+1 cells are copies of
/// refined pattern cells inside level-n cells; `parent` is the level-n
/// carrier, `pattern` the refined cell copied, `type` the image in the base
/// complex under the n-fold subdivision map.
struct Level {
  Complex complex;
  std::vector<CellRef> vertex_parent, edge_parent, tile_parent;
  std::vector<int> vertex_pattern, edge_pattern, tile_pattern;
  std::vector<int> vertex_sigma;
  std::vector<EdgeImage> edge_sigma;
  std::vector<TileImage> tile_sigma;
  std::vector<int> vertex_type;
  std::vector<EdgeImage> edge_type;
  std::vector<TileImage> tile_type;
  /// Per tile and word position: position of that side in the parent tile's
  /// word, or -1 when the side lies inside the parent tile.
  std::vector<std::vector<int>> parent_side;
  /// Carrier in the base complex.
  std::vector<CellRef> vertex_base, edge_base;
  std::vector<int> tile_base;

  std::unordered_map<std::uint64_t, int> keys;  // (dim, parent, pattern) -> index
};

class SubdivisionTower {
 public:
  explicit SubdivisionTower(SubdivisionRule rule);

  const SubdivisionRule& rule() const { return rule_; }
  const RulePatterns& patterns() const { return patterns_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const Level& level(int n) const { return levels_.at(n); }
  const Complex& complex(int n) const { return levels_.at(n).complex; }

  /// Appends one level.
  void subdivide();
  void subdivide_to(int n);

  /// Image of a level-n cell under the (n-k)-fold subdivision map.
  int tile_image(int n, int tile, int k) const;

 private:
  SubdivisionRule rule_;
  RulePatterns patterns_;
  std::deque<Level> levels_;  // stable references while growing
};

/// Named example rules; currently "cubic_example".
SubdivisionRule builtin(std::string_view name);

}  // namespace fsr
