#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fsr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One directed occurrence of an edge in a cyclic boundary word.
struct Side {
  int edge = -1;
  bool forward = true;

  friend bool operator==(const Side&, const Side&) = default;
};

struct Edge {
  std::string id;
  int from = -1;
  int to = -1;
};

struct Tile {
  std::string id;
  std::vector<Side> word;
};

enum class Dim : std::uint8_t { Vertex = 0, Edge = 1, Tile = 2 };

struct CellRef {
  Dim dim = Dim::Vertex;
  int index = -1;

  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

/// Position of a side inside a tile boundary word.
struct SideRef {
  int tile = -1;
  int pos = -1;

  bool valid() const { return tile >= 0; }
  friend bool operator==(const SideRef&, const SideRef&) = default;
  friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

/// A finite 2-dimensional CW complex given by cyclic tile boundary words.
/// Cell ids are opaque strings, unique across all three dimensions.
class Complex {
 public:
  int add_vertex(std::string id, bool marked = false);
  int add_edge(std::string id, int from, int to);
  int add_edge(std::string id, std::string_view from, std::string_view to);
  int add_tile(std::string id, std::vector<Side> word);
  /// Parses words such as "e1+, e2-" against the declared edges.
  int add_tile(std::string id, std::string_view word);
  void set_marked(int vertex, bool marked);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int tile_count() const { return static_cast<int>(tiles_.size()); }

  const std::string& vertex_id(int v) const { return vertices_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const Tile& tile(int t) const { return tiles_[t]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Tile>& tiles() const { return tiles_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  bool is_marked(int v) const { return marked_[v]; }
  std::vector<int> marked() const;

  std::optional<CellRef> find(std::string_view id) const;
  int vertex_index(std::string_view id) const;
  int edge_index(std::string_view id) const;
  int tile_index(std::string_view id) const;
  const std::string& cell_id(CellRef c) const;

  int start(Side s) const { return s.forward ? edges_[s.edge].from : edges_[s.edge].to; }
  int end(Side s) const { return s.forward ? edges_[s.edge].to : edges_[s.edge].from; }
  Side side_at(SideRef r) const { return tiles_[r.tile].word[r.pos]; }
  int word_length(int t) const { return static_cast<int>(tiles_[t].word.size()); }

  /// Owners of the forward [0] and reverse [1] side of every edge; entries
  /// stay invalid when a side is missing or occupied more than once.
  std::vector<std::array<SideRef, 2>> side_owners() const;

 private:
  void claim_id(const std::string& id, CellRef ref);

  std::vector<std::string> vertices_;
  std::vector<bool> marked_;
  std::vector<Edge> edges_;
  std::vector<Tile> tiles_;
  std::unordered_map<std::string, CellRef> ids_;
};

/// A disk: a complex together with its boundary cycle, traversed in the same
/// direction as the tile words (disk on the left).
struct DiskComplex {
  Complex complex;
  std::vector<Side> boundary;
};

struct Violation {
  std::string invariant;
  std::vector<std::string> cells;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  void add(std::string invariant, std::vector<std::string> cells, std::string detail = {});
  void merge(const ValidationReport& other, std::string_view prefix);
  std::string to_string() const;
};

ValidationReport validate_sphere(const Complex& c);
ValidationReport validate_disk(const DiskComplex& d);

int euler_characteristic(const Complex& c);

/// Chains the one-sided edges of a complex into a boundary cycle. Returns
/// nothing when those edges do not form a single closed cycle.
std::optional<std::vector<Side>> derive_boundary(const Complex& c);

/// Corner k of a tile sits between positions k-1 and k, i.e. at start(word[k]).
struct Corner {
  int tile = -1;
  int index = -1;
};

/// Corners grouped around each vertex, in rotation order. For a vertex on a
/// disk boundary the group is a chain rather than a cycle.
struct VertexLink {
  std::vector<Corner> corners;
  bool closed = false;
};

/// Link structure of every vertex; a vertex with more than one link group
/// is a pinch point.
std::vector<std::vector<VertexLink>> vertex_links(const Complex& c);

enum class Adjacency : std::uint8_t { Edge, Vertex };

struct TileAdjacencyGraph {
  struct Arc {
    int a = -1;
    int b = -1;
    Adjacency mode = Adjacency::Edge;
  };
  int nodes = 0;
  std::vector<Arc> arcs;  // a < b, sorted

  std::vector<std::vector<int>> neighbours() const;
};

TileAdjacencyGraph tile_adjacency(const Complex& c, Adjacency mode);

/// Tiles whose closure contains the given cell, sorted, without repeats.
std::vector<int> incident_tiles(const Complex& c, CellRef cell);

}  // namespace fsr
