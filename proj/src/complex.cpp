#include "fsr/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fsr {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string side_name(const Complex& c, Side s) {
  return c.edge(s.edge).id + (s.forward ? "+" : "-");
}

}  // namespace

void Complex::claim_id(const std::string& id, CellRef ref) {
  if (id.empty()) throw Error("empty cell id");
  auto [it, inserted] = ids_.emplace(id, ref);
  if (!inserted) throw Error("duplicate cell id '" + id + "'");
}

int Complex::add_vertex(std::string id, bool marked) {
  const int index = vertex_count();
  claim_id(id, {Dim::Vertex, index});
  vertices_.push_back(std::move(id));
  marked_.push_back(marked);
  return index;
}

int Complex::add_edge(std::string id, int from, int to) {
  if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count())
    throw Error("edge '" + id + "' references an unknown vertex");
  const int index = edge_count();
  claim_id(id, {Dim::Edge, index});
  edges_.push_back({std::move(id), from, to});
  return index;
}

int Complex::add_edge(std::string id, std::string_view from, std::string_view to) {
  const int f = vertex_index(from);
  const int t = vertex_index(to);
  if (f < 0) throw Error("unknown vertex '" + std::string(from) + "'");
  if (t < 0) throw Error("unknown vertex '" + std::string(to) + "'");
  return add_edge(std::move(id), f, t);
}

int Complex::add_tile(std::string id, std::vector<Side> word) {
  for (const Side& s : word)
    if (s.edge < 0 || s.edge >= edge_count())
      throw Error("tile '" + id + "' references an unknown edge");
  if (word.empty()) throw Error("tile '" + id + "' has an empty boundary word");
  const int index = tile_count();
  claim_id(id, {Dim::Tile, index});
  tiles_.push_back({std::move(id), std::move(word)});
  return index;
}

int Complex::add_tile(std::string id, std::string_view word) {
  std::vector<Side> sides;
  std::string token;
  std::istringstream in{std::string(word)};
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
    if (token.size() < 2 || (token.back() != '+' && token.back() != '-'))
      throw Error("bad edge occurrence '" + token + "'");
    const bool forward = token.back() == '+';
    token.pop_back();
    const int e = edge_index(token);
    if (e < 0) throw Error("unknown edge '" + token + "'");
    sides.push_back({e, forward});
  }
  return add_tile(std::move(id), std::move(sides));
}

void Complex::set_marked(int vertex, bool marked) { marked_.at(vertex) = marked; }

std::vector<int> Complex::marked() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (marked_[v]) out.push_back(v);
  return out;
}

std::optional<CellRef> Complex::find(std::string_view id) const {
  auto it = ids_.find(std::string(id));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int Complex::vertex_index(std::string_view id) const {
  auto c = find(id);
  return c && c->dim == Dim::Vertex ? c->index : -1;
}

int Complex::edge_index(std::string_view id) const {
  auto c = find(id);
  return c && c->dim == Dim::Edge ? c->index : -1;
}

int Complex::tile_index(std::string_view id) const {
  auto c = find(id);
  return c && c->dim == Dim::Tile ? c->index : -1;
}

const std::string& Complex::cell_id(CellRef c) const {
  switch (c.dim) {
    case Dim::Vertex: return vertices_.at(c.index);
    case Dim::Edge: return edges_.at(c.index).id;
    case Dim::Tile: return tiles_.at(c.index).id;
  }
  throw Error("bad cell reference");
}

std::vector<std::array<SideRef, 2>> Complex::side_owners() const {
  std::vector<std::array<SideRef, 2>> owners(edges_.size());
  std::vector<std::array<int, 2>> count(edges_.size(), {0, 0});
  for (int t = 0; t < tile_count(); ++t) {
    const auto& w = tiles_[t].word;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      const int slot = w[i].forward ? 0 : 1;
      if (++count[w[i].edge][slot] == 1)
        owners[w[i].edge][slot] = {t, i};
      else
        owners[w[i].edge][slot] = {};
    }
  }
  return owners;
}

void ValidationReport::add(std::string invariant, std::vector<std::string> cells,
                           std::string detail) {
  violations.push_back({std::move(invariant), std::move(cells), std::move(detail)});
}

void ValidationReport::merge(const ValidationReport& other, std::string_view prefix) {
  for (Violation v : other.violations) {
    v.invariant = std::string(prefix) + v.invariant;
    violations.push_back(std::move(v));
  }
  for (const auto& w : other.warnings) warnings.push_back(std::string(prefix) + w);
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  if (ok()) out << "ok\n";
  for (const auto& v : violations) {
    out << "violation: " << v.invariant;
    if (!v.cells.empty()) {
      out << " [";
      for (std::size_t i = 0; i < v.cells.size(); ++i) out << (i ? " " : "") << v.cells[i];
      out << "]";
    }
    if (!v.detail.empty()) out << " (" << v.detail << ")";
    out << "\n";
  }
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  return out.str();
}

int euler_characteristic(const Complex& c) {
  return c.vertex_count() - c.edge_count() + c.tile_count();
}

std::vector<std::vector<VertexLink>> vertex_links(const Complex& c) {
  const auto owners = c.side_owners();
  // Flatten corners: id = offset[t] + k.
  std::vector<int> offset(c.tile_count() + 1, 0);
  for (int t = 0; t < c.tile_count(); ++t) offset[t + 1] = offset[t] + c.word_length(t);
  const int total = offset.back();

  auto twin = [&](Side s) { return owners[s.edge][s.forward ? 1 : 0]; };
  std::vector<int> next(total, -1), prev(total, -1);
  for (int t = 0; t < c.tile_count(); ++t) {
    const int len = c.word_length(t);
    for (int k = 0; k < len; ++k) {
      // outgoing side word[k] starts here; its twin ends here.
      const SideRef out = twin(c.tile(t).word[k]);
      if (out.valid()) {
        const int len2 = c.word_length(out.tile);
        const int nk = offset[out.tile] + (out.pos + 1) % len2;
        if (c.start(c.tile(out.tile).word[(out.pos + 1) % len2]) == c.start(c.tile(t).word[k]))
          next[offset[t] + k] = nk;
      }
    }
  }
  for (int i = 0; i < total; ++i)
    if (next[i] >= 0) {
      if (prev[next[i]] >= 0) next[i] = -1;  // inconsistent gluing; leave as chain end
      else prev[next[i]] = i;
    }

  auto corner_of = [&](int id) {
    const int t = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), id) - offset.begin()) - 1;
    return Corner{t, id - offset[t]};
  };

  std::vector<std::vector<VertexLink>> links(c.vertex_count());
  std::vector<bool> seen(total, false);
  auto walk = [&](int startId) {
    VertexLink link;
    int cur = startId;
    while (cur >= 0 && !seen[cur]) {
      seen[cur] = true;
      link.corners.push_back(corner_of(cur));
      cur = next[cur];
    }
    link.closed = (cur == startId);
    const Corner first = link.corners.front();
    links[c.start(c.tile(first.tile).word[first.index])].push_back(std::move(link));
  };
  for (int i = 0; i < total; ++i)
    if (prev[i] < 0 && !seen[i]) walk(i);
  for (int i = 0; i < total; ++i)
    if (!seen[i]) walk(i);
  return links;
}

namespace {

void check_words_closed(const Complex& c, ValidationReport& report, bool require_simple) {
  for (int t = 0; t < c.tile_count(); ++t) {
    const auto& w = c.tile(t).word;
    const int len = static_cast<int>(w.size());
    for (int i = 0; i < len; ++i) {
      if (c.end(w[i]) != c.start(w[(i + 1) % len])) {
        report.add("tile boundary not a closed edge path", {c.tile(t).id},
                   "at " + side_name(c, w[i]));
        break;
      }
    }
    if (require_simple) {
      std::set<int> seen;
      for (const Side& s : w)
        if (!seen.insert(c.start(s)).second) {
          report.add("tile boundary not simple", {c.tile(t).id}, "repeats " + c.vertex_id(c.start(s)));
          break;
        }
    }
  }
}

bool connected(const Complex& c) {
  if (c.vertex_count() == 0) return false;
  UnionFind uf(c.vertex_count());
  for (const Edge& e : c.edges()) uf.unite(e.from, e.to);
  const int root = uf.find(0);
  for (int v = 1; v < c.vertex_count(); ++v)
    if (uf.find(v) != root) return false;
  return true;
}

}  // namespace

ValidationReport validate_sphere(const Complex& c) {
  ValidationReport report;
  std::vector<std::array<int, 2>> count(c.edge_count(), {0, 0});
  for (const Tile& t : c.tiles())
    for (const Side& s : t.word) ++count[s.edge][s.forward ? 0 : 1];
  for (int e = 0; e < c.edge_count(); ++e)
    if (count[e][0] != 1 || count[e][1] != 1)
      report.add("edge side count ≠ 2", {c.edge(e).id},
                 "forward=" + std::to_string(count[e][0]) + " reverse=" + std::to_string(count[e][1]));
  check_words_closed(c, report, false);
  if (!connected(c)) report.add("complex not connected", {});
  const int chi = euler_characteristic(c);
  if (chi != 2) report.add("euler characteristic ≠ 2", {}, "V-E+F=" + std::to_string(chi));
  std::vector<bool> on_tile(c.vertex_count(), false);
  for (int t = 0; t < c.tile_count(); ++t)
    for (const Side& s : c.tile(t).word) on_tile[c.start(s)] = on_tile[c.end(s)] = true;
  for (int v = 0; v < c.vertex_count(); ++v)
    if (!on_tile[v]) report.add("vertex not on any tile", {c.vertex_id(v)});
  if (report.ok()) {
    const auto links = vertex_links(c);
    for (int v = 0; v < c.vertex_count(); ++v) {
      if (!links[v].empty() && (links[v].size() > 1 || !links[v][0].closed))
        report.add("pinch point", {c.vertex_id(v)},
                   std::to_string(links[v].size()) + " link components");
    }
  }
  return report;
}

ValidationReport validate_disk(const DiskComplex& d) {
  const Complex& c = d.complex;
  ValidationReport report;
  std::vector<std::array<int, 2>> count(c.edge_count(), {0, 0});
  for (const Tile& t : c.tiles())
    for (const Side& s : t.word) ++count[s.edge][s.forward ? 0 : 1];
  std::vector<int> on_boundary(c.edge_count(), 0);
  for (const Side& s : d.boundary) ++on_boundary[s.edge];
  for (int e = 0; e < c.edge_count(); ++e) {
    const int total = count[e][0] + count[e][1];
    if (total == 2 && count[e][0] == 1) {
      if (on_boundary[e]) report.add("interior edge on boundary cycle", {c.edge(e).id});
    } else if (total == 1) {
      const bool fwd = count[e][0] == 1;
      const bool listed = std::any_of(d.boundary.begin(), d.boundary.end(),
                                      [&](Side s) { return s.edge == e && s.forward == fwd; });
      if (on_boundary[e] != 1 || !listed)
        report.add("boundary edge missing from boundary cycle", {c.edge(e).id});
    } else {
      report.add("edge side count ≠ 2", {c.edge(e).id},
                 "forward=" + std::to_string(count[e][0]) + " reverse=" + std::to_string(count[e][1]));
    }
  }
  check_words_closed(c, report, true);
  if (d.boundary.empty()) report.add("empty boundary", {});
  std::set<int> boundary_vertices;
  const int blen = static_cast<int>(d.boundary.size());
  for (int i = 0; i < blen; ++i) {
    if (c.end(d.boundary[i]) != c.start(d.boundary[(i + 1) % blen])) {
      report.add("boundary not a closed edge path", {c.edge(d.boundary[i].edge).id});
      break;
    }
    if (!boundary_vertices.insert(c.start(d.boundary[i])).second)
      report.add("boundary not simple", {c.vertex_id(c.start(d.boundary[i]))});
  }
  if (!connected(c)) report.add("complex not connected", {});
  const int chi = euler_characteristic(c);
  if (chi != 1) report.add("euler characteristic ≠ 1", {}, "V-E+F=" + std::to_string(chi));
  std::vector<bool> on_tile(c.vertex_count(), false);
  for (int t = 0; t < c.tile_count(); ++t)
    for (const Side& s : c.tile(t).word) on_tile[c.start(s)] = on_tile[c.end(s)] = true;
  for (int v = 0; v < c.vertex_count(); ++v)
    if (!on_tile[v]) report.add("vertex not on any tile", {c.vertex_id(v)});
  if (report.ok()) {
    const auto links = vertex_links(c);
    for (int v = 0; v < c.vertex_count(); ++v) {
      const bool bdry = boundary_vertices.count(v) > 0;
      if (!links[v].empty() && (links[v].size() > 1 || links[v][0].closed == bdry))
        report.add("pinch point", {c.vertex_id(v)},
                   std::to_string(links[v].size()) + " link components");
    }
  }
  return report;
}

std::optional<std::vector<Side>> derive_boundary(const Complex& c) {
  std::vector<int> count(c.edge_count(), 0);
  std::vector<Side> sides;
  for (const Tile& t : c.tiles())
    for (const Side& s : t.word) ++count[s.edge];
  for (const Tile& t : c.tiles())
    for (const Side& s : t.word)
      if (count[s.edge] == 1) sides.push_back(s);
  if (sides.empty()) return std::nullopt;
  std::map<int, int> by_start;
  for (int i = 0; i < static_cast<int>(sides.size()); ++i)
    if (!by_start.emplace(c.start(sides[i]), i).second) return std::nullopt;
  // Start from the side with the least edge index for a deterministic rotation.
  int first = 0;
  for (int i = 1; i < static_cast<int>(sides.size()); ++i)
    if (sides[i].edge < sides[first].edge) first = i;
  std::vector<Side> cycle;
  int cur = first;
  do {
    cycle.push_back(sides[cur]);
    auto it = by_start.find(c.end(sides[cur]));
    if (it == by_start.end()) return std::nullopt;
    cur = it->second;
  } while (cur != first && cycle.size() <= sides.size());
  if (cycle.size() != sides.size()) return std::nullopt;
  return cycle;
}

std::vector<std::vector<int>> TileAdjacencyGraph::neighbours() const {
  std::vector<std::vector<int>> out(nodes);
  for (const Arc& a : arcs) {
    out[a.a].push_back(a.b);
    out[a.b].push_back(a.a);
  }
  for (auto& n : out) std::sort(n.begin(), n.end());
  return out;
}

TileAdjacencyGraph tile_adjacency(const Complex& c, Adjacency mode) {
  std::map<std::pair<int, int>, Adjacency> arcs;
  std::vector<std::vector<int>> edge_tiles(c.edge_count());
  for (int t = 0; t < c.tile_count(); ++t)
    for (const Side& s : c.tile(t).word) edge_tiles[s.edge].push_back(t);
  for (const auto& ts : edge_tiles)
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j)
        if (ts[i] != ts[j]) arcs[{std::min(ts[i], ts[j]), std::max(ts[i], ts[j])}] = Adjacency::Edge;
  if (mode == Adjacency::Vertex) {
    std::vector<std::vector<int>> vertex_tiles(c.vertex_count());
    for (int t = 0; t < c.tile_count(); ++t)
      for (const Side& s : c.tile(t).word) vertex_tiles[c.start(s)].push_back(t);
    for (auto& ts : vertex_tiles) {
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) arcs.emplace(std::pair{ts[i], ts[j]}, Adjacency::Vertex);
    }
  }
  TileAdjacencyGraph g;
  g.nodes = c.tile_count();
  for (const auto& [k, m] : arcs) g.arcs.push_back({k.first, k.second, m});
  return g;
}

std::vector<int> incident_tiles(const Complex& c, CellRef cell) {
  std::vector<int> out;
  if (cell.dim == Dim::Tile) return {cell.index};
  for (int t = 0; t < c.tile_count(); ++t)
    for (const Side& s : c.tile(t).word) {
      const bool hit = cell.dim == Dim::Edge ? s.edge == cell.index : c.start(s) == cell.index;
      if (hit) {
        out.push_back(t);
        break;
      }
    }
  return out;
}

}  // namespace fsr
