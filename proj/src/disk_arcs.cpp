#include "fsr/disk_arcs.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "fsr/subdivision.hpp"

namespace fsr {

bool EdgePath::simple() const {
  std::set<int> seen(vertices.begin(), vertices.end());
  return seen.size() == vertices.size() && edges.size() + 1 == vertices.size();
}

bool is_three_point_arc(const Complex& c, const EdgePath& p, int u1, int u2, int v) {
  if (p.vertices.empty() || !p.simple()) return false;
  if (p.vertices.front() != u1 || p.vertices.back() != u2) return false;
  if (std::find(p.vertices.begin(), p.vertices.end(), v) == p.vertices.end()) return false;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = c.edge(p.edges[i]);
    const int a = p.vertices[i], b = p.vertices[i + 1];
    if (!((e.from == a && e.to == b) || (e.from == b && e.to == a))) return false;
  }
  return true;
}

namespace {

EdgePath reversed(EdgePath p) {
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

void extend(EdgePath& p, const EdgePath& q) {
  if (p.vertices.empty()) {
    p = q;
    return;
  }
  if (p.vertices.back() != q.vertices.front()) throw Error("internal: paths do not meet");
  p.vertices.insert(p.vertices.end(), q.vertices.begin() + 1, q.vertices.end());
  p.edges.insert(p.edges.end(), q.edges.begin(), q.edges.end());
}

class Peeler {
 public:
  explicit Peeler(const Complex& c) : c_(c), owners_(c.side_owners()) {}

  // Vertices of the union when it is a disk without pinches, else empty.
  std::vector<int> disk_vertices(const std::vector<int>& tiles) const {
    const std::vector<bool> interior(c_.edge_count(), true);
    const CutDisk cd = cut_disk(c_, tiles, interior);
    if (!cd.boundary_is_cycle) return {};
    std::vector<int> vs = cd.vertex_source;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return {};
    if (!validate_disk(cd.to_disk(c_, interior)).ok()) return {};
    return vs;
  }

  std::vector<int> peelable(const std::vector<int>& tiles) const {
    std::vector<int> out;
    for (int t : tiles) {
      std::vector<int> rest;
      for (int u : tiles)
        if (u != t) rest.push_back(u);
      if (!disk_vertices(rest).empty()) out.push_back(t);
    }
    return out;
  }

  EdgePath arc(std::vector<int> tiles, int a, int b, int v) const {
    if (v == a || v == b) v = -1;
    if (tiles.size() == 1) return polygon_arc(tiles[0], a, b, v);
    if (v < 0) return shortest(tiles, a, b);

    std::sort(tiles.begin(), tiles.end(), [&](int x, int y) { return c_.tile(x).id < c_.tile(y).id; });
    for (int t : tiles) {
      std::vector<int> rest;
      for (int u : tiles)
        if (u != t) rest.push_back(u);
      const std::vector<int> inner = disk_vertices(rest);
      if (inner.empty() || !std::binary_search(inner.begin(), inner.end(), v)) continue;
      return through(t, rest, inner, a, b, v);
    }
    throw Error("no peelable tile keeps the middle vertex; input is not a tiled disk");
  }

 private:
  // Outer boundary arc of t relative to the remaining tiles, from w1 to w2.
  EdgePath outer_arc(int t, const std::vector<int>& rest) const {
    const auto& w = c_.tile(t).word;
    const int k = static_cast<int>(w.size());
    std::vector<bool> outer(k);
    for (int i = 0; i < k; ++i) {
      const SideRef other = owners_[w[i].edge][w[i].forward ? 1 : 0];
      outer[i] = !(other.valid() && std::find(rest.begin(), rest.end(), other.tile) != rest.end());
    }
    int first = -1;
    for (int i = 0; i < k && first < 0; ++i)
      if (outer[i] && !outer[(i + k - 1) % k]) first = i;
    if (first < 0) throw Error("internal: peeled tile has no outer arc");
    EdgePath p{{c_.start(w[first])}, {}};
    for (int i = first; outer[i % k] && static_cast<int>(p.edges.size()) < k; ++i) {
      p.edges.push_back(w[i % k].edge);
      p.vertices.push_back(c_.end(w[i % k]));
    }
    return p;
  }

  EdgePath through(int t, const std::vector<int>& rest, const std::vector<int>& inner, int a, int b,
                   int v) const {
    auto in_rest = [&](int x) { return std::binary_search(inner.begin(), inner.end(), x); };
    const EdgePath outer = outer_arc(t, rest);
    const int w1 = outer.vertices.front(), w2 = outer.vertices.back();
    auto segment = [&](int from, int to) {  // along the outer arc, either direction
      const auto& vs = outer.vertices;
      const int i = static_cast<int>(std::find(vs.begin(), vs.end(), from) - vs.begin());
      const int j = static_cast<int>(std::find(vs.begin(), vs.end(), to) - vs.begin());
      EdgePath p;
      const int lo = std::min(i, j), hi = std::max(i, j);
      p.vertices.assign(vs.begin() + lo, vs.begin() + hi + 1);
      p.edges.assign(outer.edges.begin() + lo, outer.edges.begin() + hi);
      return i <= j ? p : reversed(p);
    };

    if (in_rest(a) && in_rest(b)) return arc(rest, a, b, v);
    if (!in_rest(a) && !in_rest(b)) {
      const auto& vs = outer.vertices;
      const bool a_first = std::find(vs.begin(), vs.end(), a) < std::find(vs.begin(), vs.end(), b);
      const int wa = a_first ? w1 : w2, wb = a_first ? w2 : w1;
      EdgePath p = segment(a, wa);
      extend(p, arc(rest, wa, wb, v));
      extend(p, segment(wb, b));
      return p;
    }
    const bool flip = !in_rest(a);
    const int inside = flip ? b : a, outside = flip ? a : b;
    int w = w1 == inside ? w2 : w1;
    if (w == v && w1 != inside && w2 != inside) w = w == w1 ? w2 : w1;
    EdgePath p = arc(rest, inside, w, v);
    extend(p, segment(w, outside));
    return flip ? reversed(p) : p;
  }

  EdgePath polygon_arc(int t, int a, int b, int v) const {
    const auto& w = c_.tile(t).word;
    const int k = static_cast<int>(w.size());
    int at = -1;
    for (int i = 0; i < k; ++i)
      if (c_.start(w[i]) == a) at = i;
    if (at < 0) throw Error("vertex is not on the tile");
    auto walk = [&](bool forward) {
      EdgePath p{{a}, {}};
      int i = at;
      while (p.vertices.back() != b && static_cast<int>(p.edges.size()) < k) {
        const Side s = forward ? w[i] : w[(i + k - 1) % k];
        p.edges.push_back(s.edge);
        p.vertices.push_back(forward ? c_.end(s) : c_.start(s));
        i = forward ? (i + 1) % k : (i + k - 1) % k;
      }
      return p;
    };
    EdgePath p = walk(true);
    if (p.vertices.back() != b) throw Error("vertex is not on the tile");
    if (v < 0 || std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end()) return p;
    return walk(false);
  }

  EdgePath shortest(const std::vector<int>& tiles, int a, int b) const {
    std::vector<std::vector<std::pair<int, int>>> adj(c_.vertex_count());
    for (int t : tiles)
      for (const Side& s : c_.tile(t).word) {
        const Edge& e = c_.edge(s.edge);
        adj[e.from].push_back({e.to, s.edge});
        adj[e.to].push_back({e.from, s.edge});
      }
    std::vector<std::pair<int, int>> parent(c_.vertex_count(), {-1, -1});
    std::vector<bool> seen(c_.vertex_count(), false);
    std::deque<int> queue{a};
    seen[a] = true;
    while (!queue.empty() && !seen[b]) {
      const int x = queue.front();
      queue.pop_front();
      for (auto [y, e] : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          parent[y] = {x, e};
          queue.push_back(y);
        }
    }
    if (!seen[b]) throw Error("vertices are not connected");
    EdgePath p{{b}, {}};
    for (int x = b; x != a; x = parent[x].first) {
      p.edges.push_back(parent[x].second);
      p.vertices.push_back(parent[x].first);
    }
    return reversed(p);
  }

  const Complex& c_;
  std::vector<std::array<SideRef, 2>> owners_;
};

std::vector<int> all_tiles(const Complex& c) {
  std::vector<int> out(c.tile_count());
  for (int t = 0; t < c.tile_count(); ++t) out[t] = t;
  return out;
}

}  // namespace

std::vector<int> peelable_tiles(const DiskComplex& x) {
  if (x.complex.tile_count() < 2) throw Error("peeling needs at least two tiles");
  return Peeler(x.complex).peelable(all_tiles(x.complex));
}

EdgePath three_point_arc(const DiskComplex& x, int u1, int u2, int v) {
  const Complex& c = x.complex;
  for (int q : {u1, u2, v})
    if (q < 0 || q >= c.vertex_count()) throw Error("unknown vertex");
  if (u1 == u2 || u1 == v || u2 == v) throw Error("the three vertices must be distinct");
  if (c.tile_count() == 0) throw Error("disk has no tiles");
  const EdgePath p = Peeler(c).arc(all_tiles(c), u1, u2, v);
  if (!is_three_point_arc(c, p, u1, u2, v)) throw Error("internal: arc construction failed");
  return p;
}

}  // namespace fsr
