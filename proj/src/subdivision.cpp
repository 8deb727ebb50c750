#include "fsr/subdivision.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace fsr {

namespace {

int mod(int a, int k) { return ((a % k) + k) % k; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void SubdivisionRule::resize_maps() {
  vertex_carrier.resize(refined.vertex_count());
  edge_carrier.resize(refined.edge_count());
  tile_carrier.resize(refined.tile_count());
  vertex_map.resize(refined.vertex_count(), -1);
  edge_map.resize(refined.edge_count());
  tile_map.resize(refined.tile_count());
}

CutDisk cut_disk(const Complex& c, const std::vector<int>& tiles,
                 const std::vector<bool>& interior_edge) {
  CutDisk out;
  out.tiles = tiles;
  std::vector<int> local(c.tile_count(), -1);
  for (int i = 0; i < static_cast<int>(tiles.size()); ++i) local[tiles[i]] = i;

  std::vector<int> offset(tiles.size() + 1, 0);
  for (std::size_t i = 0; i < tiles.size(); ++i) offset[i + 1] = offset[i] + c.word_length(tiles[i]);
  UnionFind uf(offset.back());
  auto corner = [&](SideRef r) {
    return offset[local[r.tile]] + mod(r.pos, c.word_length(r.tile));
  };

  const auto owners = c.side_owners();
  auto glued = [&](int e) {
    return interior_edge[e] && owners[e][0].valid() && owners[e][1].valid() &&
           local[owners[e][0].tile] >= 0 && local[owners[e][1].tile] >= 0;
  };
  for (int e = 0; e < c.edge_count(); ++e) {
    if (!glued(e)) continue;
    const SideRef f = owners[e][0], r = owners[e][1];
    uf.unite(corner(f), corner({r.tile, r.pos + 1}));
    uf.unite(corner({f.tile, f.pos + 1}), corner(r));
  }

  std::map<int, int> root_to_vertex;
  out.corner_vertex.resize(tiles.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const auto& w = c.tile(tiles[i]).word;
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
      const int root = uf.find(offset[i] + k);
      auto [it, inserted] = root_to_vertex.emplace(root, static_cast<int>(out.vertex_source.size()));
      if (inserted) out.vertex_source.push_back(c.start(w[k]));
      out.corner_vertex[i].push_back(it->second);
    }
  }

  std::vector<SideRef> sides;
  std::map<int, int> by_start;
  bool unique = true;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const auto& w = c.tile(tiles[i]).word;
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
      if (glued(w[k].edge)) continue;
      if (!by_start.emplace(out.corner_vertex[i][k], static_cast<int>(sides.size())).second) unique = false;
      sides.push_back({tiles[i], k});
    }
  }
  if (sides.empty()) return out;
  int cur = 0;
  do {
    out.boundary.push_back(sides[cur]);
    const SideRef s = sides[cur];
    const int end_vertex = out.corner_vertex[local[s.tile]][mod(s.pos + 1, c.word_length(s.tile))];
    auto it = by_start.find(end_vertex);
    if (it == by_start.end()) break;
    cur = it->second;
  } while (cur != 0 && out.boundary.size() <= sides.size());
  out.boundary_is_cycle = unique && cur == 0 && out.boundary.size() == sides.size();
  return out;
}

DiskComplex CutDisk::to_disk(const Complex& source, const std::vector<bool>& interior_edge) const {
  DiskComplex d;
  Complex& c = d.complex;
  std::map<int, int> copies;
  for (int src : vertex_source) ++copies[src];
  std::map<int, int> seen;
  for (int src : vertex_source) {
    std::string id = source.vertex_id(src);
    if (copies[src] > 1) id += "#" + std::to_string(seen[src]++);
    c.add_vertex(std::move(id), source.is_marked(src));
  }
  std::vector<int> local(source.tile_count(), -1);
  for (int i = 0; i < static_cast<int>(tiles.size()); ++i) local[tiles[i]] = i;

  const auto owners = source.side_owners();
  std::map<int, int> interior;  // source edge -> disk edge
  std::vector<std::vector<Side>> words(tiles.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const auto& w = source.tile(tiles[i]).word;
    const int len = static_cast<int>(w.size());
    for (int k = 0; k < len; ++k) {
      const int e = w[k].edge;
      const bool both = owners[e][0].valid() && owners[e][1].valid() &&
                        local[owners[e][0].tile] >= 0 && local[owners[e][1].tile] >= 0;
      const int from = corner_vertex[i][k];
      const int to = corner_vertex[i][(k + 1) % len];
      if (interior_edge[e] && both) {
        auto it = interior.find(e);
        if (it == interior.end()) {
          const int a = w[k].forward ? from : to;
          const int b = w[k].forward ? to : from;
          it = interior.emplace(e, c.add_edge(source.edge(e).id, a, b)).first;
        }
        words[i].push_back({it->second, w[k].forward});
      } else {
        const std::string id = source.edge(e).id + (w[k].forward ? "#f" : "#r");
        words[i].push_back({c.add_edge(id, from, to), true});
      }
    }
  }
  for (std::size_t i = 0; i < tiles.size(); ++i) c.add_tile(source.tile(tiles[i]).id, words[i]);
  for (const SideRef& s : boundary) {
    const int i = local[s.tile];
    d.boundary.push_back(words[i][s.pos]);
  }
  return d;
}

namespace {

using Address = TilePattern::VertexAddress;

ValidationReport analyze(const SubdivisionRule& r, RulePatterns* out) {
  ValidationReport report;
  report.merge(validate_sphere(r.base), "base: ");
  report.merge(validate_sphere(r.refined), "refined: ");
  if (!report.ok()) return report;
  const Complex& B = r.base;
  const Complex& R = r.refined;

  if (static_cast<int>(r.vertex_carrier.size()) != R.vertex_count() ||
      static_cast<int>(r.edge_carrier.size()) != R.edge_count() ||
      static_cast<int>(r.tile_carrier.size()) != R.tile_count() ||
      static_cast<int>(r.vertex_map.size()) != R.vertex_count() ||
      static_cast<int>(r.edge_map.size()) != R.edge_count() ||
      static_cast<int>(r.tile_map.size()) != R.tile_count()) {
    report.add("map tables incomplete", {});
    return report;
  }
  auto in_base = [&](CellRef c) {
    const int n = c.dim == Dim::Vertex ? B.vertex_count() : c.dim == Dim::Edge ? B.edge_count() : B.tile_count();
    return c.index >= 0 && c.index < n;
  };
  for (int v = 0; v < R.vertex_count(); ++v) {
    if (!in_base(r.vertex_carrier[v])) report.add("carrier undefined", {R.vertex_id(v)});
    if (r.vertex_map[v] < 0 || r.vertex_map[v] >= B.vertex_count()) report.add("sigma undefined", {R.vertex_id(v)});
  }
  for (int e = 0; e < R.edge_count(); ++e) {
    if (!in_base(r.edge_carrier[e]) || r.edge_carrier[e].dim == Dim::Vertex)
      report.add("carrier undefined or of wrong dimension", {R.edge(e).id});
    if (r.edge_map[e].edge < 0 || r.edge_map[e].edge >= B.edge_count()) report.add("sigma undefined", {R.edge(e).id});
  }
  for (int t = 0; t < R.tile_count(); ++t) {
    if (!in_base(r.tile_carrier[t]) || r.tile_carrier[t].dim != Dim::Tile)
      report.add("carrier undefined or of wrong dimension", {R.tile(t).id});
    if (r.tile_map[t].tile < 0 || r.tile_map[t].tile >= B.tile_count()) report.add("sigma undefined", {R.tile(t).id});
  }
  if (!report.ok()) return report;

  RulePatterns pat;
  // Base vertices survive as refined vertices.
  pat.base_vertex_in_refined.assign(B.vertex_count(), -1);
  for (int v = 0; v < R.vertex_count(); ++v) {
    const CellRef c = r.vertex_carrier[v];
    if (c.dim != Dim::Vertex) continue;
    if (pat.base_vertex_in_refined[c.index] >= 0)
      report.add("base vertex carried by several refined vertices", {B.vertex_id(c.index), R.vertex_id(v)});
    pat.base_vertex_in_refined[c.index] = v;
  }
  for (int v = 0; v < B.vertex_count(); ++v)
    if (pat.base_vertex_in_refined[v] < 0) report.add("base vertex missing from refinement", {B.vertex_id(v)});
  if (!report.ok()) return report;

  // Edge patterns: the refined cells carried by each base edge form a path.
  pat.edges.resize(B.edge_count());
  {
    std::vector<std::vector<int>> carried(B.edge_count());
    for (int e = 0; e < R.edge_count(); ++e)
      if (r.edge_carrier[e].dim == Dim::Edge) carried[r.edge_carrier[e].index].push_back(e);
    for (int E = 0; E < B.edge_count(); ++E) {
      const Edge& be = B.edge(E);
      if (be.from == be.to) {
        report.add("loop edges are not supported", {be.id});
        continue;
      }
      EdgePattern& p = pat.edges[E];
      std::set<int> unused(carried[E].begin(), carried[E].end());
      int cur = pat.base_vertex_in_refined[be.from];
      const int goal = pat.base_vertex_in_refined[be.to];
      p.vertices.push_back(cur);
      bool broken = false;
      while (cur != goal) {
        int next_edge = -1;
        for (int e : unused)
          if (R.edge(e).from == cur || R.edge(e).to == cur) {
            if (next_edge >= 0) broken = true;
            next_edge = e;
          }
        if (next_edge < 0 || broken) {
          broken = true;
          break;
        }
        unused.erase(next_edge);
        const bool fwd = R.edge(next_edge).from == cur;
        cur = fwd ? R.edge(next_edge).to : R.edge(next_edge).from;
        p.edges.push_back(next_edge);
        p.forward.push_back(fwd);
        p.vertices.push_back(cur);
        if (cur != goal) {
          const CellRef c = r.vertex_carrier[cur];
          if (!(c.dim == Dim::Edge && c.index == E)) {
            broken = true;
            break;
          }
        }
      }
      if (broken || !unused.empty() || p.edges.empty())
        report.add("edge subdivision is not a path", {be.id});
    }
    for (int v = 0; v < R.vertex_count(); ++v) {
      const CellRef c = r.vertex_carrier[v];
      if (c.dim != Dim::Edge) continue;
      const auto& vs = pat.edges[c.index].vertices;
      if (std::find(vs.begin(), vs.end(), v) == vs.end())
        report.add("vertex carried by edge but off its subdivision path", {R.vertex_id(v), B.edge(c.index).id});
    }
  }
  if (!report.ok()) return report;

  // Tile patterns.
  pat.tiles.resize(B.tile_count());
  pat.local_tile.assign(R.tile_count(), -1);
  for (int T = 0; T < B.tile_count(); ++T) {
    TilePattern& tp = pat.tiles[T];
    const std::string& tid = B.tile(T).id;
    const int k = B.word_length(T);
    std::vector<bool> interior(R.edge_count(), false);
    for (int t = 0; t < R.tile_count(); ++t)
      if (r.tile_carrier[t].index == T) {
        pat.local_tile[t] = static_cast<int>(tp.tiles.size());
        tp.tiles.push_back(t);
      }
    for (int e = 0; e < R.edge_count(); ++e)
      if (r.edge_carrier[e] == CellRef{Dim::Tile, T}) {
        interior[e] = true;
        tp.edges.push_back(e);
      }
    for (int v = 0; v < R.vertex_count(); ++v)
      if (r.vertex_carrier[v] == CellRef{Dim::Tile, T}) tp.interior_vertices.push_back(v);
    if (tp.tiles.empty()) {
      report.add("base tile has no subtiles", {tid});
      continue;
    }
    const auto owners = R.side_owners();
    for (int e : tp.edges)
      for (const SideRef& s : owners[e])
        if (r.tile_carrier[s.tile].index != T)
          report.add("interior edge borders a tile of another carrier", {R.edge(e).id, tid});

    const CutDisk cd = cut_disk(R, tp.tiles, interior);
    if (!cd.boundary_is_cycle) {
      report.add("subdivided tile is not a disk", {tid}, "boundary is not a single cycle");
      continue;
    }
    const ValidationReport disk_report = validate_disk(cd.to_disk(R, interior));
    if (!disk_report.ok()) {
      report.merge(disk_report, "subdivision of " + tid + ": ");
      continue;
    }
    // Interior disk vertices are exactly the vertices carried by the tile.
    std::vector<bool> on_boundary(cd.vertex_source.size(), false);
    for (const SideRef& s : cd.boundary) on_boundary[cd.corner_vertex[pat.local_tile[s.tile]][s.pos]] = true;
    for (std::size_t dv = 0; dv < cd.vertex_source.size(); ++dv) {
      const bool carried_inside = r.vertex_carrier[cd.vertex_source[dv]] == CellRef{Dim::Tile, T};
      if (carried_inside == on_boundary[dv])
        report.add("vertex carrier disagrees with subdivided tile", {R.vertex_id(cd.vertex_source[dv]), tid});
    }

    // Align the disk boundary with the base tile's boundary word.
    const int blen = static_cast<int>(cd.boundary.size());
    auto start_vertex = [&](int i) {
      const SideRef s = cd.boundary[mod(i, blen)];
      return cd.corner_vertex[pat.local_tile[s.tile]][s.pos];
    };
    int first = -1;
    for (int i = 0; i < blen && first < 0; ++i)
      if (r.vertex_carrier[cd.vertex_source[start_vertex(i)]].dim == Dim::Vertex) first = i;
    if (first < 0) {
      report.add("subdivided tile boundary has no corners", {tid});
      continue;
    }
    std::vector<int> boundary_run(blen, -1);
    std::vector<int> run_position;
    std::vector<int> run_start;
    bool aligned = true;
    for (int i = 0; i < blen && aligned;) {
      const int idx = mod(first + i, blen);
      const Side s0 = R.side_at(cd.boundary[idx]);
      const CellRef c0 = r.edge_carrier[s0.edge];
      if (c0.dim != Dim::Edge) {
        aligned = false;
        break;
      }
      const EdgePattern& ep = pat.edges[c0.index];
      const auto at = std::find(ep.edges.begin(), ep.edges.end(), s0.edge) - ep.edges.begin();
      const bool base_forward = s0.forward == ep.forward[at];
      const SideRef owner = B.side_owners()[c0.index][base_forward ? 0 : 1];
      if (owner.tile != T) {
        aligned = false;
        break;
      }
      const int m = static_cast<int>(ep.edges.size());
      for (int j = 0; j < m; ++j) {
        if (i + j >= blen) {
          aligned = false;
          break;
        }
        const Side s = R.side_at(cd.boundary[mod(first + i + j, blen)]);
        const int want = base_forward ? j : m - 1 - j;
        if (s.edge != ep.edges[want] || s.forward != (ep.forward[want] == base_forward)) aligned = false;
        boundary_run[mod(first + i + j, blen)] = static_cast<int>(run_position.size());
      }
      run_start.push_back(idx);
      run_position.push_back(owner.pos);
      i += m;
    }
    const int runs = static_cast<int>(run_position.size());
    if (aligned && runs == k) {
      for (int i = 0; i < runs; ++i)
        if (run_position[(i + 1) % runs] != mod(run_position[i] + 1, k)) aligned = false;
    } else {
      aligned = false;
    }
    if (!aligned) {
      report.add("subdivided tile boundary does not match the base boundary word", {tid});
      continue;
    }

    // Addresses of every corner and side.
    std::vector<Address> address(cd.vertex_source.size());
    for (std::size_t dv = 0; dv < address.size(); ++dv) address[dv] = {Address::Interior, -1, cd.vertex_source[dv]};
    for (int i = 0; i < blen; ++i) {
      const int dv = start_vertex(i);
      const int run = boundary_run[i];
      const bool corner = r.vertex_carrier[cd.vertex_source[dv]].dim == Dim::Vertex;
      address[dv] = {corner ? Address::Corner : Address::OnSide, run_position[run], cd.vertex_source[dv]};
    }
    tp.side_position.resize(tp.tiles.size());
    tp.corner_address.resize(tp.tiles.size());
    for (std::size_t li = 0; li < tp.tiles.size(); ++li) {
      const int len = R.word_length(tp.tiles[li]);
      tp.side_position[li].assign(len, -1);
      for (int c = 0; c < len; ++c) tp.corner_address[li].push_back(address[cd.corner_vertex[li][c]]);
    }
    for (int i = 0; i < blen; ++i) {
      const SideRef s = cd.boundary[i];
      tp.side_position[pat.local_tile[s.tile]][s.pos] = run_position[boundary_run[i]];
    }
    for (int e : tp.edges) {
      const SideRef f = owners[e][0];
      const int li = pat.local_tile[f.tile];
      const int len = R.word_length(f.tile);
      tp.edge_ends.emplace_back(tp.corner_address[li][f.pos], tp.corner_address[li][(f.pos + 1) % len]);
    }
  }
  if (!report.ok()) return report;

  // The subdivision map.
  for (int e = 0; e < R.edge_count(); ++e) {
    const EdgeImage im = r.edge_map[e];
    const Edge& be = B.edge(im.edge);
    const int a = r.vertex_map[R.edge(e).from];
    const int b = r.vertex_map[R.edge(e).to];
    if (a != (im.reversed ? be.to : be.from) || b != (im.reversed ? be.from : be.to))
      report.add("edge image endpoints inconsistent", {R.edge(e).id, be.id});
  }
  for (int t = 0; t < R.tile_count(); ++t) {
    const TileImage im = r.tile_map[t];
    const auto& w = R.tile(t).word;
    const auto& W = B.tile(im.tile).word;
    if (im.reversed) report.add("orientation-reversing tile map", {R.tile(t).id});
    if (w.size() != W.size()) {
      report.add("tile boundary correspondence", {R.tile(t).id, B.tile(im.tile).id}, "word lengths differ");
      continue;
    }
    const int k = static_cast<int>(w.size());
    for (int i = 0; i < k; ++i) {
      const int j = im.reversed ? mod(im.offset - i, k) : mod(i + im.offset, k);
      const EdgeImage ei = r.edge_map[w[i].edge];
      const bool fwd = (w[i].forward != ei.reversed) != im.reversed;
      if (ei.edge != W[j].edge || fwd != W[j].forward) {
        report.add("tile boundary correspondence", {R.tile(t).id, B.tile(im.tile).id},
                   "position " + std::to_string(i));
        break;
      }
    }
  }
  std::vector<int> tile_pre(B.tile_count(), 0), edge_pre(B.edge_count(), 0);
  for (const TileImage& im : r.tile_map) ++tile_pre[im.tile];
  for (const EdgeImage& im : r.edge_map) ++edge_pre[im.edge];
  const int d = tile_pre.empty() ? 0 : tile_pre[0];
  for (int T = 0; T < B.tile_count(); ++T)
    if (tile_pre[T] != d)
      report.add("non-constant tile preimage count", {B.tile(T).id},
                 std::to_string(tile_pre[T]) + " vs " + std::to_string(d));
  for (int E = 0; E < B.edge_count(); ++E)
    if (edge_pre[E] != d)
      report.add("non-constant edge preimage count", {B.edge(E).id},
                 std::to_string(edge_pre[E]) + " vs " + std::to_string(d));
  if (d == 1) report.warnings.push_back("degree-1 rule");

  // Local degrees from link lengths; critical values must be marked.
  std::vector<int> valence_b(B.vertex_count(), 0), valence_r(R.vertex_count(), 0);
  for (const Tile& t : B.tiles())
    for (const Side& s : t.word) ++valence_b[B.start(s)];
  for (const Tile& t : R.tiles())
    for (const Side& s : t.word) ++valence_r[R.start(s)];
  std::vector<int> degree_sum(B.vertex_count(), 0);
  for (int v = 0; v < R.vertex_count(); ++v) {
    const int img = r.vertex_map[v];
    if (valence_r[v] % valence_b[img] != 0) {
      report.add("local degree not integral", {R.vertex_id(v)});
      continue;
    }
    const int local = valence_r[v] / valence_b[img];
    degree_sum[img] += local;
    if (local > 1 && !B.is_marked(img))
      report.add("critical value not marked", {R.vertex_id(v), B.vertex_id(img)});
  }
  for (int V = 0; V < B.vertex_count(); ++V)
    if (degree_sum[V] != d) report.add("vertex preimage degrees do not sum to the degree", {B.vertex_id(V)});
  for (int V : B.marked())
    if (!B.is_marked(r.vertex_map[pat.base_vertex_in_refined[V]]))
      report.add("marked set not forward invariant", {B.vertex_id(V)});
  for (int v = 0; v < R.vertex_count(); ++v) {
    const CellRef c = r.vertex_carrier[v];
    if (R.is_marked(v) != (c.dim == Dim::Vertex && B.is_marked(c.index)))
      report.add("refined marked set differs from base marked set", {R.vertex_id(v)});
  }

  if (out && report.ok()) *out = std::move(pat);
  return report;
}

}  // namespace

ValidationReport validate_rule(const SubdivisionRule& r) { return analyze(r, nullptr); }

RulePatterns compile_patterns(const SubdivisionRule& r) {
  RulePatterns pat;
  const ValidationReport report = analyze(r, &pat);
  if (!report.ok()) throw Error("invalid subdivision rule '" + r.name + "':\n" + report.to_string());
  return pat;
}

int degree(const SubdivisionRule& r) {
  int d = 0;
  for (const TileImage& im : r.tile_map)
    if (im.tile == 0) ++d;
  return d;
}

namespace {

std::uint64_t cell_key(Dim created, Dim parent_dim, int parent, int pattern) {
  return (static_cast<std::uint64_t>(created) << 62) | (static_cast<std::uint64_t>(parent_dim) << 60) |
         (static_cast<std::uint64_t>(parent) << 30) | static_cast<std::uint64_t>(pattern);
}

}  // namespace

SubdivisionTower::SubdivisionTower(SubdivisionRule rule)
    : rule_(std::move(rule)), patterns_(compile_patterns(rule_)) {
  Level l0;
  l0.complex = rule_.base;
  const Complex& B = rule_.base;
  for (int v = 0; v < B.vertex_count(); ++v) {
    l0.vertex_type.push_back(v);
    l0.vertex_base.push_back({Dim::Vertex, v});
  }
  for (int e = 0; e < B.edge_count(); ++e) {
    l0.edge_type.push_back({e, false});
    l0.edge_base.push_back({Dim::Edge, e});
  }
  for (int t = 0; t < B.tile_count(); ++t) {
    l0.tile_type.push_back({t, 0, false});
    l0.tile_base.push_back(t);
  }
  levels_.push_back(std::move(l0));
}

void SubdivisionTower::subdivide_to(int n) {
  while (depth() < n) subdivide();
}

void SubdivisionTower::subdivide() {
  const int n = depth();
  const Level& L = levels_.back();
  const Complex& C = L.complex;
  const SubdivisionRule& r = rule_;
  Level N;
  Complex& X = N.complex;
  if (n + 1 >= (1 << 30) || C.tile_count() >= (1 << 28)) throw Error("tower too deep");

  auto lookup = [](const Level& lvl, std::uint64_t key) {
    auto it = lvl.keys.find(key);
    if (it == lvl.keys.end()) throw Error("subdivision tower corrupted: missing cell");
    return it->second;
  };
  auto parent_sigma = [&](CellRef parent) {
    switch (parent.dim) {
      case Dim::Vertex: return CellRef{Dim::Vertex, L.vertex_sigma[parent.index]};
      case Dim::Edge: return CellRef{Dim::Edge, L.edge_sigma[parent.index].edge};
      case Dim::Tile: return CellRef{Dim::Tile, L.tile_sigma[parent.index].tile};
    }
    return CellRef{};
  };
  auto base_of = [&](CellRef parent) {
    switch (parent.dim) {
      case Dim::Vertex: return L.vertex_base[parent.index];
      case Dim::Edge: return L.edge_base[parent.index];
      case Dim::Tile: return CellRef{Dim::Tile, L.tile_base[parent.index]};
    }
    return CellRef{};
  };

  auto vertex = [&](CellRef parent, int pattern) {
    const std::uint64_t key = cell_key(Dim::Vertex, parent.dim, parent.index, pattern);
    auto [it, inserted] = N.keys.emplace(key, X.vertex_count());
    if (!inserted) return it->second;
    const bool marked = parent.dim == Dim::Vertex && C.is_marked(parent.index);
    const int v = X.add_vertex("v" + std::to_string(X.vertex_count()), marked);
    N.vertex_parent.push_back(parent);
    N.vertex_pattern.push_back(pattern);
    N.vertex_type.push_back(r.vertex_map[pattern]);
    N.vertex_base.push_back(base_of(parent));
    if (n == 0) {
      N.vertex_sigma.push_back(r.vertex_map[pattern]);
    } else {
      const CellRef ps = parent_sigma(parent);
      N.vertex_sigma.push_back(lookup(L, cell_key(Dim::Vertex, ps.dim, ps.index, pattern)));
    }
    return v;
  };
  auto edge = [&](CellRef parent, int pattern, int from, int to) {
    const std::uint64_t key = cell_key(Dim::Edge, parent.dim, parent.index, pattern);
    const int e = X.add_edge("e" + std::to_string(X.edge_count()), from, to);
    N.keys.emplace(key, e);
    N.edge_parent.push_back(parent);
    N.edge_pattern.push_back(pattern);
    N.edge_type.push_back(r.edge_map[pattern]);
    N.edge_base.push_back(base_of(parent));
    if (n == 0) {
      N.edge_sigma.push_back(r.edge_map[pattern]);
    } else {
      const CellRef ps = parent_sigma(parent);
      N.edge_sigma.push_back({lookup(L, cell_key(Dim::Edge, ps.dim, ps.index, pattern)), false});
    }
    return e;
  };

  for (int v = 0; v < C.vertex_count(); ++v)
    vertex({Dim::Vertex, v}, patterns_.base_vertex_in_refined[L.vertex_type[v]]);

  for (int e = 0; e < C.edge_count(); ++e) {
    const EdgeImage type = L.edge_type[e];
    const EdgePattern& p = patterns_.edges[type.edge];
    const int m = static_cast<int>(p.edges.size());
    std::vector<int> nv(m + 1);
    const int head = type.reversed ? C.edge(e).to : C.edge(e).from;
    const int tail = type.reversed ? C.edge(e).from : C.edge(e).to;
    nv[0] = vertex({Dim::Vertex, head}, p.vertices[0]);
    nv[m] = vertex({Dim::Vertex, tail}, p.vertices[m]);
    for (int i = 1; i < m; ++i) nv[i] = vertex({Dim::Edge, e}, p.vertices[i]);
    for (int i = 0; i < m; ++i) {
      const int a = p.forward[i] ? nv[i] : nv[i + 1];
      const int b = p.forward[i] ? nv[i + 1] : nv[i];
      edge({Dim::Edge, e}, p.edges[i], a, b);
    }
  }

  for (int t = 0; t < C.tile_count(); ++t) {
    const TileImage type = L.tile_type[t];
    const TilePattern& tp = patterns_.tiles[type.tile];
    const auto& word = C.tile(t).word;
    const int k = static_cast<int>(word.size());
    auto local_pos = [&](int j) { return mod(j - type.offset, k); };
    auto resolve = [&](const TilePattern::VertexAddress& a) {
      switch (a.kind) {
        case TilePattern::VertexAddress::Interior: return vertex({Dim::Tile, t}, a.vertex);
        case TilePattern::VertexAddress::Corner: {
          const int lv = C.start(word[local_pos(a.position)]);
          return vertex({Dim::Vertex, lv}, patterns_.base_vertex_in_refined[L.vertex_type[lv]]);
        }
        case TilePattern::VertexAddress::OnSide:
          return vertex({Dim::Edge, word[local_pos(a.position)].edge}, a.vertex);
      }
      return -1;
    };
    for (int v : tp.interior_vertices) vertex({Dim::Tile, t}, v);
    for (std::size_t i = 0; i < tp.edges.size(); ++i)
      edge({Dim::Tile, t}, tp.edges[i], resolve(tp.edge_ends[i].first), resolve(tp.edge_ends[i].second));
    for (std::size_t li = 0; li < tp.tiles.size(); ++li) {
      const int rt = tp.tiles[li];
      const auto& rw = r.refined.tile(rt).word;
      std::vector<Side> w;
      std::vector<int> ps;
      for (std::size_t i = 0; i < rw.size(); ++i) {
        const int j = tp.side_position[li][i];
        CellRef parent{Dim::Tile, t};
        if (j >= 0) {
          parent = {Dim::Edge, word[local_pos(j)].edge};
          ps.push_back(local_pos(j));
        } else {
          ps.push_back(-1);
        }
        w.push_back({lookup(N, cell_key(Dim::Edge, parent.dim, parent.index, rw[i].edge)), rw[i].forward});
      }
      const int nt = X.add_tile("t" + std::to_string(X.tile_count()), std::move(w));
      N.keys.emplace(cell_key(Dim::Tile, Dim::Tile, t, rt), nt);
      N.tile_parent.push_back({Dim::Tile, t});
      N.tile_pattern.push_back(rt);
      N.tile_type.push_back(r.tile_map[rt]);
      N.tile_base.push_back(L.tile_base[t]);
      N.parent_side.push_back(std::move(ps));
      if (n == 0) {
        N.tile_sigma.push_back(r.tile_map[rt]);
      } else {
        N.tile_sigma.push_back({lookup(L, cell_key(Dim::Tile, Dim::Tile, L.tile_sigma[t].tile, rt)), 0, false});
      }
    }
  }
  levels_.push_back(std::move(N));
}

int SubdivisionTower::tile_image(int n, int tile, int k) const {
  for (int m = n; m > k; --m) tile = levels_.at(m).tile_sigma[tile].tile;
  return tile;
}

}  // namespace fsr
