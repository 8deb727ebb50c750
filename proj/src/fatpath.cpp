#include "fsr/fatpath.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace fsr {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

std::vector<int> bfs(const std::vector<std::vector<int>>& nb, const std::vector<int>& sources,
                     std::vector<int>* parent) {
  std::vector<int> dist(nb.size(), kUnreached);
  if (parent) parent->assign(nb.size(), -1);
  std::deque<int> queue;
  for (int s : sources)
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : nb[u])
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        if (parent) (*parent)[v] = u;
        queue.push_back(v);
      }
  }
  return dist;
}

std::vector<std::vector<int>> edge_neighbours(const Complex& c) {
  return tile_adjacency(c, Adjacency::Edge).neighbours();
}

// Shortest chain from any of `from` to any of `to`, in path order.
std::vector<int> chain(const std::vector<std::vector<int>>& nb, const std::vector<int>& from,
                       const std::vector<int>& to) {
  std::vector<int> parent;
  const std::vector<int> dist = bfs(nb, from, &parent);
  int best = -1;
  for (int t : to)
    if (dist[t] != kUnreached && (best < 0 || dist[t] < dist[best])) best = t;
  if (best < 0) throw Error("tiles are not connected");
  std::vector<int> path;
  for (int t = best; t >= 0; t = parent[t]) path.push_back(t);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<int> tile_distances(const Complex& c, const std::vector<int>& sources) {
  return bfs(edge_neighbours(c), sources, nullptr);
}

std::vector<int> shortest_tile_path(const Complex& c, int a, int b) {
  return chain(edge_neighbours(c), {a}, {b});
}

int self_distance(const Complex& c, MetricPoint x) {
  return static_cast<int>(incident_tiles(c, x.cell).size()) - 1;
}

int fat_path_distance(const Complex& c, MetricPoint x, MetricPoint y) {
  return fat_path(c, x, y).length();
}

FatPath fat_path(const Complex& c, MetricPoint x, MetricPoint y) {
  if (x == y) return {incident_tiles(c, x.cell)};
  return {chain(edge_neighbours(c), incident_tiles(c, x.cell), incident_tiles(c, y.cell))};
}

namespace {

std::vector<int> lift(const SubdivisionTower& t, int n, const std::vector<int>& path, int start,
                      const std::vector<std::array<SideRef, 2>>& owners) {
  const Complex& down = t.complex(n);
  const Complex& up = t.complex(n + 1);
  const Level& L = t.level(n + 1);
  if (L.tile_sigma.at(start).tile != path.at(0)) throw Error("lift start does not cover the first tile");
  const auto down_owners = down.side_owners();
  std::vector<int> out{start};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int a = path[i], b = path[i + 1];
    const auto& word = down.tile(a).word;
    const int k = static_cast<int>(word.size());
    int crossed = -1;
    for (int p = 0; p < k && crossed < 0; ++p) {
      const Side s = word[p];
      if (down_owners[s.edge][s.forward ? 1 : 0].tile == b) crossed = p;
    }
    if (crossed < 0) throw Error("tile path is not edge-adjacent");
    const int cur = out.back();
    const TileImage im = L.tile_sigma[cur];
    const int j = ((crossed - im.offset) % k + k) % k;
    const Side s = up.tile(cur).word[j];
    const int next = owners[s.edge][s.forward ? 1 : 0].tile;
    if (next < 0 || L.tile_sigma[next].tile != b) throw Error("subdivision map is not a local homeomorphism here");
    out.push_back(next);
  }
  return out;
}

}  // namespace

std::vector<int> lift_tile_path(const SubdivisionTower& t, int n, const std::vector<int>& path, int start) {
  return lift(t, n, path, start, t.complex(n + 1).side_owners());
}

std::vector<NonexpansionCheck> check_pullback_nonexpansion(const SubdivisionTower& t, int n,
                                                           std::vector<std::pair<int, int>> sample) {
  if (t.depth() < n + 1) throw Error("tower needs level " + std::to_string(n + 1));
  const Complex& down = t.complex(n);
  const Level& up = t.level(n + 1);
  if (sample.empty())
    for (int a = 0; a < down.tile_count(); ++a)
      for (int b = a; b < down.tile_count(); ++b) sample.emplace_back(a, b);
  const auto nb = edge_neighbours(down);
  const auto owners = up.complex.side_owners();
  std::vector<std::vector<int>> preimages(down.tile_count());
  for (int u = 0; u < up.complex.tile_count(); ++u) preimages[up.tile_sigma[u].tile].push_back(u);

  std::vector<std::vector<int>> dist_from(down.tile_count());
  auto dist = [&](int a, int b) {
    if (dist_from[a].empty()) dist_from[a] = bfs(nb, {a}, nullptr);
    return dist_from[a][b];
  };

  std::vector<NonexpansionCheck> out;
  for (const auto& [a, b] : sample) {
    NonexpansionCheck r{a, b};
    const std::vector<int> path = chain(nb, {a}, {b});
    r.k = static_cast<int>(path.size()) - 1;
    for (int start : preimages[a]) {
      const std::vector<int> lifted = lift(t, n, path, start, owners);
      const int pa = up.tile_parent[lifted.front()].index;
      const int pb = up.tile_parent[lifted.back()].index;
      r.k_lifted = std::max(r.k_lifted, dist(pa, pb));
      ++r.lifts;
    }
    r.pass = r.k_lifted <= r.k;
    out.push_back(r);
  }
  return out;
}

}  // namespace fsr
