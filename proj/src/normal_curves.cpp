#include "fsr/normal_curves.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace fsr {

namespace {

int mod(int a, int k) { return ((a % k) + k) % k; }

struct Twins {
  explicit Twins(const Complex& c) : c_(c), owners_(c.side_owners()) {}
  SideRef operator()(SideRef r) const {
    const Side s = c_.side_at(r);
    return owners_[s.edge][s.forward ? 1 : 0];
  }
  const Complex& c_;
  std::vector<std::array<SideRef, 2>> owners_;
};

bool side_less(const Complex& c, SideRef a, SideRef b) {
  const std::string& ia = c.tile(a.tile).id;
  const std::string& ib = c.tile(b.tile).id;
  if (ia != ib) return ia < ib;
  return a.pos < b.pos;
}

std::vector<SideRef> least_rotation(const Complex& c, const std::vector<SideRef>& w) {
  std::vector<SideRef> best = w;
  auto less = [&](const std::vector<SideRef>& a, const std::vector<SideRef>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](SideRef x, SideRef y) { return side_less(c, x, y); });
  };
  std::vector<SideRef> cur = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (less(cur, best)) best = cur;
  }
  return best;
}

std::vector<SideRef> canonical(const Complex& c, const std::vector<SideRef>& w) {
  if (w.empty()) return w;
  auto a = least_rotation(c, w);
  auto b = least_rotation(c, reverse_crossings(c, w));
  const bool b_less = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end(),
                                                   [&](SideRef x, SideRef y) { return side_less(c, x, y); });
  return b_less ? b : a;
}

}  // namespace

void validate_curve(const Complex& c, const NormalCurve& curve) {
  const Twins twin(c);
  const auto& w = curve.crossings;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].tile < 0 || w[i].tile >= c.tile_count() || w[i].pos < 0 || w[i].pos >= c.word_length(w[i].tile))
      throw Error("crossing " + std::to_string(i) + " does not name a tile side");
    const SideRef other = twin(w[i]);
    if (!other.valid()) throw Error("crossing " + std::to_string(i) + " leaves the complex");
    const SideRef next = w[(i + 1) % w.size()];
    if (next.tile >= 0 && next.tile < c.tile_count() && other.tile != next.tile)
      throw Error("crossings " + std::to_string(i) + " and " + std::to_string((i + 1) % w.size()) +
                  " do not share a tile");
  }
}

NormalCurve parse_curve(const Complex& c, const std::string& text, int level) {
  NormalCurve curve;
  curve.level = level;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (item.empty()) continue;
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw Error("crossing '" + item + "' must be written tile:position");
    const int t = c.tile_index(item.substr(0, colon));
    if (t < 0) throw Error("unknown tile '" + item.substr(0, colon) + "'");
    int pos = 0;
    try {
      std::size_t used = 0;
      pos = std::stoi(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw Error("");
    } catch (const std::exception&) {
      throw Error("crossing '" + item + "' has a bad position");
    }
    curve.crossings.push_back({t, pos});
  }
  validate_curve(c, curve);
  return curve;
}

std::string format_curve(const Complex& c, const std::vector<SideRef>& crossings) {
  std::string out;
  for (const SideRef& r : crossings) {
    if (!out.empty()) out += ",";
    out += c.tile(r.tile).id + ":" + std::to_string(r.pos);
  }
  return out;
}

NormalCurve reduce_curve(const Complex& c, NormalCurve curve) {
  const Twins twin(c);
  auto& w = curve.crossings;
  bool changed = true;
  while (changed && w.size() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t j = (i + 1) % w.size();
      if (w[j] == twin(w[i])) {
        if (j == 0) {
          w.pop_back();
          w.erase(w.begin());
        } else {
          w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        }
        changed = true;
        break;
      }
    }
  }
  curve.reduced = true;
  return curve;
}

std::vector<SideRef> reverse_crossings(const Complex& c, const std::vector<SideRef>& crossings) {
  const Twins twin(c);
  std::vector<SideRef> out;
  for (auto it = crossings.rbegin(); it != crossings.rend(); ++it) out.push_back(twin(*it));
  return out;
}

std::string curve_key(const Complex& c, const std::vector<SideRef>& crossings) {
  return format_curve(c, canonical(c, crossings));
}

std::string CurveClass::to_string(const Complex& c) const {
  switch (kind) {
    case Inessential: return "inessential";
    case Peripheral: return "peripheral(" + c.vertex_id(vertex) + ")";
    case EssentialCandidate: return "essential-candidate";
  }
  return "?";
}

std::vector<SideRef> link_curve(const Complex& c, int v) {
  const auto links = vertex_links(c);
  if (links[v].size() != 1 || !links[v][0].closed) return {};
  std::vector<SideRef> w;
  for (const Corner& k : links[v][0].corners) w.push_back({k.tile, k.index});
  return w;
}

CurveClass classify_curve(const Complex& c, const NormalCurve& curve) {
  if (!curve.reduced) throw Error("curve must be reduced before classification");
  if (curve.crossings.empty()) return {};
  const std::string key = curve_key(c, curve.crossings);
  const auto links = vertex_links(c);
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (links[v].size() != 1 || !links[v][0].closed) continue;
    std::vector<SideRef> w;
    for (const Corner& k : links[v][0].corners) w.push_back({k.tile, k.index});
    if (curve_key(c, w) == key)
      return c.is_marked(v) ? CurveClass{CurveClass::Peripheral, v} : CurveClass{};
  }
  return {CurveClass::EssentialCandidate, -1};
}

CurvePullbackResult pullback_curve(SubdivisionTower& t, const NormalCurve& curve) {
  const int n = curve.level;
  if (t.depth() < n + 1) t.subdivide_to(n + 1);
  const Complex& down = t.complex(n);
  const Level& up_level = t.level(n + 1);
  const Complex& up = up_level.complex;
  validate_curve(down, curve);

  std::vector<std::vector<int>> preimages(down.tile_count());
  for (int a = 0; a < up.tile_count(); ++a) preimages[up_level.tile_sigma[a].tile].push_back(a);

  CurvePullbackResult result;
  const auto& w = curve.crossings;
  if (w.empty()) {
    for (std::size_t i = 0; i < preimages[0].size(); ++i) {
      CurveComponent comp;
      comp.curve.level = n;
      comp.curve.reduced = true;
      result.components.push_back(comp);
      ++result.total;
    }
    return result;
  }

  const Twins twin_up(up);
  auto lift_pos = [&](int a, int p) {
    const TileImage& s = up_level.tile_sigma[a];
    const int k = up.word_length(a);
    return s.reversed ? mod(s.offset - p, k) : mod(p - s.offset, k);
  };
  std::vector<bool> used(up.tile_count(), false);
  for (int start : preimages[w[0].tile]) {
    if (used[start]) continue;
    std::vector<SideRef> lifted;
    int a = start;
    std::size_t i = 0;
    int degree = 0;
    do {
      if (i == 0) {
        used[a] = true;
        ++degree;
      }
      if (up_level.tile_sigma[a].tile != w[i].tile) throw Error("internal: lift left the preimage of the curve");
      const SideRef x{a, lift_pos(a, w[i].pos)};
      lifted.push_back(x);
      a = twin_up(x).tile;
      i = (i + 1) % w.size();
    } while (!(i == 0 && a == start));

    CurveComponent comp;
    comp.degree = degree;
    comp.lifted_crossings = static_cast<int>(lifted.size());
    comp.curve.level = n;
    for (const SideRef& x : lifted) {
      const int j = up_level.parent_side[x.tile][x.pos];
      if (j >= 0) comp.curve.crossings.push_back({up_level.tile_parent[x.tile].index, j});
    }
    comp.projected_crossings = static_cast<int>(comp.curve.crossings.size());
    validate_curve(down, comp.curve);
    comp.curve = reduce_curve(down, comp.curve);
    result.total += degree;
    result.components.push_back(std::move(comp));
  }
  return result;
}

std::string CurveOrbitReport::to_string(const Complex& c) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    os << "node " << i << " depth=" << node.depth << " " << node.cls.to_string(c) << " [" << node.key << "]";
    if (!node.expanded && node.cls.kind == CurveClass::EssentialCandidate) os << " (frontier)";
    os << "\n";
    for (const Arc& arc : node.arcs) os << "  <- node " << arc.target << " degree=" << arc.degree << "\n";
  }
  os << "cycles=" << cycles.size() << " univalent_arcs=" << univalent_arcs << " frontier=" << frontier.size()
     << " degree_partition=" << (degree_partition ? "ok" : "FAIL") << " (up to word equality)\n";
  for (const auto& cyc : cycles) {
    os << "cycle:";
    for (int v : cyc) os << " " << v;
    os << "\n";
  }
  return os.str();
}

CurveOrbitReport pullback_orbit_curves(SubdivisionTower& t, const NormalCurve& start, int depth) {
  if (start.level != 0) throw Error("orbit exploration starts from a level-0 curve");
  t.subdivide_to(std::max(t.depth(), 1));
  const Complex& c = t.complex(0);
  const int d = degree(t.rule());

  CurveOrbitReport r;
  std::map<std::string, int> index;
  auto node_of = [&](const NormalCurve& raw, int dep) {
    const NormalCurve curve = raw.reduced ? raw : reduce_curve(c, raw);
    const std::string key = curve_key(c, curve.crossings);
    auto [it, fresh] = index.emplace(key, static_cast<int>(r.nodes.size()));
    if (fresh) {
      CurveOrbitReport::Node node;
      node.key = key;
      node.curve = curve;
      node.curve.crossings = canonical(c, curve.crossings);
      node.cls = classify_curve(c, node.curve);
      node.depth = dep;
      r.nodes.push_back(std::move(node));
    }
    return it->second;
  };

  std::deque<int> queue{node_of(start, 0)};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (r.nodes[u].cls.kind != CurveClass::EssentialCandidate) {
      r.nodes[u].arcs.push_back({u, d});
      r.nodes[u].expanded = true;
      continue;
    }
    if (r.nodes[u].depth >= depth) {
      r.frontier.push_back(u);
      continue;
    }
    const CurvePullbackResult pb = pullback_curve(t, r.nodes[u].curve);
    if (pb.total != d) r.degree_partition = false;
    r.nodes[u].expanded = true;
    const int child_depth = r.nodes[u].depth + 1;
    for (const CurveComponent& comp : pb.components) {
      const std::size_t before = r.nodes.size();
      const int v = node_of(comp.curve, child_depth);
      r.nodes[u].arcs.push_back({v, comp.degree});
      if (r.nodes.size() > before) queue.push_back(v);
    }
  }
  for (const auto& node : r.nodes)
    for (const auto& arc : node.arcs)
      if (arc.degree == 1) ++r.univalent_arcs;

  // Cycles among expanded essential nodes, one per back arc.
  std::vector<int> state(r.nodes.size(), 0), stack;
  std::function<void(int)> dfs = [&](int u) {
    state[u] = 1;
    stack.push_back(u);
    for (const auto& arc : r.nodes[u].arcs) {
      const int v = arc.target;
      if (r.nodes[v].cls.kind != CurveClass::EssentialCandidate) continue;
      if (state[v] == 1) {
        const auto from = std::find(stack.begin(), stack.end(), v);
        r.cycles.emplace_back(from, stack.end());
      } else if (state[v] == 0) {
        dfs(v);
      }
    }
    stack.pop_back();
    state[u] = 2;
  };
  for (std::size_t u = 0; u < r.nodes.size(); ++u)
    if (state[u] == 0 && r.nodes[u].cls.kind == CurveClass::EssentialCandidate) dfs(static_cast<int>(u));
  return r;
}

}  // namespace fsr
