#include "fsr/render.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace fsr {

namespace {

constexpr double kPanel = 420;
constexpr double kRadius = 180;

const char* const kPalette[] = {"#8ecae6", "#ffb703", "#90be6d", "#f4a261", "#cdb4db", "#e76f51", "#a8dadc", "#ffd166"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

struct Point {
  double x = 0, y = 0;
};

// Positions of the cut-open disk's vertices, boundary on a regular polygon.
std::vector<Point> embed(const Complex& c, const Level& level, const CutDisk& cd, int corners) {
  const int nv = static_cast<int>(cd.vertex_source.size());
  std::vector<int> local(c.tile_count(), -1);
  for (std::size_t i = 0; i < cd.tiles.size(); ++i) local[cd.tiles[i]] = static_cast<int>(i);
  auto start_of = [&](SideRef s) { return cd.corner_vertex[local[s.tile]][s.pos]; };

  std::vector<Point> pos(nv);
  std::vector<bool> fixed(nv, false);
  const int m = static_cast<int>(cd.boundary.size());
  std::vector<int> corner_at;
  for (int i = 0; i < m; ++i)
    if (level.vertex_base[cd.vertex_source[start_of(cd.boundary[i])]].dim == Dim::Vertex) corner_at.push_back(i);
  auto polygon = [&](double u) {  // u in [0, sides) along a regular polygon
    const int sides = std::max(corners, 1);
    const int k = static_cast<int>(std::floor(u)) % sides;
    const double f = u - std::floor(u);
    auto vertex = [&](int j) {
      const double a = 2 * M_PI * j / sides - M_PI / 2;
      return Point{kRadius * std::cos(a), kRadius * std::sin(a)};
    };
    if (sides < 3) {
      const double a = 2 * M_PI * u / sides - M_PI / 2;
      return Point{kRadius * std::cos(a), kRadius * std::sin(a)};
    }
    const Point p = vertex(k), q = vertex(k + 1);
    return Point{p.x + f * (q.x - p.x), p.y + f * (q.y - p.y)};
  };
  if (static_cast<int>(corner_at.size()) != corners || corners == 0) {
    for (int i = 0; i < m; ++i) {
      const double a = 2 * M_PI * i / m - M_PI / 2;
      pos[start_of(cd.boundary[i])] = {kRadius * std::cos(a), kRadius * std::sin(a)};
      fixed[start_of(cd.boundary[i])] = true;
    }
  } else {
    for (int j = 0; j < corners; ++j) {
      const int a = corner_at[j], b = j + 1 < corners ? corner_at[j + 1] : corner_at[0] + m;
      for (int i = a; i < b; ++i) {
        const int v = start_of(cd.boundary[i % m]);
        pos[v] = polygon(j + double(i - a) / (b - a));
        fixed[v] = true;
      }
    }
  }

  std::set<std::pair<int, int>> adjacency;
  for (std::size_t i = 0; i < cd.tiles.size(); ++i) {
    const int k = c.word_length(cd.tiles[i]);
    for (int j = 0; j < k; ++j) {
      const int a = cd.corner_vertex[i][j], b = cd.corner_vertex[i][(j + 1) % k];
      if (a != b) adjacency.insert({std::min(a, b), std::max(a, b)});
    }
  }
  std::vector<int> unknown(nv, -1);
  int n = 0;
  for (int v = 0; v < nv; ++v)
    if (!fixed[v]) unknown[v] = n++;
  if (n == 0) return pos;

  std::vector<Eigen::Triplet<double>> entries;
  Eigen::VectorXd bx = Eigen::VectorXd::Zero(n), by = Eigen::VectorXd::Zero(n);
  for (const auto& [a, b] : adjacency) {
    for (const auto& [u, w] : {std::pair{a, b}, std::pair{b, a}}) {
      if (unknown[u] < 0) continue;
      entries.emplace_back(unknown[u], unknown[u], 1.0);
      if (unknown[w] >= 0) {
        entries.emplace_back(unknown[u], unknown[w], -1.0);
      } else {
        bx[unknown[u]] += pos[w].x;
        by[unknown[u]] += pos[w].y;
      }
    }
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
  if (solver.info() != Eigen::Success) throw Error("internal: harmonic embedding system is singular");
  const Eigen::VectorXd x = solver.solve(bx), y = solver.solve(by);
  for (int v = 0; v < nv; ++v)
    if (unknown[v] >= 0) pos[v] = {x[unknown[v]], y[unknown[v]]};
  return pos;
}

}  // namespace

std::string render_svg(SubdivisionTower& t, const RenderSpec& spec) {
  if (spec.level < 0) throw Error("level must be nonnegative");
  t.subdivide_to(spec.level);
  const Level& level = t.level(spec.level);
  const Complex& c = level.complex;
  const Complex& base = t.complex(0);
  std::vector<int> panels;
  if (spec.base_tile) {
    if (*spec.base_tile < 0 || *spec.base_tile >= base.tile_count()) throw Error("no such base tile");
    panels.push_back(*spec.base_tile);
  } else {
    for (int b = 0; b < base.tile_count(); ++b) panels.push_back(b);
  }

  std::vector<bool> interior(c.edge_count());
  for (int e = 0; e < c.edge_count(); ++e) interior[e] = level.edge_base[e].dim == Dim::Tile;

  std::ostringstream os;
  const double width = kPanel * panels.size();
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(kPanel) << "\" viewBox=\"0 0 " << num(width) << " " << num(kPanel) << "\">\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const int b = panels[p];
    std::vector<int> tiles;
    for (int x = 0; x < c.tile_count(); ++x)
      if (level.tile_base[x] == b) tiles.push_back(x);
    const CutDisk cd = cut_disk(c, tiles, interior);
    if (!cd.boundary_is_cycle) throw Error("internal: panel for base tile '" + base.tile(b).id + "' is not a disk");
    const std::vector<Point> pos = embed(c, level, cd, base.word_length(b));
    const double cx = kPanel * p + kPanel / 2, cy = kPanel / 2;

    os << "<g class=\"panel\" data-base-tile=\"" << base.tile(b).id << "\">\n";
    for (std::size_t i = 0; i < cd.tiles.size(); ++i) {
      const int x = cd.tiles[i];
      os << "<polygon class=\"tile\" data-id=\"" << c.tile(x).id << "\" fill=\""
         << kPalette[level.tile_type[x].tile % std::size(kPalette)] << "\" stroke=\"#222222\" stroke-width=\"1\" points=\"";
      for (std::size_t k = 0; k < cd.corner_vertex[i].size(); ++k) {
        const Point& q = pos[cd.corner_vertex[i][k]];
        os << (k ? " " : "") << num(cx + q.x) << "," << num(cy + q.y);
      }
      os << "\"/>\n";
    }
    std::set<int> drawn;
    for (int v = 0; v < static_cast<int>(cd.vertex_source.size()); ++v)
      if (c.is_marked(cd.vertex_source[v]) && drawn.insert(v).second)
        os << "<circle class=\"marked\" cx=\"" << num(cx + pos[v].x) << "\" cy=\"" << num(cy + pos[v].y)
           << "\" r=\"4\" fill=\"#000000\"/>\n";
    os << "<text x=\"" << num(cx) << "\" y=\"" << num(kPanel - 8) << "\" text-anchor=\"middle\" font-size=\"14\">"
       << base.tile(b).id << " level " << spec.level << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fsr
