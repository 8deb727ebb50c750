#include <algorithm>
#include <map>
#include <set>

#include <boost/rational.hpp>

#include "fsr/euclidean.hpp"

namespace fsr {

namespace {

using Q = boost::rational<std::int64_t>;

std::int64_t floor_of(const Q& x) {
  std::int64_t f = x.numerator() / x.denominator();
  if (x.numerator() < 0 && f * x.denominator() != x.numerator()) --f;
  return f;
}

// The quotient of the strip 0 <= y <= 1 by rotations about lattice points.
// Each horizontal boundary line folds onto an arc of length d; points on it
// are described by a parameter u in [0, d].
class Pillowcase {
 public:
  Pillowcase(int d, int c) : d_(d), c_(c), period_(2 * d) {}

  enum Line { Bottom, Top };

  Q center(Line line) const { return line == Bottom ? Q(0) : Q(c_); }
  Q wrap(const Q& x) const { return x - Q(period_ * floor_of(x / period_)); }
  Q fold(Line line, const Q& x) const {
    const Q v = wrap(x - center(line));
    return v <= Q(d_) ? v : Q(period_) - v;
  }
  // Sign of the folding map's derivative at a non-vertex point.
  int orientation(Line line, const Q& x) const { return wrap(x - center(line)) < Q(d_) ? 1 : -1; }
  // Residues modulo the period of all lifts of a folded parameter.
  std::vector<Q> lifts(Line line, const Q& u) const { return {wrap(center(line) + u), wrap(center(line) - u)}; }
  // The map F(x, y) = (dx + cy, y) restricted to a line.
  Q image(Line line, const Q& x) const { return Q(d_) * x + (line == Top ? Q(c_) : Q(0)); }
  Q preimage(Line line, const Q& x) const { return (x - (line == Top ? Q(c_) : Q(0))) / Q(d_); }
  std::int64_t period() const { return period_; }

 private:
  std::int64_t d_, c_, period_;
};

// Vertices and edges along one folded line of a complex under construction.
struct LineCells {
  std::vector<Q> params;  // sorted vertex parameters
  std::vector<int> vertex;
  std::vector<int> edge;  // edge i joins params[i] and params[i+1]

  int vertex_at(const Q& u) const {
    const auto it = std::lower_bound(params.begin(), params.end(), u);
    return it != params.end() && *it == u ? vertex[it - params.begin()] : -1;
  }
  int edge_containing(const Q& u) const {
    const auto it = std::upper_bound(params.begin(), params.end(), u);
    const auto i = it - params.begin() - 1;
    if (i < 0 || i >= static_cast<long>(edge.size()) || params[i] == u) throw Error("internal: point is not inside an edge");
    return edge[i];
  }
};

class Builder {
 public:
  Builder(int d, int c) : d_(d), c_(c), pc_(d, c), q_(c, d - 1) {}

  SubdivisionRule build() {
    SubdivisionRule r;
    r.name = "euclid_" + std::to_string(d_) + "_" + std::to_string(c_);

    // Base tree: alpha along the bottom, beta along the top, gamma along the
    // 1-eigenline joining them.
    const Q top_end = pc_.fold(Pillowcase::Top, -q_);
    base_lines_[Pillowcase::Bottom] = line(r.base, Pillowcase::Bottom, {Q(0), Q(d_)}, "alpha", base_names(Pillowcase::Bottom));
    base_lines_[Pillowcase::Top] = line(r.base, Pillowcase::Top, {Q(0), top_end, Q(d_)}, "beta", base_names(Pillowcase::Top));
    const int gamma = r.base.add_edge("gamma", base_lines_[0].vertex_at(0), base_lines_[1].vertex_at(top_end));
    {
      std::vector<Side> w = traverse(Pillowcase::Bottom, Q(0), Q(2 * d_), base_lines_[0]);
      w.push_back({gamma, true});
      append(w, traverse(Pillowcase::Top, Q(2 * d_) - q_, -q_, base_lines_[1]));
      w.push_back({gamma, false});
      r.base.add_tile("P", std::move(w));
    }

    // Refinement: preimages of the tree under F.
    for (int li = 0; li < 2; ++li) {
      const auto line_id = static_cast<Pillowcase::Line>(li);
      std::set<Q> params;
      for (const Q& u : base_lines_[li].params)
        for (const Q& l : pc_.lifts(line_id, u))
          for (int k = 0; k < d_; ++k) params.insert(pc_.fold(line_id, pc_.preimage(line_id, l + Q(2 * d_ * k))));
      std::map<Q, std::string> names = base_names(line_id);
      int next = 0;
      for (const Q& u : params)
        if (!names.count(u)) names[u] = std::string(li == 0 ? "x" : "y") + std::to_string(next++);
      refined_lines_[li] = line(r.refined, line_id, {params.begin(), params.end()}, li == 0 ? "alpha" : "beta", names);
    }
    std::vector<int> gammas;
    for (int k = 0; k < d_; ++k) {
      const int from = refined_lines_[0].vertex_at(pc_.fold(Pillowcase::Bottom, Q(2 * k)));
      const int to = refined_lines_[1].vertex_at(pc_.fold(Pillowcase::Top, Q(2 * k) - q_));
      if (from < 0 || to < 0) throw Error("internal: eigenline copy does not end at vertices");
      gammas.push_back(r.refined.add_edge("gamma" + std::to_string(k), from, to));
    }
    for (int k = 0; k < d_; ++k) {
      std::vector<Side> w = traverse(Pillowcase::Bottom, Q(2 * k), Q(2 * k + 2), refined_lines_[0]);
      w.push_back({gammas[(k + 1) % d_], true});
      append(w, traverse(Pillowcase::Top, Q(2 * k + 2) - q_, Q(2 * k) - q_, refined_lines_[1]));
      w.push_back({gammas[k], false});
      r.refined.add_tile("P" + std::to_string(k), std::move(w));
    }

    r.resize_maps();
    const int tile = 0;
    for (int li = 0; li < 2; ++li) {
      const auto line_id = static_cast<Pillowcase::Line>(li);
      const LineCells& up = refined_lines_[li];
      const LineCells& down = base_lines_[li];
      for (std::size_t i = 0; i < up.params.size(); ++i) {
        const Q& u = up.params[i];
        const int v = up.vertex[i];
        const int base_v = down.vertex_at(u);
        r.vertex_carrier[v] = base_v >= 0 ? CellRef{Dim::Vertex, base_v} : CellRef{Dim::Edge, down.edge_containing(u)};
        if (base_v >= 0 && r.base.is_marked(base_v)) r.refined.set_marked(v, true);
        const int image = down.vertex_at(pc_.fold(line_id, pc_.image(line_id, pc_.center(line_id) + u)));
        if (image < 0) throw Error("internal: vertex does not map to a vertex");
        r.vertex_map[v] = image;
      }
      for (std::size_t i = 0; i < up.edge.size(); ++i) {
        const Q mid = (up.params[i] + up.params[i + 1]) / Q(2);
        const Q y = pc_.image(line_id, pc_.center(line_id) + mid);
        r.edge_carrier[up.edge[i]] = {Dim::Edge, down.edge_containing(mid)};
        r.edge_map[up.edge[i]] = {down.edge_containing(pc_.fold(line_id, y)), pc_.orientation(line_id, y) < 0};
      }
    }
    for (int k = 0; k < d_; ++k) {
      r.edge_carrier[gammas[k]] = k == 0 ? CellRef{Dim::Edge, gamma} : CellRef{Dim::Tile, tile};
      r.edge_map[gammas[k]] = {gamma, false};
      r.tile_carrier[k] = {Dim::Tile, tile};
      r.tile_map[k] = {tile, 0, false};
    }
    return r;
  }

 private:
  std::map<Q, std::string> base_names(Pillowcase::Line line) const {
    if (line == Pillowcase::Bottom) return {{Q(0), "O"}, {Q(d_), "D"}};
    return {{Q(0), "C"}, {Q(d_), "Cp"}, {pc_.fold(Pillowcase::Top, -q_), "Y"}};
  }

  LineCells line(Complex& cx, Pillowcase::Line line_id, std::vector<Q> params, const std::string& edge_prefix,
                 const std::map<Q, std::string>& names) {
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    LineCells out;
    out.params = params;
    for (const Q& u : params) {
      const bool cone = u == Q(0) || u == Q(d_);
      out.vertex.push_back(cx.add_vertex(names.at(u), cone));
    }
    const bool single = params.size() == 2;
    for (std::size_t i = 0; i + 1 < params.size(); ++i)
      out.edge.push_back(cx.add_edge(single ? edge_prefix : edge_prefix + std::to_string(i + 1), out.vertex[i], out.vertex[i + 1]));
    (void)line_id;
    return out;
  }

  // Sides met walking along a line in the plane from x = a to x = b.
  std::vector<Side> traverse(Pillowcase::Line line_id, const Q& a, const Q& b, const LineCells& cells) const {
    const Q lo = std::min(a, b), hi = std::max(a, b);
    std::set<Q> cuts{lo, hi};
    for (const Q& u : cells.params)
      for (const Q& l : pc_.lifts(line_id, u))
        for (std::int64_t k = floor_of((lo - l) / Q(pc_.period())); l + Q(k * pc_.period()) < hi; ++k) {
          const Q x = l + Q(k * pc_.period());
          if (x > lo) cuts.insert(x);
        }
    std::vector<Side> out;
    const std::vector<Q> pts(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Q mid = (pts[i] + pts[i + 1]) / Q(2);
      const int e = cells.edge_containing(pc_.fold(line_id, mid));
      out.push_back({e, pc_.orientation(line_id, mid) > 0});
    }
    if (b < a) {
      std::reverse(out.begin(), out.end());
      for (Side& s : out) s.forward = !s.forward;
    }
    return out;
  }

  static void append(std::vector<Side>& w, const std::vector<Side>& more) { w.insert(w.end(), more.begin(), more.end()); }

  int d_, c_;
  Pillowcase pc_;
  Q q_;
  LineCells base_lines_[2];
  LineCells refined_lines_[2];
};

}  // namespace

SubdivisionRule build_case2_fsr(int d, int c) {
  if (d < 2) throw Error("case-2 rule needs d >= 2");
  if (c < 0 || c > d - 2) throw Error("case-2 rule needs 0 <= c <= d - 2");
  return Builder(d, c).build();
}

}  // namespace fsr
