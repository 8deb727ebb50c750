#include "fsr/subdivision.hpp"

namespace fsr {

namespace {

// Degree-3 rule on the square pillowcase. The square bounds tile A inside
// and tile B outside. Each vertical edge is cut into three segments, and
// every base tile is split into three vertical strips by arcs joining the
// corners of its vertical edges. The middle strips map onto their own tile
// fixing the horizontal edges; the side strips map onto the opposite tile.
SubdivisionRule cubic_example() {
  SubdivisionRule r;
  r.name = "cubic_example";

  Complex& b = r.base;
  for (const char* v : {"BL", "BR", "TR", "TL"}) b.add_vertex(v, true);
  b.add_edge("bot", "BL", "BR");
  b.add_edge("rgt", "BR", "TR");
  b.add_edge("top", "TR", "TL");
  b.add_edge("lft", "TL", "BL");
  b.add_tile("A", "bot+, rgt+, top+, lft+");
  b.add_tile("B", "lft-, top-, rgt-, bot-");

  Complex& f = r.refined;
  for (const char* v : {"BL", "BR", "TR", "TL"}) f.add_vertex(v, true);
  for (const char* v : {"p", "q", "r", "s"}) f.add_vertex(v);
  f.add_edge("bot", "BL", "BR");
  f.add_edge("top", "TR", "TL");
  f.add_edge("r1", "BR", "p");
  f.add_edge("r2", "p", "q");
  f.add_edge("r3", "q", "TR");
  f.add_edge("l1", "TL", "s");
  f.add_edge("l2", "s", "r");
  f.add_edge("l3", "r", "BL");
  f.add_edge("aAR", "BR", "TR");
  f.add_edge("aAL", "TL", "BL");
  f.add_edge("aBR", "BR", "TR");
  f.add_edge("aBL", "TL", "BL");
  f.add_tile("MA", "bot+, aAR+, top+, aAL+");
  f.add_tile("RA", "r1+, r2+, r3+, aAR-");
  f.add_tile("LA", "l1+, l2+, l3+, aAL-");
  f.add_tile("MB", "bot-, aBL-, top-, aBR-");
  f.add_tile("LB", "l3-, l2-, l1-, aBL+");
  f.add_tile("RB", "r3-, r2-, r1-, aBR+");

  r.resize_maps();
  auto base_cell = [&](std::string_view id) { return *b.find(id); };
  auto carry = [&](std::string_view cell, std::string_view onto) {
    const CellRef c = *f.find(cell);
    std::vector<CellRef>& table = c.dim == Dim::Vertex ? r.vertex_carrier
                                  : c.dim == Dim::Edge ? r.edge_carrier
                                                       : r.tile_carrier;
    table[c.index] = base_cell(onto);
  };
  for (const char* v : {"BL", "BR", "TR", "TL", "bot", "top", "rgt", "lft"})
    if (f.find(v)) carry(v, v);
  for (const char* c : {"p", "q", "r1", "r2", "r3"}) carry(c, "rgt");
  for (const char* c : {"r", "s", "l1", "l2", "l3"}) carry(c, "lft");
  for (const char* c : {"aAR", "aAL", "MA", "RA", "LA"}) carry(c, "A");
  for (const char* c : {"aBR", "aBL", "MB", "LB", "RB"}) carry(c, "B");

  auto vmap = [&](std::string_view v, std::string_view w) {
    r.vertex_map[f.vertex_index(v)] = b.vertex_index(w);
  };
  for (const char* v : {"BL", "BR", "TR", "TL"}) vmap(v, v);
  vmap("p", "BL");
  vmap("q", "TL");
  vmap("r", "BR");
  vmap("s", "TR");

  auto emap = [&](std::string_view e, std::string_view w, bool reversed) {
    r.edge_map[f.edge_index(e)] = {b.edge_index(w), reversed};
  };
  emap("bot", "bot", false);
  emap("top", "top", false);
  emap("r1", "bot", true);
  emap("r2", "lft", true);
  emap("r3", "top", true);
  emap("l1", "top", true);
  emap("l2", "rgt", true);
  emap("l3", "bot", true);
  emap("aAR", "rgt", false);
  emap("aBR", "rgt", false);
  emap("aAL", "lft", false);
  emap("aBL", "lft", false);

  auto tmap = [&](std::string_view t, std::string_view w, int offset) {
    r.tile_map[f.tile_index(t)] = {b.tile_index(w), offset, false};
  };
  tmap("MA", "A", 0);
  tmap("RA", "B", 3);
  tmap("LA", "B", 1);
  tmap("MB", "B", 3);
  tmap("LB", "A", 0);
  tmap("RB", "A", 2);
  return r;
}

}  // namespace

SubdivisionRule builtin(std::string_view name) {
  if (name == "cubic_example") return cubic_example();
  throw Error("unknown builtin rule '" + std::string(name) + "'");
}

}  // namespace fsr
