#pragma once

#include <vector>

#include "fsr/complex.hpp"

namespace fsr {

/// A path in the 1-skeleton: vertices.size() == edges.size() + 1.
struct EdgePath {
  std::vector<int> vertices;
  std::vector<int> edges;

  bool simple() const;
};

/// Tiles whose removal leaves a disk. Throws for disks with fewer than two tiles.
std::vector<int> peelable_tiles(const DiskComplex& x);

/// Simple 1-skeleton path from u1 to u2 passing through v.
EdgePath three_point_arc(const DiskComplex& x, int u1, int u2, int v);

/// Checks that `p` is a simple edge path of `c` from u1 to u2 through v.
bool is_three_point_arc(const Complex& c, const EdgePath& p, int u1, int u2, int v);

}  // namespace fsr
