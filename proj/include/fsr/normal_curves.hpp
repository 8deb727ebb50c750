#pragma once

#include <map>
#include <string>
#include <vector>

#include "fsr/subdivision.hpp"

namespace fsr {

/// Closed curve transverse to the 1-skeleton of one tower level. Crossing
/// (t, p) means the curve leaves tile t through the side at position p; the
/// next crossing lies in the tile on the other side. An empty list is the
/// trivial curve inside a single tile.
struct NormalCurve {
  int level = 0;
  std::vector<SideRef> crossings;
  bool reduced = false;
};

/// Throws Error when the corridor condition fails or a crossed side has no twin.
void validate_curve(const Complex& c, const NormalCurve& curve);

/// "A:0,B:1"; an empty string is the trivial curve.
NormalCurve parse_curve(const Complex& c, const std::string& text, int level = 0);
std::string format_curve(const Complex& c, const std::vector<SideRef>& crossings);

/// Removes consecutive crossings that leave a tile through the side they
/// entered by, until none remain.
NormalCurve reduce_curve(const Complex& c, NormalCurve curve);

/// The same curve traversed backwards.
std::vector<SideRef> reverse_crossings(const Complex& c, const std::vector<SideRef>& crossings);

/// Least rotation of the lesser of the word and its reversal, ordered by
/// (tile id, position). Equal keys mean equal unoriented crossing words.
std::string curve_key(const Complex& c, const std::vector<SideRef>& crossings);

struct CurveClass {
  enum Kind { Inessential, Peripheral, EssentialCandidate } kind = Inessential;
  int vertex = -1;  // for Peripheral

  std::string to_string(const Complex& c) const;
};

/// Crossing word of a small loop around vertex v, or empty when v has no
/// closed link.
std::vector<SideRef> link_curve(const Complex& c, int v);

/// Requires a reduced curve. Loops around unmarked vertices count as
/// inessential.
CurveClass classify_curve(const Complex& c, const NormalCurve& curve);

struct CurveComponent {
  NormalCurve curve;       // reduced, on the level of the input curve
  int degree = 1;
  int lifted_crossings = 0;     // crossings upstairs, before projection
  int projected_crossings = 0;  // after projection, before reduction
};

struct CurvePullbackResult {
  std::vector<CurveComponent> components;
  int total = 0;  // sum of degrees
};

/// Preimage of a level-n curve under the map from level n+1 to level n,
/// re-expressed on the level-n skeleton. The trivial curve pulls back to one
/// trivial component of degree 1 per preimage tile. Extends the tower when
/// level n+1 is missing.
CurvePullbackResult pullback_curve(SubdivisionTower& t, const NormalCurve& curve);

struct CurveOrbitReport {
  struct Arc {
    int target = -1;
    int degree = 1;
  };
  struct Node {
    std::string key;
    NormalCurve curve;
    CurveClass cls;
    int depth = 0;
    bool expanded = false;
    std::vector<Arc> arcs;
  };
  std::vector<Node> nodes;  // node 0 is the start
  /// Each cycle as a node sequence, one per back arc of a depth-first search.
  std::vector<std::vector<int>> cycles;
  std::vector<int> frontier;  // reached but not expanded within the depth bound
  int univalent_arcs = 0;
  bool degree_partition = true;  // every expansion had degrees summing to the rule degree

  std::string to_string(const Complex& c) const;
};

/// Breadth-first exploration of the pullback relation on level-0 curves,
/// up to word equality. Every component becomes a node; inessential and
/// peripheral nodes get a self-loop instead of being expanded.
CurveOrbitReport pullback_orbit_curves(SubdivisionTower& t, const NormalCurve& start, int depth);

}  // namespace fsr
