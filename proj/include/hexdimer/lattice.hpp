#pragma once
// Toroidal honeycomb lattice with n x n fundamental domains, and the
// triangle-gadget torus it reduces to.
//
// Honeycomb layout: black vertex (i, j) is joined to
//   white (i, j)             by its a-edge,
//   white (i-1 mod n, j)     by its b-edge,
//   white (i, j-1 mod n)     by its c-edge.
// b-edges wind around the torus in the i direction, c-edges in the j
// direction.

#include <cstdint>
#include <string>
#include <vector>

#include "hexdimer/signature.hpp"

namespace hexdimer {

enum class EdgeType : uint8_t { A = 0, B = 1, C = 2 };

struct HoneyTorus {
  int n = 0;

  int vertex_count() const { return 2 * n * n; }
  int edge_count() const { return 3 * n * n; }

  int black_id(int i, int j) const { return 2 * (i * n + j); }
  int white_id(int i, int j) const { return 2 * (i * n + j) + 1; }
  bool is_black(int v) const { return (v & 1) == 0; }
  // cell of a vertex id
  int cell_i(int v) const { return (v / 2) / n; }
  int cell_j(int v) const { return (v / 2) % n; }

  int edge_id(int i, int j, EdgeType t) const {
    return 3 * (i * n + j) + static_cast<int>(t);
  }
  EdgeType edge_type(int e) const { return static_cast<EdgeType>(e % 3); }
  // endpoints of edge (i, j, t); black endpoint is always black(i, j)
  int edge_black(int e) const;
  int edge_white(int e) const;

  // the three incident edge ids of a vertex, indexed by type a, b, c
  std::array<int, 3> incident_edges(int v) const;
};

HoneyTorus build_honey_torus(int n);

struct TriangleWeights {
  double a = 1, b = 1, c = 1, d = 1;  // d is the {111} entry of the gadget
};

// One triangle gadget per honeycomb vertex; 6 gadget vertices per cell.
// Labels within a cell: 1,2,3 = black triangle externals facing the a/b/c
// edge, 4,5,6 = white triangle externals facing the a/b/c edge.
//
// Oriented edge set of one cell (i, j), matching the displayed 6x6 matrix
// of the 1x1 domain:
//   1->2 (c1)  2->3 (a1)  3->1 (b1)     black triangle
//   4->5 (c2)  5->6 (a2)  6->4 (b2)     white triangle
//   4(i,j)   -> 1(i,j)    weight 1      a-type connector
//   5(i-1,j) -> 2(i,j)    weight 1      b-type connector, winds in i
//   6(i,j-1) -> 3(i,j)    weight 1      c-type connector, winds in j
struct FisherTorus {
  int n = 0;
  std::vector<TriangleWeights> black;  // indexed by cell i*n+j
  std::vector<TriangleWeights> white;

  int vertex_count() const { return 6 * n * n; }
  // gadget vertex id from cell and label 1..6
  int vid(int i, int j, int label) const { return 6 * (i * n + j) + (label - 1); }
  int label(int v) const { return v % 6 + 1; }
  int cell_i(int v) const { return (v / 6) / n; }
  int cell_j(int v) const { return (v / 6) % n; }

  // product of all d entries (the contraction-level normalization constant)
  double d_product() const;
};

struct FisherEdge {
  int u = 0, v = 0;     // oriented u -> v
  double w = 1;
  bool in_EH = false;   // crossed by the horizontal dual cycle (winding b-connectors)
  bool in_EV = false;   // crossed by the vertical dual cycle (winding c-connectors)
};

FisherTorus build_fisher_torus(const HoneyTorus& h,
                               const std::vector<TriangleWeights>& black,
                               const std::vector<TriangleWeights>& white);

// Oriented, weighted edge list of the gadget torus. Triangle edge weights are
// divided by the gadget's d entry, so the result is a genuine dimer graph;
// the dropped constant is FisherTorus::d_product().
std::vector<FisherEdge> fisher_edges(const FisherTorus& f);

// JSON round trip for the model file
// {"n": int, "triangles": [{"i","j","color","a","b","c","d"}]}
std::string fisher_to_json(const FisherTorus& f);
FisherTorus fisher_from_json(const std::string& text);

}  // namespace hexdimer
