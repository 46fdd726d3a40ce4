#pragma once
// Signed adjacency matrices of the gadget torus in the four boundary-phase
// sectors, Pfaffian evaluation, exact toroidal partition functions, and
// Pfaffian-minor probabilities of edge sets.

#include <map>
#include <vector>

#include "hexdimer/lattice.hpp"

namespace hexdimer {

// Dense skew-symmetric matrix, row-major.
struct SkewMatrix {
  int n = 0;
  std::vector<double> a;

  explicit SkewMatrix(int size = 0) : n(size), a(size * size, 0.0) {}
  double& at(int i, int j) { return a[i * n + j]; }
  double at(int i, int j) const { return a[i * n + j]; }
  void add_edge(int u, int v, double w) {
    at(u, v) += w;
    at(v, u) -= w;
  }
};

// Pf(A) with Pf(A)^2 = det(A), computed by skew-symmetric elimination with
// partial pivoting. Throws on odd dimension or loss of skew-symmetry
// beyond 1e-12 relative.
double pfaffian(SkewMatrix A);

struct KasteleynMatrix {
  SkewMatrix M;
  int theta = 0, tau = 0;  // winding b-edges scaled by (-1)^theta, c by (-1)^tau
};

KasteleynMatrix build_kasteleyn(const FisherTorus& f, int theta, int tau);

struct PartitionResult {
  double Z = 0;                          // |signed_sum|
  double signed_sum = 0;                 // (1/2) sum of signs[s] * Pf_s
  std::array<double, 4> sectorPf{};      // sector index = 2*theta + tau
  std::array<int, 4> signs{};            // calibrated sign combination
};

// Calibrated sector sign combination for an n x n torus (validated against
// the enumeration oracles in the test suite).
std::array<int, 4> sector_signs(int n);

// Exact partition function: Z = (1/2)|sum_s signs[s] Pf(K^s)|. The signed
// sum equals the weighted matching count of the normalized graph including
// edge-weight signs, so it is also meaningful for negative weights.
PartitionResult partition_function(const FisherTorus& f);

// d_product(f) * signed matching sum: the value of contracting the gadget
// signatures, i.e. the vertex-model partition function the torus encodes.
double contraction_value(const FisherTorus& f);

// Probability that all listed (vertex-disjoint) edges occur in a random
// dimer cover: (prod w(e)) / (2Z) * |sum_s signs[s] Pf(K^s with endpoint
// rows/columns removed)|. Edges are given as unordered gadget vertex pairs.
double edge_probabilities(const FisherTorus& f,
                          const std::vector<std::pair<int, int>>& edges);

// Contraction value of f with triangle weights replaced at the listed
// honeycomb vertex ids. Returns a signed value; 0 when no matchings exist.
double conditioned_partition(const FisherTorus& f,
                             const std::map<int, TriangleWeights>& replacements);

}  // namespace hexdimer
