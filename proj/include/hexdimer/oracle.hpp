#pragma once
// Brute-force reference implementations used as ground truth: exhaustive
// configuration enumeration for vertex models and backtracking enumeration
// of weighted perfect matchings. Deliberately slow and guarded by size
// limits.

#include <map>
#include <utility>
#include <vector>

#include "hexdimer/lattice.hpp"
#include "hexdimer/signature.hpp"

namespace hexdimer {

// Vertex weights on a toroidal honeycomb lattice, one signature per vertex id.
struct VertexModel {
  HoneyTorus h;
  std::vector<Sig8> sig;

  static VertexModel uniform(int n, const Sig8& s);
  const Sig8& at(int v) const { return sig[v]; }
};

struct EnumerationReport {
  double partition = 0;
  long long config_count = 0;  // configurations with nonzero weight
  // marginal probability of each local configuration per vertex;
  // empty when partition == 0
  std::vector<std::array<double, 8>> marginals;
};

// Sums over all 2^(3n^2) edge subsets; requires n <= 2.
EnumerationReport enumerate_vertex_model(const VertexModel& m);

struct WeightedGraph {
  int vertices = 0;
  std::vector<std::tuple<int, int, double>> edges;
};

// Exact weighted perfect-matching count by backtracking; <= 26 vertices.
double enumerate_matchings(const WeightedGraph& g);

// Contraction of the gadget signatures over all connecting-edge subsets:
// each triangle contributes its signature entry at the local configuration
// of its three connectors (0/c/b/0/a/0/0/d). Equals the dimer partition
// times the product of d entries. Requires n <= 2.
double contract_fisher(const FisherTorus& f);

// One forced local configuration per listed vertex.
struct ConditionEvent {
  std::vector<std::pair<int, int>> targets;  // (vertex id, configuration index)
};

// Probability of the event under the vertex-model measure, by restricted
// enumeration; requires n <= 2 and partition > 0.
double enumerate_conditional(const VertexModel& m, const ConditionEvent& ev);

}  // namespace hexdimer
