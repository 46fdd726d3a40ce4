#pragma once
// Single-edge-flip Markov chain for the one-or-two-edges model on the
// toroidal honeycomb lattice, with batch-mean estimation of local-event
// probabilities and an SVG renderer for configurations.

#include <cstdint>
#include <string>
#include <vector>

#include "hexdimer/oracle.hpp"

namespace hexdimer {

struct OneTwoParams {
  double a = 1, b = 1, c = 1;

  double of(EdgeType t) const {
    switch (t) {
      case EdgeType::A: return a;
      case EdgeType::B: return b;
      default: return c;
    }
  }
};

// Chain state: an edge subset in which every vertex has degree 1 or 2,
// plus a counter-based generator so runs are reproducible by (seed, step).
struct ChainState {
  HoneyTorus h;
  OneTwoParams w;
  std::vector<uint8_t> occ;  // per edge id
  std::vector<uint8_t> deg;  // per vertex id
  uint64_t seed = 0;
  uint64_t steps_taken = 0;
  uint64_t accepted = 0;
};

// All a-edges occupied (every vertex gets degree exactly 1).
ChainState init_chain(int n, const OneTwoParams& w, uint64_t seed);

// Metropolis acceptance probability of toggling the edge; 0 when the toggle
// would leave the valid-configuration space.
double toggle_acceptance(const ChainState& s, int edge);

// One transition: pick an edge uniformly, toggle with its acceptance
// probability. Returns whether the configuration changed.
bool chain_step(ChainState& s);

// Local configuration index currently shown by vertex v.
int local_config(const ChainState& s, int v);

struct SampleStats {
  double mean = 0;
  double std_error = 0;  // batch-mean standard error (100 batches)
  long long steps = 0;
};

// Runs `steps` transitions; the first half is burn-in, the second half is
// split into 100 batches whose means give the estimate and its error bar.
// Each observer is a conjunction of (vertex, configuration) requirements.
std::vector<SampleStats> sample_chain(ChainState& s, long long steps,
                                      const std::vector<ConditionEvent>& observers);

// Current configuration as an SVG drawing (edges colored by type).
std::string render_svg(const ChainState& s);

}  // namespace hexdimer
