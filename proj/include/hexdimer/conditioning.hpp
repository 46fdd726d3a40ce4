#pragma once
// Exact conditional probabilities of local vertex configurations on finite
// tori: the conditioned vertex is replaced by a rank-one tensor, split into
// parity parts, and each surviving variant is evaluated as a gadget-torus
// contraction.

#include <map>
#include <vector>

#include "hexdimer/pfaffian.hpp"
#include "hexdimer/reduction.hpp"

namespace hexdimer {

// A vertex forced into a single local configuration.
struct ConditionSpec {
  int vertex = 0;  // honeycomb vertex id
  int config = 0;  // configuration index (digit order a, b, c)
};

// Restriction of an edge base change to the terms compatible with one
// conditioning case: `config_uses_edge` says whether the forced local
// configuration occupies the edge, `dimer_present` whether the gadget-level
// connector is occupied. Exactly one entry survives in the affected column.
BaseChange split_base_change(const BaseChange& T, bool config_uses_edge,
                             bool dimer_present);

// Rank-one tensor of a vertex forced into configuration `config`, expressed
// in the given per-edge bases (black side uses the base columns directly,
// white side the columns of the transposed inverse).
Sig8 forced_tensor(const Sig8& r, const BaseChange& Ta, const BaseChange& Tb,
                   const BaseChange& Tc, VertexSide side, int config);

// Restriction of a signature to configurations of odd (or even) occupancy.
Sig8 parity_part(const Sig8& m, bool odd);

// One evaluable summand of the conditioned contraction: triangle-weight
// replacements at the conditioned vertices plus any path vertices whose
// bases were row-swapped to repair parity.
struct ConditionVariant {
  std::map<int, TriangleWeights> replacements;
};

// All parity-variant replacement sets for the event; variants whose parts
// vanish identically are dropped. Throws when a surviving gadget cannot be
// normalized (zero full-occupancy entry).
std::vector<ConditionVariant> build_condition_variants(
    const VertexModel& m, const ReducedModel& base,
    const std::vector<EdgeBases>& per_cell, const std::vector<ConditionSpec>& events);

// P(all events) = sum over variants of the replaced contraction, divided by
// the unconditioned contraction. Requires n >= 2.
double conditional_probability(const VertexModel& m, const std::vector<EdgeBases>& per_cell,
                               const std::vector<ConditionSpec>& events);
double conditional_probability(const VertexModel& m, const EdgeBases& bases,
                               const std::vector<ConditionSpec>& events);

}  // namespace hexdimer
