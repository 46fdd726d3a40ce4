#pragma once
// Tensor base change on vertex signatures, triangle-weight extraction,
// base-change solving for 1x1-periodic models, parity repair, and
// gauge-equivalence checking between gadget tori.

#include <optional>
#include <vector>

#include "hexdimer/lattice.hpp"
#include "hexdimer/oracle.hpp"
#include "hexdimer/signature.hpp"

namespace hexdimer {

// One base-change matrix per edge class; in the 1x1-periodic case the same
// triple applies to every cell.
struct EdgeBases {
  BaseChange Ta, Tb, Tc;

  const BaseChange& of(EdgeType t) const {
    switch (t) {
      case EdgeType::A: return Ta;
      case EdgeType::B: return Tb;
      default: return Tc;
    }
  }
};

// True when the four even-index entries (000, 011, 101, 110) vanish
// relative to the largest entry; such signatures are triangle-realizable.
bool is_odd_support(const Sig8& m, double tol = 1e-9);
// True when the complementary four entries vanish.
bool is_even_support(const Sig8& m, double tol = 1e-9);

// Projects an odd-support signature to triangle weights
// (a, b, c, d) = (m_100, m_010, m_001, m_111). Throws when the even-index
// entries are not negligible.
TriangleWeights fisher_weights(const Sig8& m, double tol = 1e-9);

// Full signature of a triangle gadget: (0, c, b, 0, a, 0, 0, d).
Sig8 triangle_signature(const TriangleWeights& t);

// Signature after interchanging the role of 0/1 on the given digit slot
// (0 = a, 1 = b, 2 = c): entry(s) = old entry(s with that bit flipped).
Sig8 flip_digit(const Sig8& m, int slot);

// Local gadget: a small weighted graph whose first `externals` entries list
// the external vertices in a/b/c order.
struct Gadget {
  WeightedGraph g;
  std::vector<int> externals;
};

// Entry at external subset X0 = matching sum of the gadget with X0 removed.
// Indexed by the shared digit convention (first external = first digit).
Sig8 matchgate_signature_of_gadget(const Gadget& gd);

// Solves the 1x1-periodic base-change equations for white signature x and
// black signature y (both entrywise positive). Returns std::nullopt when
// the leftover consistency constraints fail (not realizable).
std::optional<EdgeBases> solve_base_change_1x1(const Sig8& x, const Sig8& y,
                                               double tol = 1e-7);

struct ReducedModel {
  FisherTorus f;
  // which edges had their basis rows swapped during parity repair
  std::vector<uint8_t> flipped;
};

// Applies per-edge bases (black side directly, white side transposed
// inverse), repairs even-support gadgets in pairs by swapping basis rows
// along connecting paths, and extracts triangle weights. The contraction
// identity is exact: contraction_value(result.f) = vertex partition of m.
ReducedModel reduce_model(const VertexModel& m, const std::vector<EdgeBases>& per_cell);
ReducedModel reduce_model_uniform(const VertexModel& m, const EdgeBases& bases);

struct GaugeResult {
  bool equivalent = false;
  double residual = 0;
  std::vector<double> multipliers;  // per gadget vertex, when equivalent
};

// Tests whether f2's edge weights equal f1's times g(u)g(v) for per-vertex
// multipliers g: sign pattern first (consistency around cycles), then a
// log-linear least squares on magnitudes.
GaugeResult check_gauge_equivalent(const FisherTorus& f1, const FisherTorus& f2,
                                   double tol = 1e-9);

}  // namespace hexdimer
