#pragma once
// Criteria deciding whether vertex weights can be turned into a dimer model:
// the rotation-based (orthogonal) criterion with its angle data, the general
// polynomial criterion, and the bipartite criterion.

#include <optional>
#include <vector>

#include "hexdimer/oracle.hpp"
#include "hexdimer/signature.hpp"

namespace hexdimer {

inline constexpr double kAlgebraTol = 1e-9;

// (x4+x6+x7-x1, x3+x5+x8-x2, x2+x5+x8-x3, x1+x6+x7-x4,
//  x2+x3+x8-x5, x1+x4+x7-x6, x1+x4+x6-x7, x2+x3+x5-x8)
std::array<double, 8> z_vector(const Sig8& r);

struct OrthogonalResult {
  bool realizable = false;
  // rotation angles per edge-sum combination; present when realizable
  std::optional<std::array<double, 3>> angles;  // (phi, psi, gamma)
  bool positively = false;  // the sine sign conditions also hold
  double residual = 0;      // scaled magnitude of the defining polynomial
};

// Tangent-sum criterion on the z vector, evaluated in cleared-denominator
// form. Throws std::domain_error if both members of one of the ratio pairs
// {z2,z7}, {z3,z6}, {z4,z5}, {z1,z8} vanish.
OrthogonalResult check_orthogonal(const Sig8& r, double tol = kAlgebraTol);

// Per-vertex criterion at every vertex plus the three cross-edge
// compatibility equalities with periodic index shifts.
bool check_orthogonal_periodic(const VertexModel& m, double tol = kAlgebraTol);

// Degree-4 polynomial criterion in the signature at a vertex (x) and its
// three neighbors across the a-, b-, c-edges.
bool check_realizable_general(const Sig8& x, const Sig8& y_a, const Sig8& z_b,
                              const Sig8& w_c, double tol = kAlgebraTol);

// Value of the general criterion polynomial together with its term scale.
std::pair<double, double> general_criterion_value(const Sig8& x, const Sig8& y_a,
                                                  const Sig8& z_b, const Sig8& w_c);

// Quartic polynomial identity in the signature entries that characterizes
// realizability with a bipartite gadget (on top of general realizability).
bool check_bipartite(const Sig8& v, double tol = kAlgebraTol);
double bipartite_criterion_value(const Sig8& v);

// Degenerate sums excluded from the identical-signature equivalence between
// the general and orthogonal criteria.
bool near_degenerate_identical(const Sig8& v, double tol = kAlgebraTol);

}  // namespace hexdimer
