#pragma once
// Characteristic polynomial of the weighted 1x1 cell, spectral-curve
// classification, free energy per fundamental domain, inverse-matrix
// integrals over the unit torus, and infinite-volume local statistics.

#include <complex>
#include <vector>

#include "hexdimer/reduction.hpp"

namespace hexdimer {

// Normalized per-cell triangle weights (d = 1 on both triangles).
struct CellWeights {
  double a1 = 1, b1 = 1, c1 = 1;  // black triangle
  double a2 = 1, b2 = 1, c2 = 1;  // white triangle
};

// Cross-triangle products entering the closed-form determinant.
struct Products {
  double a = 1, b = 1, c = 1;
};

// Requires every cell of f to carry the same weights; normalizes by d.
CellWeights cell_weights(const FisherTorus& f);
Products products_of(const CellWeights& cw);

// The 6x6 signed adjacency matrix of one cell with boundary phases z, w
// (row/column order: black externals 1..3, then white externals 4..6).
std::array<std::complex<double>, 36> cell_matrix(const CellWeights& cw,
                                                 std::complex<double> z,
                                                 std::complex<double> w);

// Closed form of det of the cell matrix:
// (z+1/z)(ab-c) + (w+1/w)(ac-b) + (z/w+w/z)(bc-a) + a^2+b^2+c^2+1.
double char_poly(const Products& p, std::complex<double> z, std::complex<double> w);

struct SpectralClassification {
  bool has_node = false;
  double z0 = 0, w0 = 0;  // node location in {-1, +1}^2 when has_node
  bool degenerate = false;  // some coefficient ab-c, ac-b, bc-a vanishes
};

// Evaluates the polynomial at the four real points (+-1, +-1). Throws when
// two or more of them vanish (inconsistent weights).
SpectralClassification classify_spectral_curve(const Products& p);

struct FreeEnergyResult {
  double value = 0;
  double error_estimate = 0;  // |value(grid) - value(grid/2)|
};

// (1/8 pi^2) times the integral of log P over the unit torus, by midpoint
// quadrature on a grid x grid mesh; the 3x3 cell block around a node is
// integrated by 4-level dyadic refinement.
FreeEnergyResult free_energy(const Products& p, int grid = 256);

// log of the exact n x n torus partition function through the
// fundamental-domain enlargement identity: each boundary-phase sector's
// Pfaffian magnitude is exp((1/2) sum log P over the sector's root grid).
double log_partition_product(const CellWeights& cw, int n);

struct KInvRequest {
  int u = 1, v = 1;   // cell labels 1..6
  int dx = 0, dy = 0; // fundamental-domain displacement of u minus v
};

// Torus quadrature of z^dx w^dy (cell matrix)^-1[u,v] on a grid x grid
// midpoint mesh (mesh points avoid (+-1, +-1), so a node is integrable).
std::vector<double> k_inverse_batch(const CellWeights& cw,
                                    const std::vector<KInvRequest>& reqs, int grid);
double k_inverse(const CellWeights& cw, int u, int v, int dx, int dy, int grid = 256);

// A 1x1-periodic model together with its reduction data.
struct ReducedCell {
  Sig8 black_r{}, white_r{};  // vertex signatures
  EdgeBases bases{};
  Sig8 black_m{}, white_m{};  // transformed odd-support gadget signatures
};

ReducedCell make_reduced_cell(const Sig8& black, const Sig8& white, const EdgeBases& bases);
// Normalized triangle weights of the two gadget signatures.
CellWeights cell_weights_from(const ReducedCell& cell);
// 1-2 model with weights (a, b, c), reduced with the rotation-by-3pi/4 basis.
ReducedCell one_two_reduced_cell(double a, double b, double c);

struct LocalTarget {
  int di = 0, dj = 0;  // cell offset
  bool black = true;
  int config = 0;  // forced local configuration index (digit order a, b, c)
};

// Infinite-volume probability that every target vertex shows its forced
// local configuration. Targets must be single vertices or pairs joined by
// an edge (the cases needed for the shipped event types).
double local_probability_infinite(const ReducedCell& cell,
                                  const std::vector<LocalTarget>& targets,
                                  int grid = 256);

}  // namespace hexdimer
