#pragma once
// Core value types: 8-entry vertex weight vectors and 2x2 edge base changes.
//
// Index convention used everywhere: a local configuration at a degree-3
// vertex is a binary string c1c2c3 where c1 refers to the a-edge, c2 to the
// b-edge and c3 to the c-edge. The array index is c1*4 + c2*2 + c3, so
// index 0 = "000", index 7 = "111".

#include <array>
#include <cstdint>
#include <string>

namespace hexdimer {

using Sig8 = std::array<double, 8>;

inline int cfg_index(int a, int b, int c) { return a * 4 + b * 2 + c; }
inline int cfg_bit(int idx, int slot) { return (idx >> (2 - slot)) & 1; }  // slot 0=a,1=b,2=c
std::string cfg_string(int idx);
int parse_cfg(const std::string& s);  // "011" -> 3, throws std::invalid_argument

// 2x2 invertible matrix attached to an edge, stored as columns n and p:
//   T = [ n0  p0 ]
//       [ n1  p1 ]
struct BaseChange {
  double n0 = 1, n1 = 0, p0 = 0, p1 = 1;

  double det() const { return n0 * p1 - n1 * p0; }
  // entry(row, col): col 0 is the n column, col 1 the p column
  double entry(int row, int col) const {
    return col == 0 ? (row == 0 ? n0 : n1) : (row == 0 ? p0 : p1);
  }
  static BaseChange identity() { return {}; }
  static BaseChange rotation(double angle);  // [[cos, sin], [-sin, cos]]
  static BaseChange swap() { return {0, 1, 1, 0}; }
  BaseChange transpose() const { return {n0, p0, n1, p1}; }
  BaseChange inverse() const;
};

// m[i1 i2 i3] = sum_j Ta(i1,j1) Tb(i2,j2) Tc(i3,j3) r[j1 j2 j3]
Sig8 kron_apply(const BaseChange& Ta, const BaseChange& Tb, const BaseChange& Tc,
                const Sig8& r);

enum class VertexSide { Black, White };

// Black side: m = (Ta (x) Tb (x) Tc) r.
// White side: m = [(Ta (x) Tb (x) Tc)^t]^{-1} r.
Sig8 apply_base_change(const Sig8& r, const BaseChange& Ta, const BaseChange& Tb,
                       const BaseChange& Tc, VertexSide side);

double max_abs(const Sig8& v);

// Signature of the one-or-two-edges model: (0, c, b, a, a, b, c, 0).
Sig8 one_two_signature(double a, double b, double c);

// Ising couplings on the triangular sublattice mapped to a vertex model:
// (e^{2(J1+J2+J3)}, e^{2J3}, e^{2J2}, e^{2J1}, e^{2J1}, e^{2J2}, e^{2J3},
//  e^{2(J1+J2+J3)}).
Sig8 ising_signature(double J1, double J2, double J3);

}  // namespace hexdimer
