#include "hexdimer/signature.hpp"

#include <cmath>
#include <stdexcept>

namespace hexdimer {

std::string cfg_string(int idx) {
  std::string s(3, '0');
  for (int k = 0; k < 3; ++k)
    if (cfg_bit(idx, k)) s[k] = '1';
  return s;
}

int parse_cfg(const std::string& s) {
  if (s.size() != 3) throw std::invalid_argument("configuration must have 3 digits");
  int idx = 0;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("configuration digits must be 0/1");
    idx = idx * 2 + (ch - '0');
  }
  return idx;
}

BaseChange BaseChange::rotation(double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  // matrix [[c, s], [-s, c]] in (row, col) terms
  return {c, -s, s, c};
}

BaseChange BaseChange::inverse() const {
  double d = det();
  if (d == 0) throw std::invalid_argument("singular base change");
  return {p1 / d, -n1 / d, -p0 / d, n0 / d};
}

Sig8 kron_apply(const BaseChange& Ta, const BaseChange& Tb, const BaseChange& Tc,
                const Sig8& r) {
  Sig8 m{};
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i3 = 0; i3 < 2; ++i3) {
        double acc = 0;
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2)
            for (int j3 = 0; j3 < 2; ++j3)
              acc += Ta.entry(i1, j1) * Tb.entry(i2, j2) * Tc.entry(i3, j3) *
                     r[cfg_index(j1, j2, j3)];
        m[cfg_index(i1, i2, i3)] = acc;
      }
  return m;
}

Sig8 apply_base_change(const Sig8& r, const BaseChange& Ta, const BaseChange& Tb,
                       const BaseChange& Tc, VertexSide side) {
  if (Ta.det() == 0 || Tb.det() == 0 || Tc.det() == 0)
    throw std::invalid_argument("singular base change");
  if (side == VertexSide::Black) return kron_apply(Ta, Tb, Tc, r);
  return kron_apply(Ta.transpose().inverse(), Tb.transpose().inverse(),
                    Tc.transpose().inverse(), r);
}

double max_abs(const Sig8& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

Sig8 one_two_signature(double a, double b, double c) {
  return {0, c, b, a, a, b, c, 0};
}

Sig8 ising_signature(double J1, double J2, double J3) {
  double full = std::exp(2 * (J1 + J2 + J3));
  return {full, std::exp(2 * J3), std::exp(2 * J2), std::exp(2 * J1),
          std::exp(2 * J1), std::exp(2 * J2), std::exp(2 * J3), full};
}

}  // namespace hexdimer
