#include "hexdimer/realizability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexdimer {

namespace {

double max4(double a, double b, double c, double d) {
  return std::max(std::max(std::fabs(a), std::fabs(b)),
                  std::max(std::fabs(c), std::fabs(d)));
}

}  // namespace

std::array<double, 8> z_vector(const Sig8& r) {
  const double x1 = r[0], x2 = r[1], x3 = r[2], x4 = r[3];
  const double x5 = r[4], x6 = r[5], x7 = r[6], x8 = r[7];
  return {x4 + x6 + x7 - x1, x3 + x5 + x8 - x2, x2 + x5 + x8 - x3,
          x1 + x6 + x7 - x4, x2 + x3 + x8 - x5, x1 + x4 + x7 - x6,
          x1 + x4 + x6 - x7, x2 + x3 + x5 - x8};
}

OrthogonalResult check_orthogonal(const Sig8& r, double tol) {
  auto z = z_vector(r);
  const double z1 = z[0], z2 = z[1], z3 = z[2], z4 = z[3];
  const double z5 = z[4], z6 = z[5], z7 = z[6], z8 = z[7];
  auto both_zero = [](double a, double b) { return a == 0 && b == 0; };
  if (both_zero(z2, z7) || both_zero(z3, z6) || both_zero(z4, z5) ||
      both_zero(z1, z8))
    throw std::domain_error("tangent ratio indeterminate: a ratio pair of the edge-sum vector vanishes");

  // Four-angle tangent-sum criterion with denominators cleared. The four
  // tangents are -z7/z2, -z6/z3, -z4/z5, -z1/z8; the sum-formula numerator
  // times z2*z3*z5*z8 gives:
  const double m1 = z7 * z3 * z5 * z8;
  const double m2 = z6 * z2 * z5 * z8;
  const double m3 = z4 * z2 * z3 * z8;
  const double m4 = z1 * z2 * z3 * z5;
  const double m5 = z7 * z6 * z4 * z8;
  const double m6 = z7 * z6 * z1 * z5;
  const double m7 = z7 * z4 * z1 * z3;
  const double m8 = z6 * z4 * z1 * z2;
  const double num = -(m1 + m2 + m3 + m4) + (m5 + m6 + m7 + m8);
  const double scale = std::max(max4(m1, m2, m3, m4), max4(m5, m6, m7, m8));

  OrthogonalResult res;
  res.residual = scale > 0 ? std::fabs(num) / scale : std::fabs(num);
  res.realizable = res.residual <= tol;
  if (!res.realizable) return res;

  const double phi = std::atan2(z4, -z5);
  const double psi = std::atan2(z6, -z3);
  const double gamma = std::atan2(z7, -z2);
  res.angles = {phi, psi, gamma};
  // branch choices above satisfy the positive-sine conditions for the first
  // three angles exactly; the remaining condition involves the angle sum
  const double s = -(gamma + phi + psi);
  const double r18 = std::hypot(z1, z8);
  res.positively = std::hypot(std::sin(s) - z1 / r18, std::cos(s) + z8 / r18) < 1e-6;
  return res;
}

bool check_orthogonal_periodic(const VertexModel& m, double tol) {
  const int n = m.h.n;
  std::vector<std::array<double, 8>> zs(m.h.vertex_count());
  for (int v = 0; v < m.h.vertex_count(); ++v) {
    if (!check_orthogonal(m.at(v), tol).realizable) return false;
    zs[v] = z_vector(m.at(v));
  }
  // tangent-sum compatibility of the two endpoint vertices across each edge:
  // t(u, v) = (u + v)/(1 - u v) applied to the two tangent ratios not fixed
  // by the shared edge; cleared form t(-p/q, -r/s) = -(p s + r q)/(q s - p r)
  auto t_frac = [](const std::array<double, 8>& z, EdgeType type,
                   double& num, double& den) {
    double p, q, r, s;
    switch (type) {
      case EdgeType::A: p = z[5]; q = z[2]; r = z[3]; s = z[4]; break;  // -z6/z3, -z4/z5
      case EdgeType::B: p = z[6]; q = z[1]; r = z[3]; s = z[4]; break;  // -z7/z2, -z4/z5
      default:          p = z[2]; q = z[5]; r = z[1]; s = z[6]; break;  // -z3/z6, -z2/z7
    }
    num = -(p * s + r * q);
    den = q * s - p * r;
  };
  for (int e = 0; e < m.h.edge_count(); ++e) {
    double n1, d1, n2, d2;
    t_frac(zs[m.h.edge_black(e)], m.h.edge_type(e), n1, d1);
    t_frac(zs[m.h.edge_white(e)], m.h.edge_type(e), n2, d2);
    const double diff = n1 * d2 - n2 * d1;
    const double scale = std::max(std::fabs(n1 * d2), std::fabs(n2 * d1));
    if (std::fabs(diff) > tol * std::max(scale, 1.0)) return false;
  }
  (void)n;
  return true;
}

std::pair<double, double> general_criterion_value(const Sig8& x, const Sig8& y,
                                                  const Sig8& z, const Sig8& w) {
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  const double x5 = x[4], x6 = x[5], x7 = x[6], x8 = x[7];
  const double y1 = y[0], y2 = y[1], y3 = y[2], y4 = y[3];
  const double y5 = y[4], y6 = y[5], y7 = y[6], y8 = y[7];
  const double z1 = z[0], z2 = z[1], z3 = z[2], z4 = z[3];
  const double z5 = z[4], z6 = z[5], z7 = z[6], z8 = z[7];
  const double w1 = w[0], w2 = w[1], w3 = w[2], w4 = w[3];
  const double w5 = w[4], w6 = w[5], w7 = w[6], w8 = w[7];

  const double Y[3] = {y1 * y4 - y2 * y3,
                       y1 * y8 + y4 * y5 - y2 * y7 - y3 * y6,
                       y5 * y8 - y6 * y7};
  const double Z[3] = {z1 * z6 - z2 * z5,
                       z1 * z8 + z3 * z6 - z4 * z5 - z2 * z7,
                       z3 * z8 - z4 * z7};
  const double W[3] = {w1 * w7 - w3 * w5,
                       w1 * w8 + w2 * w7 - w5 * w4 - w3 * w6,
                       w2 * w8 - w6 * w4};

  double X[3][3][3];
  X[0][0][0] = x1 * x1 * (x3 * x6 + x2 * x7 + x4 * x5 - x1 * x8) - 2 * x1 * x2 * x3 * x5;
  X[0][0][1] = x1 * x1 * (x6 * x4 - x2 * x8) + x2 * x2 * (x1 * x7 - x3 * x5);
  X[0][0][2] = x2 * x2 * (x2 * x7 - x1 * x8 - x3 * x6 - x4 * x5) + 2 * x1 * x2 * x4 * x6;
  X[0][1][0] = x3 * x3 * (x1 * x6 - x2 * x5) + x1 * x1 * (x7 * x4 - x3 * x8);
  X[0][1][1] = x1 * x2 * (x4 * x7 - x3 * x8) + x3 * x4 * (x1 * x6 - x2 * x5);
  X[0][1][2] = x2 * x2 * (x4 * x7 - x3 * x8) + x4 * x4 * (x1 * x6 - x2 * x5);
  X[0][2][0] = x3 * x3 * (x3 * x6 - x2 * x7 - x4 * x5 - x1 * x8) + 2 * x1 * x4 * x3 * x7;
  X[0][2][1] = x4 * x4 * (x1 * x7 - x3 * x5) + x3 * x3 * (x6 * x4 - x2 * x8);
  X[0][2][2] = x4 * x4 * (x2 * x7 + x1 * x8 + x3 * x6 - x4 * x5) - 2 * x2 * x3 * x4 * x8;
  X[1][0][0] = x5 * x5 * (x1 * x4 - x2 * x3) + x1 * x1 * (x6 * x7 - x5 * x8);
  X[1][0][1] = x1 * x2 * (x6 * x7 - x5 * x8) + x5 * x6 * (x1 * x4 - x2 * x3);
  X[1][0][2] = x6 * x6 * (x1 * x4 - x2 * x3) + x2 * x2 * (x6 * x7 - x5 * x8);
  X[1][1][0] = x1 * x3 * (x7 * x6 - x5 * x8) + x5 * x7 * (x1 * x4 - x2 * x3);
  X[1][1][1] = x1 * x4 * x6 * x7 - x2 * x3 * x5 * x8;
  X[1][1][2] = x4 * x8 * (x1 * x6 - x2 * x5) + x2 * x6 * (x4 * x7 - x3 * x8);
  X[1][2][0] = x7 * x7 * (x1 * x4 - x2 * x3) + x3 * x3 * (x6 * x7 - x5 * x8);
  X[1][2][1] = x3 * x7 * (x4 * x6 - x2 * x8) + x4 * x8 * (x1 * x7 - x3 * x5);
  X[1][2][2] = x8 * x8 * (x1 * x4 - x2 * x3) + x4 * x4 * (x6 * x7 - x5 * x8);
  X[2][0][0] = x5 * x5 * (x4 * x5 - x1 * x8 - x3 * x6 - x2 * x7) + 2 * x1 * x5 * x6 * x7;
  X[2][0][1] = x5 * x5 * (x6 * x4 - x2 * x8) + x6 * x6 * (x1 * x7 - x3 * x5);
  X[2][0][2] = x6 * x6 * (x1 * x8 + x2 * x7 + x4 * x5 - x3 * x6) - 2 * x5 * x6 * x2 * x8;
  X[2][1][0] = x5 * x5 * (x4 * x7 - x3 * x8) + x7 * x7 * (x1 * x6 - x2 * x5);
  X[2][1][1] = x6 * x8 * (x1 * x7 - x3 * x5) + x5 * x7 * (x4 * x6 - x2 * x8);
  X[2][1][2] = x8 * x8 * (x1 * x6 - x2 * x5) + x6 * x6 * (x4 * x7 - x3 * x8);
  X[2][2][0] = x7 * x7 * (x1 * x8 + x3 * x6 + x4 * x5 - x2 * x7) - 2 * x3 * x8 * x5 * x7;
  X[2][2][1] = x8 * x8 * (x1 * x7 - x3 * x5) + x7 * x7 * (x6 * x4 - x2 * x8);
  X[2][2][2] = x8 * x8 * (x1 * x8 - x3 * x6 - x2 * x7 - x4 * x5) + 2 * x7 * x8 * x6 * x4;

  double sum = 0, comp = 0, scale = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double term = X[i][j][k] * Y[i] * Z[j] * W[k];
        scale = std::max(scale, std::fabs(term));
        const double yy = term - comp;
        const double tt = sum + yy;
        comp = (tt - sum) - yy;
        sum = tt;
      }
  return {sum, scale};
}

bool check_realizable_general(const Sig8& x, const Sig8& y_a, const Sig8& z_b,
                              const Sig8& w_c, double tol) {
  auto [val, scale] = general_criterion_value(x, y_a, z_b, w_c);
  return std::fabs(val) <= tol * std::max(scale, 1.0);
}

double bipartite_criterion_value(const Sig8& v) {
  const double p18 = v[0] * v[7], p27 = v[1] * v[6];
  const double p36 = v[2] * v[5], p45 = v[3] * v[4];
  return p18 * p18 + p27 * p27 + p36 * p36 + p45 * p45 -
         2 * (p18 * p27 + p18 * p36 + p18 * p45 + p27 * p36 + p27 * p45 +
              p36 * p45) +
         4 * v[0] * v[3] * v[5] * v[6] + 4 * v[1] * v[2] * v[4] * v[7];
}

bool check_bipartite(const Sig8& v, double tol) {
  double m = max_abs(v);
  double scale = m * m * m * m;
  return std::fabs(bipartite_criterion_value(v)) <= tol * std::max(scale, 1.0);
}

bool near_degenerate_identical(const Sig8& v, double tol) {
  const double s1 = v[3] * v[7] + v[0] * v[4] + v[2] * v[6] + v[1] * v[5];
  const double s2 = v[2] * v[3] + v[4] * v[5] + v[0] * v[1] + v[6] * v[7];
  const double s3 = v[3] * v[1] + v[6] * v[4] + v[2] * v[0] + v[7] * v[5];
  const double m = max_abs(v);
  const double scale = std::max(m * m, 1.0);
  return std::fabs(s1) <= tol * scale || std::fabs(s2) <= tol * scale ||
         std::fabs(s3) <= tol * scale;
}

}  // namespace hexdimer
