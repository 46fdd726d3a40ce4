#include "hexdimer/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace hexdimer {

namespace {

constexpr int kEvenIdx[4] = {0, 3, 5, 6};  // 000, 011, 101, 110
constexpr int kOddIdx[4] = {1, 2, 4, 7};   // 001, 010, 100, 111

bool vanish_at(const Sig8& m, const int (&idx)[4], double tol) {
  double scale = max_abs(m);
  if (scale == 0) return false;
  for (int i : idx)
    if (std::fabs(m[i]) > tol * scale) return false;
  return true;
}

}  // namespace

bool is_odd_support(const Sig8& m, double tol) { return vanish_at(m, kEvenIdx, tol); }
bool is_even_support(const Sig8& m, double tol) { return vanish_at(m, kOddIdx, tol); }

TriangleWeights fisher_weights(const Sig8& m, double tol) {
  if (!is_odd_support(m, tol))
    throw std::invalid_argument(
        "not a triangle-realizable signature: entries 000/011/101/110 do not vanish");
  return TriangleWeights{m[4], m[2], m[1], m[7]};
}

Sig8 triangle_signature(const TriangleWeights& t) {
  return {0, t.c, t.b, 0, t.a, 0, 0, t.d};
}

Sig8 flip_digit(const Sig8& m, int slot) {
  if (slot < 0 || slot > 2) throw std::invalid_argument("digit slot must be 0, 1 or 2");
  const int bit = 4 >> slot;
  Sig8 out{};
  for (int s = 0; s < 8; ++s) out[s] = m[s ^ bit];
  return out;
}

Sig8 matchgate_signature_of_gadget(const Gadget& gd) {
  const int k = (int)gd.externals.size();
  if (k < 1 || k > 3) throw std::invalid_argument("gadget must have 1 to 3 external vertices");
  Sig8 out{};
  for (int mask = 0; mask < (1 << k); ++mask) {
    // digit m set <=> external m removed (covered by its connecting edge)
    std::vector<bool> removed(gd.g.vertices, false);
    int idx = 0;
    for (int m = 0; m < k; ++m)
      if (mask & (1 << m)) {
        removed[gd.externals[m]] = true;
        idx |= 4 >> m;
      }
    // compact the remaining subgraph and enumerate its matchings
    std::vector<int> remap(gd.g.vertices, -1);
    int count = 0;
    for (int v = 0; v < gd.g.vertices; ++v)
      if (!removed[v]) remap[v] = count++;
    WeightedGraph sub;
    sub.vertices = count;
    for (auto [u, v, w] : gd.g.edges)
      if (remap[u] >= 0 && remap[v] >= 0) sub.edges.push_back({remap[u], remap[v], w});
    out[idx] = count == 0 ? 1.0 : enumerate_matchings(sub);
  }
  return out;
}

namespace {

double dot4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

bool close(double u, double v, double tol) {
  return std::fabs(u - v) <= tol * std::max({1.0, std::fabs(u), std::fabs(v)});
}

// positive root first, then the negative one
std::optional<std::pair<double, double>> quadratic_roots(double A, double B, double C) {
  if (A == 0) throw std::domain_error("degenerate base-change quadratic");
  const double disc = B * B - 4 * A * C;
  if (disc < 0) return std::nullopt;
  const double sq = std::sqrt(disc);
  // numerically stable split
  const double q = -0.5 * (B + (B >= 0 ? sq : -sq));
  double r1 = q / A, r2 = (q == 0 ? -B / (2 * A) : C / q);
  if (r1 < r2) std::swap(r1, r2);
  return std::make_pair(r1, r2);
}

BaseChange from_ratios(double a0, double a1) {
  const double s = std::sqrt(0.5);
  const double nn = std::hypot(a0, a1);
  if (nn == 0) throw std::domain_error("zero ratio column");
  return BaseChange{a0 / nn, a1 / nn, s, s};
}

}  // namespace

std::optional<EdgeBases> solve_base_change_1x1(const Sig8& x, const Sig8& y, double tol) {
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  const double x5 = x[4], x6 = x[5], x7 = x[6], x8 = x[7];
  const double y1 = y[0], y2 = y[1], y3 = y[2], y4 = y[3];
  const double y5 = y[4], y6 = y[5], y7 = y[6], y8 = y[7];

  const double A3 = x6 * y5 + y7 * x8 + y1 * x2 + y3 * x4;
  const double B3 = -y7 * x7 - y3 * x3 + y2 * x2 + y4 * x4 + x6 * y6 - x5 * y5 +
                    y8 * x8 - y1 * x1;
  const double C3 = -(y6 * x5 + x3 * y4 + y2 * x1 + x7 * y8);
  const double A2 = x3 * y1 + y6 * x8 + y2 * x4 + y5 * x7;
  const double B2 = y8 * x8 - x6 * y6 - x5 * y5 + y7 * x7 - y2 * x2 + y3 * x3 +
                    y4 * x4 - y1 * x1;
  const double C2 = -(y8 * x6 + y7 * x5 + x1 * y3 + y4 * x2);

  auto r3 = quadratic_roots(A3, B3, C3);
  auto r2 = quadratic_roots(A2, B2, C2);
  if (!r3 || !r2) return std::nullopt;
  const auto [a03, a13] = *r3;
  const auto [a02, a12] = *r2;

  const std::array<double, 4> u = {x4, -x3, -x2, x1};
  const std::array<double, 4> v = {x8, -x7, -x6, x5};
  const std::array<double, 4> w = {y1, y2, y3, y4};
  const std::array<double, 4> t = {y5, y6, y7, y8};
  const std::array<double, 4> pv = {a02 * a03, a02, a03, 1};
  const std::array<double, 4> qv = {a02 * a13, a02, a13, 1};
  const std::array<double, 4> rv = {a12 * a03, a12, a03, 1};
  const std::array<double, 4> sv = {a12 * a13, a12, a13, 1};

  const double a01 = dot4(rv, u) / dot4(rv, v);
  const double a11 = dot4(sv, u) / dot4(sv, v);

  // leftover constraints: the alternate expressions must agree
  if (!close(a01, dot4(qv, u) / dot4(qv, v), tol)) return std::nullopt;
  if (!close(a11, dot4(pv, u) / dot4(pv, v), tol)) return std::nullopt;
  if (!close(a01, -dot4(pv, t) / dot4(pv, w), tol)) return std::nullopt;
  if (!close(a11, -dot4(qv, t) / dot4(qv, w), tol)) return std::nullopt;
  // the black-side quadratics must have the same roots
  {
    const double res1 = 2 * y2 * y8 - 2 * y6 * y4 +
                        (a13 + a03) * (y1 * y8 + y2 * y7 - y5 * y4 - y6 * y3) +
                        2 * (y1 * y7 - y5 * y3) * a13 * a03;
    const double res3 = 2 * y8 * y3 - 2 * y4 * y7 +
                        (a12 + a02) * (y1 * y8 + y3 * y6 - y4 * y5 - y7 * y2) +
                        2 * (y6 * y1 - y2 * y5) * a12 * a02;
    const double sy = max_abs(y) * max_abs(y);
    if (std::fabs(res1) > tol * std::max(1.0, sy) * 4) return std::nullopt;
    if (std::fabs(res3) > tol * std::max(1.0, sy) * 4) return std::nullopt;
  }

  return EdgeBases{from_ratios(a01, a11), from_ratios(a02, a12), from_ratios(a03, a13)};
}

ReducedModel reduce_model(const VertexModel& m, const std::vector<EdgeBases>& per_cell) {
  const HoneyTorus& h = m.h;
  const int n = h.n;
  if ((int)per_cell.size() != n * n)
    throw std::invalid_argument("one EdgeBases per fundamental cell required");

  std::vector<uint8_t> flipped(h.edge_count(), 0);
  auto basis_of = [&](int edge) {
    const int cell = edge / 3;
    BaseChange T = per_cell[cell].of(h.edge_type(edge));
    if (flipped[edge]) T = BaseChange{T.n1, T.n0, T.p1, T.p0};
    return T;
  };
  auto signature_at = [&](int v) {
    auto es = h.incident_edges(v);
    return apply_base_change(m.at(v), basis_of(es[0]), basis_of(es[1]), basis_of(es[2]),
                             h.is_black(v) ? VertexSide::Black : VertexSide::White);
  };

  auto classify = [&](std::vector<int>& evens) {
    evens.clear();
    for (int v = 0; v < h.vertex_count(); ++v) {
      Sig8 s = signature_at(v);
      if (is_odd_support(s)) continue;
      if (is_even_support(s)) evens.push_back(v);
      else
        throw std::invalid_argument("not realizable with the given bases at vertex " +
                                    std::to_string(v));
    }
  };

  std::vector<int> evens;
  classify(evens);
  if (evens.size() % 2 != 0)
    throw std::invalid_argument("odd number of even-support gadgets: no matchings exist");
  // pair up even-support gadgets and swap basis rows along a connecting
  // path; each swap moves the parity defect across one edge
  while (evens.size() >= 2) {
    const int src = evens[0], dst = evens[1];
    // BFS over vertices via edges
    std::vector<int> prev_edge(h.vertex_count(), -1), prev_vertex(h.vertex_count(), -1);
    std::queue<int> q;
    q.push(src);
    std::vector<bool> seen(h.vertex_count(), false);
    seen[src] = true;
    while (!q.empty()) {
      int cur = q.front();
      q.pop();
      if (cur == dst) break;
      for (int e : h.incident_edges(cur)) {
        int nb = h.edge_black(e) == cur ? h.edge_white(e) : h.edge_black(e);
        if (!seen[nb]) {
          seen[nb] = true;
          prev_edge[nb] = e;
          prev_vertex[nb] = cur;
          q.push(nb);
        }
      }
    }
    for (int cur = dst; cur != src; cur = prev_vertex[cur]) flipped[prev_edge[cur]] ^= 1;
    classify(evens);
  }

  std::vector<TriangleWeights> black(n * n), white(n * n);
  for (int v = 0; v < h.vertex_count(); ++v) {
    TriangleWeights t = fisher_weights(signature_at(v));
    if (t.d == 0)
      throw std::invalid_argument("degenerate gadget after reduction at vertex " +
                                  std::to_string(v));
    (h.is_black(v) ? black : white)[v / 2] = t;
  }
  return ReducedModel{build_fisher_torus(h, black, white), flipped};
}

ReducedModel reduce_model_uniform(const VertexModel& m, const EdgeBases& bases) {
  return reduce_model(m, std::vector<EdgeBases>(m.h.n * m.h.n, bases));
}

namespace {

// dense Gaussian elimination with partial pivoting; A is n x n row-major
std::vector<double> gauss_solve(std::vector<double> A, std::vector<double> b) {
  const int n = (int)b.size();
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(A[i * n + k]) > std::fabs(A[piv * n + k])) piv = i;
    if (A[piv * n + k] == 0) throw std::domain_error("singular linear system");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = A[i * n + k] / A[k * n + k];
      if (f == 0) continue;
      for (int j = k; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> xv(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A[i * n + j] * xv[j];
    xv[i] = s / A[i * n + i];
  }
  return xv;
}

}  // namespace

GaugeResult check_gauge_equivalent(const FisherTorus& f1, const FisherTorus& f2,
                                   double tol) {
  GaugeResult res;
  if (f1.n != f2.n) return res;
  auto e1 = fisher_edges(f1), e2 = fisher_edges(f2);
  const int V = f1.vertex_count();

  // sign assignment by BFS propagation
  std::vector<int> sgn(V, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbor, required product sign)
  std::vector<std::tuple<int, int, double>> logratio;    // u, v, log |w2/w1|
  for (size_t i = 0; i < e1.size(); ++i) {
    const double w1 = e1[i].w, w2 = e2[i].w;
    if (w1 == 0 && w2 == 0) continue;
    if (w1 == 0 || w2 == 0) return res;  // residual stays 0 but equivalent=false
    const int ps = (w1 > 0) == (w2 > 0) ? 1 : -1;
    adj[e1[i].u].push_back({e1[i].v, ps});
    adj[e1[i].v].push_back({e1[i].u, ps});
    logratio.push_back({e1[i].u, e1[i].v, std::log(std::fabs(w2 / w1))});
  }
  for (int start = 0; start < V; ++start) {
    if (sgn[start] != 0) continue;
    sgn[start] = 1;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int cur = q.front();
      q.pop();
      for (auto [nb, ps] : adj[cur]) {
        const int want = sgn[cur] * ps;
        if (sgn[nb] == 0) {
          sgn[nb] = want;
          q.push(nb);
        } else if (sgn[nb] != want) {
          res.residual = 1;
          return res;  // inconsistent sign pattern
        }
      }
    }
  }

  // least squares for log-magnitudes: minimize sum (phi_u + phi_v - r)^2
  std::vector<double> A(V * V, 0.0), b(V, 0.0);
  for (auto [u, v, r] : logratio) {
    A[u * V + u] += 1;
    A[v * V + v] += 1;
    A[u * V + v] += 1;
    A[v * V + u] += 1;
    b[u] += r;
    b[v] += r;
  }
  for (int i = 0; i < V; ++i) A[i * V + i] += 1e-12;  // guard isolated vertices
  std::vector<double> phi = gauss_solve(std::move(A), std::move(b));
  double worst = 0;
  for (auto [u, v, r] : logratio) worst = std::max(worst, std::fabs(phi[u] + phi[v] - r));
  res.residual = worst;
  res.equivalent = worst <= tol;
  if (res.equivalent) {
    res.multipliers.resize(V);
    for (int i = 0; i < V; ++i) res.multipliers[i] = sgn[i] * std::exp(phi[i]);
  }
  return res;
}

}  // namespace hexdimer
