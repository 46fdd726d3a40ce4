#include "hexdimer/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hexdimer/pfaffian.hpp"

namespace hexdimer {

using cplx = std::complex<double>;

CellWeights cell_weights(const FisherTorus& f) {
  auto norm = [](const TriangleWeights& t) {
    return TriangleWeights{t.a / t.d, t.b / t.d, t.c / t.d, 1.0};
  };
  const TriangleWeights b0 = norm(f.black[0]), w0 = norm(f.white[0]);
  auto same = [](const TriangleWeights& s, const TriangleWeights& t) {
    const double tol = 1e-9;
    return std::fabs(s.a - t.a) < tol && std::fabs(s.b - t.b) < tol &&
           std::fabs(s.c - t.c) < tol;
  };
  for (const auto& t : f.black)
    if (!same(b0, norm(t))) throw std::invalid_argument("weights are not 1x1-periodic");
  for (const auto& t : f.white)
    if (!same(w0, norm(t))) throw std::invalid_argument("weights are not 1x1-periodic");
  return CellWeights{b0.a, b0.b, b0.c, w0.a, w0.b, w0.c};
}

Products products_of(const CellWeights& cw) {
  return Products{cw.a1 * cw.a2, cw.b1 * cw.b2, cw.c1 * cw.c2};
}

std::array<cplx, 36> cell_matrix(const CellWeights& cw, cplx z, cplx w) {
  std::array<cplx, 36> K{};
  auto at = [&K](int i, int j) -> cplx& { return K[(i - 1) * 6 + (j - 1)]; };
  at(1, 2) = cw.c1;
  at(2, 1) = -cw.c1;
  at(1, 3) = -cw.b1;
  at(3, 1) = cw.b1;
  at(2, 3) = cw.a1;
  at(3, 2) = -cw.a1;
  at(4, 5) = cw.c2;
  at(5, 4) = -cw.c2;
  at(4, 6) = -cw.b2;
  at(6, 4) = cw.b2;
  at(5, 6) = cw.a2;
  at(6, 5) = -cw.a2;
  at(1, 4) = -1.0;
  at(4, 1) = 1.0;
  at(2, 5) = -1.0 / z;
  at(5, 2) = z;
  at(3, 6) = -1.0 / w;
  at(6, 3) = w;
  return K;
}

double char_poly(const Products& p, cplx z, cplx w) {
  const double a = p.a, b = p.b, c = p.c;
  const cplx val = (z + 1.0 / z) * (a * b - c) + (w + 1.0 / w) * (a * c - b) +
                   (z / w + w / z) * (b * c - a) + (a * a + b * b + c * c + 1.0);
  return val.real();
}

SpectralClassification classify_spectral_curve(const Products& p) {
  SpectralClassification cl;
  const double scale = p.a * p.a + p.b * p.b + p.c * p.c + 1.0;
  cl.degenerate = std::fabs(p.a * p.b - p.c) <= 1e-12 * scale ||
                  std::fabs(p.a * p.c - p.b) <= 1e-12 * scale ||
                  std::fabs(p.b * p.c - p.a) <= 1e-12 * scale;
  int zeros = 0;
  for (double z0 : {1.0, -1.0})
    for (double w0 : {1.0, -1.0})
      if (std::fabs(char_poly(p, z0, w0)) <= 1e-12 * scale) {
        ++zeros;
        cl.has_node = true;
        cl.z0 = z0;
        cl.w0 = w0;
      }
  if (zeros > 1)
    throw std::invalid_argument("polynomial vanishes at several real points: invalid weights");
  return cl;
}

namespace {

double log_p_at(const Products& p, double th, double ph) {
  const double val = char_poly(p, std::polar(1.0, th), std::polar(1.0, ph));
  if (val <= 0) throw std::invalid_argument("nonpositive polynomial value off the node");
  return std::log(val);
}

double refined_cell_avg(const Products& p, double th0, double ph0, double h, int level) {
  if (level == 0) return log_p_at(p, th0 + h / 2, ph0 + h / 2);
  const double hh = h / 2;
  return 0.25 * (refined_cell_avg(p, th0, ph0, hh, level - 1) +
                 refined_cell_avg(p, th0 + hh, ph0, hh, level - 1) +
                 refined_cell_avg(p, th0, ph0 + hh, hh, level - 1) +
                 refined_cell_avg(p, th0 + hh, ph0 + hh, hh, level - 1));
}

double free_energy_once(const Products& p, int grid) {
  const SpectralClassification cl = classify_spectral_curve(p);
  const int G = grid;
  const double h = 2 * M_PI / G;
  // block of cells whose midpoint evaluation is replaced by refinement
  int kth = -10, kph = -10;
  if (cl.has_node) {
    kth = cl.z0 > 0 ? 0 : G / 2;
    kph = cl.w0 > 0 ? 0 : G / 2;
  }
  auto in_block = [G](int k, int kn) {
    if (kn < -1) return false;
    const int d = ((k - kn) % G + G) % G;
    return d <= 1 || d >= G - 1;
  };
  double sum = 0, comp = 0;
  auto add = [&](double xv) {
    const double yv = xv - comp;
    const double tv = sum + yv;
    comp = (tv - sum) - yv;
    sum = tv;
  };
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) {
      if (cl.has_node && in_block(i, kth) && in_block(j, kph))
        add(refined_cell_avg(p, i * h, j * h, h, 4));
      else
        add(log_p_at(p, (i + 0.5) * h, (j + 0.5) * h));
    }
  return sum / (2.0 * G * G);
}

}  // namespace

FreeEnergyResult free_energy(const Products& p, int grid) {
  if (grid < 8 || grid % 2) throw std::invalid_argument("grid must be even and >= 8");
  FreeEnergyResult r;
  r.value = free_energy_once(p, grid);
  r.error_estimate = std::fabs(r.value - free_energy_once(p, grid / 2));
  return r;
}

double log_partition_product(const CellWeights& cw, int n) {
  const Products p = products_of(cw);
  std::array<double, 4> L{};
  std::array<bool, 4> zero{};
  for (int theta = 0; theta < 2; ++theta)
    for (int tau = 0; tau < 2; ++tau) {
      double acc = 0;
      bool dead = false;
      for (int k = 0; k < n && !dead; ++k)
        for (int l = 0; l < n; ++l) {
          const double th = (2 * M_PI * k + M_PI * theta) / n;
          const double ph = (2 * M_PI * l + M_PI * tau) / n;
          const double val = char_poly(p, std::polar(1.0, th), std::polar(1.0, ph));
          if (val <= 1e-14) {
            dead = true;
            break;
          }
          acc += std::log(val);
        }
      const int s = 2 * theta + tau;
      zero[s] = dead;
      L[s] = dead ? -1e300 : 0.5 * acc;
    }
  // With the calibrated sector signs and the dense-Pfaffian signs measured
  // across weight families (validated in tests), the signed combination on
  // magnitudes is always (1/2)(-|Pf_00| + |Pf_01| + |Pf_10| + |Pf_11|).
  const std::array<int, 4> eta{-1, +1, +1, +1};
  double Lmax = *std::max_element(L.begin(), L.end());
  double sum = 0;
  for (int s = 0; s < 4; ++s) {
    if (zero[s]) continue;
    sum += eta[s] * std::exp(L[s] - Lmax);
  }
  if (sum <= 0) throw std::domain_error("sector combination collapsed to zero");
  return Lmax + std::log(sum / 2.0);
}

namespace {

// Gauss-Jordan inverse of a 6x6 complex matrix.
std::array<cplx, 36> invert6(std::array<cplx, 36> A) {
  std::array<cplx, 36> inv{};
  for (int i = 0; i < 6; ++i) inv[i * 6 + i] = 1.0;
  for (int k = 0; k < 6; ++k) {
    int piv = k;
    for (int i = k + 1; i < 6; ++i)
      if (std::abs(A[i * 6 + k]) > std::abs(A[piv * 6 + k])) piv = i;
    if (std::abs(A[piv * 6 + k]) == 0) throw std::domain_error("singular cell matrix");
    if (piv != k)
      for (int j = 0; j < 6; ++j) {
        std::swap(A[k * 6 + j], A[piv * 6 + j]);
        std::swap(inv[k * 6 + j], inv[piv * 6 + j]);
      }
    const cplx d = A[k * 6 + k];
    for (int j = 0; j < 6; ++j) {
      A[k * 6 + j] /= d;
      inv[k * 6 + j] /= d;
    }
    for (int i = 0; i < 6; ++i) {
      if (i == k) continue;
      const cplx f = A[i * 6 + k];
      if (f == 0.0) continue;
      for (int j = 0; j < 6; ++j) {
        A[i * 6 + j] -= f * A[k * 6 + j];
        inv[i * 6 + j] -= f * inv[k * 6 + j];
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<double> k_inverse_batch(const CellWeights& cw,
                                    const std::vector<KInvRequest>& reqs, int grid) {
  const int G = grid;
  std::vector<cplx> acc(reqs.size(), 0.0);
  for (int i = 0; i < G; ++i) {
    const cplx z = std::polar(1.0, M_PI * (2 * i + 1) / G);
    for (int j = 0; j < G; ++j) {
      const cplx w = std::polar(1.0, M_PI * (2 * j + 1) / G);
      const auto inv = invert6(cell_matrix(cw, z, w));
      for (size_t r = 0; r < reqs.size(); ++r) {
        const auto& q = reqs[r];
        acc[r] += std::pow(z, q.dx) * std::pow(w, q.dy) * inv[(q.u - 1) * 6 + (q.v - 1)];
      }
    }
  }
  std::vector<double> out(reqs.size());
  for (size_t r = 0; r < reqs.size(); ++r) {
    const cplx v = acc[r] / double(G) / double(G);
    out[r] = v.real();
  }
  return out;
}

double k_inverse(const CellWeights& cw, int u, int v, int dx, int dy, int grid) {
  return k_inverse_batch(cw, {KInvRequest{u, v, dx, dy}}, grid)[0];
}

ReducedCell make_reduced_cell(const Sig8& black, const Sig8& white, const EdgeBases& bases) {
  ReducedCell c;
  c.black_r = black;
  c.white_r = white;
  c.bases = bases;
  c.black_m = apply_base_change(black, bases.Ta, bases.Tb, bases.Tc, VertexSide::Black);
  c.white_m = apply_base_change(white, bases.Ta, bases.Tb, bases.Tc, VertexSide::White);
  if (!is_odd_support(c.black_m) || !is_odd_support(c.white_m))
    throw std::invalid_argument("bases do not produce triangle-realizable gadgets");
  return c;
}

CellWeights cell_weights_from(const ReducedCell& cell) {
  const TriangleWeights b = fisher_weights(cell.black_m);
  const TriangleWeights w = fisher_weights(cell.white_m);
  return CellWeights{b.a / b.d, b.b / b.d, b.c / b.d,
                     w.a / w.d, w.b / w.d, w.c / w.d};
}

ReducedCell one_two_reduced_cell(double a, double b, double c) {
  const Sig8 r = one_two_signature(a, b, c);
  const BaseChange T = BaseChange::rotation(3 * M_PI / 4);
  return make_reduced_cell(r, r, EdgeBases{T, T, T});
}

namespace {

struct Vtx {
  int label, x, y;
  bool operator<(const Vtx& o) const {
    return std::tie(label, x, y) < std::tie(o.label, o.x, o.y);
  }
  bool operator==(const Vtx& o) const {
    return label == o.label && x == o.x && y == o.y;
  }
};

// rank-one local tensor of a forced configuration
Sig8 forced_tensor(const ReducedCell& cell, const LocalTarget& t) {
  const Sig8& r = t.black ? cell.black_r : cell.white_r;
  const double yc = r[t.config];
  std::array<std::array<double, 2>, 3> col;
  const BaseChange* Ts[3] = {&cell.bases.Ta, &cell.bases.Tb, &cell.bases.Tc};
  for (int m = 0; m < 3; ++m) {
    BaseChange T = *Ts[m];
    if (!t.black) T = T.transpose().inverse();
    const bool present = cfg_bit(t.config, m);
    col[m] = present ? std::array<double, 2>{T.p0, T.p1}
                     : std::array<double, 2>{T.n0, T.n1};
  }
  Sig8 out{};
  for (int s = 0; s < 8; ++s)
    out[s] = yc * col[0][cfg_bit(s, 0)] * col[1][cfg_bit(s, 1)] * col[2][cfg_bit(s, 2)];
  return out;
}

Sig8 parity_part(const Sig8& m, bool odd) {
  Sig8 out{};
  for (int s = 0; s < 8; ++s) {
    const int par = cfg_bit(s, 0) + cfg_bit(s, 1) + cfg_bit(s, 2);
    if ((par % 2 == 1) == odd) out[s] = m[s];
  }
  return out;
}

// slot of the edge shared by a black and a white target, or -1
int shared_edge_slot(const LocalTarget& b, const LocalTarget& w) {
  // black (i, j) digit m connects to white (i, j), (i-1, j), (i, j-1)
  const int off[3][2] = {{0, 0}, {-1, 0}, {0, -1}};
  for (int m = 0; m < 3; ++m)
    if (w.di == b.di + off[m][0] && w.dj == b.dj + off[m][1]) return m;
  return -1;
}

}  // namespace

double local_probability_infinite(const ReducedCell& cell,
                                  const std::vector<LocalTarget>& targets, int grid) {
  if (targets.empty() || targets.size() > 2)
    throw std::invalid_argument("one or two target vertices supported");

  const double d_base[2] = {cell.black_m[7], cell.white_m[7]};

  // variants: all targets odd; or (for a pair) both even with the basis on
  // the shared edge row-swapped, which restores odd support on both
  std::vector<std::array<Sig8, 2>> variants;
  {
    std::array<Sig8, 2> odd{};
    for (size_t t = 0; t < targets.size(); ++t)
      odd[t] = parity_part(forced_tensor(cell, targets[t]), true);
    variants.push_back(odd);
    if (targets.size() == 2) {
      const LocalTarget& tb = targets[0].black ? targets[0] : targets[1];
      const LocalTarget& tw = targets[0].black ? targets[1] : targets[0];
      if (targets[0].black == targets[1].black)
        throw std::invalid_argument("paired targets must have opposite colors");
      const int slot = shared_edge_slot(tb, tw);
      if (slot < 0) throw std::invalid_argument("paired targets must be adjacent");
      std::array<Sig8, 2> even{};
      for (size_t t = 0; t < targets.size(); ++t)
        even[t] = flip_digit(parity_part(forced_tensor(cell, targets[t]), false), slot);
      variants.push_back(even);
    }
  }

  // gather all required inverse entries, then integrate once
  struct Term {
    double weight;
    std::vector<Vtx> verts;
  };
  std::vector<Term> terms;
  const int cfgs[4] = {1, 2, 4, 7};
  const int bslot_off[3][2] = {{0, 0}, {-1, 0}, {0, -1}};
  const int wslot_off[3][2] = {{0, 0}, {1, 0}, {0, 1}};

  int shared = -1;
  if (targets.size() == 2) {
    const LocalTarget& tb = targets[0].black ? targets[0] : targets[1];
    const LocalTarget& tw = targets[0].black ? targets[1] : targets[0];
    shared = shared_edge_slot(tb, tw);
  }

  for (const auto& var : variants) {
    const int reps = (int)targets.size();
    for (int c0 = 0; c0 < 4; ++c0)
      for (int c1 = 0; c1 < (reps == 2 ? 4 : 1); ++c1) {
        const int s[2] = {cfgs[c0], cfgs[c1]};
        // signed ratio against the base gadget entry, times the base
        // probability factor of this connector state; the per-state base
        // probability is nonnegative, so only the ratio carries sign
        double ratio = 1, base_factor = 1;
        bool skip = false;
        for (int t = 0; t < reps; ++t) {
          const Sig8& tb = targets[t].black ? cell.black_m : cell.white_m;
          if (var[t][s[t]] == 0) skip = true;
          if (tb[s[t]] == 0)
            throw std::domain_error("base gadget entry vanishes at a needed state");
          ratio *= var[t][s[t]] / tb[s[t]];
          base_factor *= tb[s[t]] / d_base[targets[t].black ? 0 : 1];
        }
        const double weight = ratio * std::fabs(base_factor);
        if (skip) continue;
        if (reps == 2) {
          // occupancy of the shared physical edge must agree
          const int sb = targets[0].black ? s[0] : s[1];
          const int sw = targets[0].black ? s[1] : s[0];
          if (cfg_bit(sb, shared) != cfg_bit(sw, shared)) continue;
        }
        std::vector<Vtx> verts;
        auto push = [&verts](Vtx v) {
          if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
        };
        for (int t = 0; t < reps; ++t) {
          const LocalTarget& tg = targets[t];
          for (int m = 0; m < 3; ++m) {
            push({tg.black ? m + 1 : m + 4, tg.di, tg.dj});
            if (!cfg_bit(s[t], m)) continue;
            // occupied connecting edge: include the far endpoint unless it
            // belongs to the other target gadget
            const auto& off = tg.black ? bslot_off[m] : wslot_off[m];
            Vtx far{tg.black ? m + 4 : m + 1, tg.di + off[0], tg.dj + off[1]};
            bool other = false;
            for (int t2 = 0; t2 < reps; ++t2) {
              if (t2 == t) continue;
              const LocalTarget& o = targets[t2];
              const bool far_black = far.label <= 3;
              if (o.black == far_black && o.di == far.x && o.dj == far.y) other = true;
            }
            if (!other) push(far);
          }
        }
        terms.push_back({weight, std::move(verts)});
      }
  }

  // memoized inverse entries
  std::map<std::array<int, 4>, size_t> slot_of;
  std::vector<KInvRequest> reqs;
  auto want = [&](int u, int v, int dx, int dy) {
    const std::array<int, 4> key{u, v, dx, dy};
    auto it = slot_of.find(key);
    if (it != slot_of.end()) return it->second;
    const size_t idx = reqs.size();
    reqs.push_back(KInvRequest{u, v, dx, dy});
    slot_of[key] = idx;
    return idx;
  };
  for (const auto& term : terms)
    for (size_t i = 0; i < term.verts.size(); ++i)
      for (size_t j = i + 1; j < term.verts.size(); ++j)
        want(term.verts[i].label, term.verts[j].label, term.verts[i].x - term.verts[j].x,
             term.verts[i].y - term.verts[j].y);
  const std::vector<double> vals = k_inverse_batch(cell_weights_from(cell), reqs, grid);

  double prob = 0;
  for (const auto& term : terms) {
    const int m = (int)term.verts.size();
    if (m % 2 != 0) continue;  // cannot be matched by the environment
    SkewMatrix A(m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const double v =
            vals[want(term.verts[i].label, term.verts[j].label,
                      term.verts[i].x - term.verts[j].x, term.verts[i].y - term.verts[j].y)];
        A.at(i, j) = v;
        A.at(j, i) = -v;
      }
    prob += term.weight * std::fabs(pfaffian(A));
  }
  return prob;
}

}  // namespace hexdimer
