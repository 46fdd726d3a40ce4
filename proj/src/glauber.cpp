#include "hexdimer/glauber.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hexdimer {

namespace {

// counter-based generator: the k-th draw of a run is a pure function of
// (seed, k), so chains are reproducible and replayable from any step
uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_unit(uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

// type of the occupied edge at a degree-1 vertex other than `skip`
EdgeType other_occupied_type(const ChainState& s, int v, int skip) {
  for (int e : s.h.incident_edges(v))
    if (e != skip && s.occ[e]) return s.h.edge_type(e);
  throw std::logic_error("degree bookkeeping is inconsistent");
}

// the edge type distinct from both arguments
EdgeType third_type(EdgeType x, EdgeType y) {
  return static_cast<EdgeType>(3 - static_cast<int>(x) - static_cast<int>(y));
}

}  // namespace

ChainState init_chain(int n, const OneTwoParams& w, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("torus size must be positive");
  if (w.a <= 0 || w.b <= 0 || w.c <= 0)
    throw std::invalid_argument("edge weights must be positive");
  ChainState s;
  s.h = build_honey_torus(n);
  s.w = w;
  s.occ.assign(s.h.edge_count(), 0);
  s.deg.assign(s.h.vertex_count(), 0);
  s.seed = seed;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int e = s.h.edge_id(i, j, EdgeType::A);
      s.occ[e] = 1;
      ++s.deg[s.h.edge_black(e)];
      ++s.deg[s.h.edge_white(e)];
    }
  return s;
}

double toggle_acceptance(const ChainState& s, int edge) {
  const int u = s.h.edge_black(edge), v = s.h.edge_white(edge);
  const EdgeType q = s.h.edge_type(edge);
  if (!s.occ[edge]) {
    // addition is valid only when both endpoints currently have degree 1
    if (s.deg[u] != 1 || s.deg[v] != 1) return 0;
    const EdgeType pu = other_occupied_type(s, u, edge);
    const EdgeType pv = other_occupied_type(s, v, edge);
    // weight ratio: each endpoint goes from w(p) to w(third of {p, q})
    const double ratio = (s.w.of(third_type(pu, q)) / s.w.of(pu)) *
                         (s.w.of(third_type(pv, q)) / s.w.of(pv));
    return std::min(1.0, ratio);
  }
  // deletion is valid only when both endpoints currently have degree 2
  if (s.deg[u] != 2 || s.deg[v] != 2) return 0;
  const EdgeType pu = other_occupied_type(s, u, edge);
  const EdgeType pv = other_occupied_type(s, v, edge);
  const double ratio = (s.w.of(pu) / s.w.of(third_type(pu, q))) *
                       (s.w.of(pv) / s.w.of(third_type(pv, q)));
  return std::min(1.0, ratio);
}

bool chain_step(ChainState& s) {
  const uint64_t r1 = splitmix64(s.seed ^ (2 * s.steps_taken));
  const uint64_t r2 = splitmix64(s.seed ^ (2 * s.steps_taken + 1));
  ++s.steps_taken;
  const int edge = (int)(r1 % (uint64_t)s.h.edge_count());
  const double acc = toggle_acceptance(s, edge);
  if (acc <= 0 || to_unit(r2) >= acc) return false;
  const int delta = s.occ[edge] ? -1 : 1;
  s.occ[edge] ^= 1;
  s.deg[s.h.edge_black(edge)] += delta;
  s.deg[s.h.edge_white(edge)] += delta;
  ++s.accepted;
  return true;
}

int local_config(const ChainState& s, int v) {
  const auto inc = s.h.incident_edges(v);
  return cfg_index(s.occ[inc[0]], s.occ[inc[1]], s.occ[inc[2]]);
}

std::vector<SampleStats> sample_chain(ChainState& s, long long steps,
                                      const std::vector<ConditionEvent>& observers) {
  if (steps < 200) throw std::invalid_argument("need at least 200 steps");
  for (const auto& ob : observers)
    for (auto [v, c] : ob.targets) {
      if (v < 0 || v >= s.h.vertex_count())
        throw std::invalid_argument("observer vertex out of range");
      if (c < 0 || c > 7) throw std::invalid_argument("observer configuration out of range");
    }
  const long long burn = steps / 2;
  for (long long t = 0; t < burn; ++t) chain_step(s);

  const int B = 100;
  const long long measure = steps - burn;
  const size_t m = observers.size();
  std::vector<std::vector<double>> batch_means(m, std::vector<double>(B, 0.0));
  long long done = 0;
  for (int b = 0; b < B; ++b) {
    const long long upto = measure * (b + 1) / B;
    const long long len = upto - done;
    std::vector<long long> hits(m, 0);
    for (long long t = 0; t < len; ++t) {
      chain_step(s);
      for (size_t o = 0; o < m; ++o) {
        bool all = true;
        for (auto [v, c] : observers[o].targets)
          if (local_config(s, v) != c) {
            all = false;
            break;
          }
        if (all) ++hits[o];
      }
    }
    for (size_t o = 0; o < m; ++o) batch_means[o][b] = (double)hits[o] / (double)len;
    done = upto;
  }

  std::vector<SampleStats> out(m);
  for (size_t o = 0; o < m; ++o) {
    double mean = 0;
    for (double x : batch_means[o]) mean += x;
    mean /= B;
    double var = 0;
    for (double x : batch_means[o]) var += (x - mean) * (x - mean);
    var /= (B - 1);
    out[o] = SampleStats{mean, std::sqrt(var / B), steps};
  }
  return out;
}

std::string render_svg(const ChainState& s) {
  const int n = s.h.n;
  const double ux = 60, sh = 30;  // cell spacing and shear per row
  auto bx = [&](int i, int j) { return 40 + i * ux + j * sh; };
  auto by = [&](int, int j) { return 40 + j * ux * 0.87; };
  const double ox = 22, oy = 12;  // white-vertex offset inside the cell
  std::ostringstream svg;
  const double W = 80 + n * ux + n * sh, H = 80 + n * ux * 0.87;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const char* color[3] = {"#d62728", "#2ca02c", "#1f77b4"};  // a, b, c
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < 3; ++t) {
        const int e = s.h.edge_id(i, j, static_cast<EdgeType>(t));
        if (!s.occ[e]) continue;
        // white endpoint cell: a -> (i, j), b -> (i-1, j), c -> (i, j-1)
        int wi = i, wj = j;
        if (t == 1) wi = i - 1;
        if (t == 2) wj = j - 1;
        const double x1 = bx(i, j), y1 = by(i, j);
        double x2 = bx(wi, wj) + ox, y2 = by(wi, wj) + oy;
        const bool wraps = wi < 0 || wj < 0;
        svg << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
            << y2 << "\" stroke=\"" << color[t] << "\" stroke-width=\"3\""
            << (wraps ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      svg << "<circle cx=\"" << bx(i, j) << "\" cy=\"" << by(i, j)
          << "\" r=\"4\" fill=\"black\"/>\n";
      svg << "<circle cx=\"" << bx(i, j) + ox << "\" cy=\"" << by(i, j) + oy
          << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
    }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hexdimer
