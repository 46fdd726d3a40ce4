#include "hexdimer/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace hexdimer {

namespace {

struct KahanSum {
  double s = 0, c = 0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

}  // namespace

VertexModel VertexModel::uniform(int n, const Sig8& s) {
  HoneyTorus h = build_honey_torus(n);
  return VertexModel{h, std::vector<Sig8>(h.vertex_count(), s)};
}

static void check_small(const HoneyTorus& h) {
  if (h.n > 2) throw std::invalid_argument("exhaustive enumeration limited to n <= 2");
}

static double config_weight(const VertexModel& m, uint32_t mask) {
  double w = 1;
  for (int v = 0; v < m.h.vertex_count(); ++v) {
    auto es = m.h.incident_edges(v);
    int idx = cfg_index((mask >> es[0]) & 1, (mask >> es[1]) & 1, (mask >> es[2]) & 1);
    w *= m.at(v)[idx];
    if (w == 0) return 0;
  }
  return w;
}

EnumerationReport enumerate_vertex_model(const VertexModel& m) {
  check_small(m.h);
  int E = m.h.edge_count();
  EnumerationReport rep;
  KahanSum total;
  std::vector<std::array<KahanSum, 8>> marg(m.h.vertex_count());
  for (uint32_t mask = 0; mask < (1u << E); ++mask) {
    double w = config_weight(m, mask);
    if (w == 0) continue;
    total.add(w);
    ++rep.config_count;
    for (int v = 0; v < m.h.vertex_count(); ++v) {
      auto es = m.h.incident_edges(v);
      int idx = cfg_index((mask >> es[0]) & 1, (mask >> es[1]) & 1, (mask >> es[2]) & 1);
      marg[v][idx].add(w);
    }
  }
  rep.partition = total.s;
  if (rep.partition > 0) {
    rep.marginals.resize(m.h.vertex_count());
    for (int v = 0; v < m.h.vertex_count(); ++v)
      for (int k = 0; k < 8; ++k) rep.marginals[v][k] = marg[v][k].s / rep.partition;
  }
  return rep;
}

static void match_rec(const std::vector<std::vector<std::pair<int, double>>>& adj,
                      std::vector<bool>& used, int from, double acc, KahanSum& out) {
  int n = used.size();
  int u = from;
  while (u < n && used[u]) ++u;
  if (u == n) {
    out.add(acc);
    return;
  }
  used[u] = true;
  for (auto [v, w] : adj[u]) {
    if (used[v]) continue;
    used[v] = true;
    match_rec(adj, used, u + 1, acc * w, out);
    used[v] = false;
  }
  used[u] = false;
}

double enumerate_matchings(const WeightedGraph& g) {
  if (g.vertices > 26) throw std::invalid_argument("matching enumeration limited to 26 vertices");
  if (g.vertices % 2 != 0) return 0;
  std::vector<std::vector<std::pair<int, double>>> adj(g.vertices);
  for (auto [u, v, w] : g.edges) {
    if (u == v) throw std::invalid_argument("loop edge");
    adj[u].push_back({v, w});
    adj[v].push_back({u, w});
  }
  std::vector<bool> used(g.vertices, false);
  KahanSum out;
  match_rec(adj, used, 0, 1.0, out);
  return out.s;
}

double contract_fisher(const FisherTorus& f) {
  HoneyTorus h = build_honey_torus(f.n);
  check_small(h);
  int E = h.edge_count();
  auto entry = [](const TriangleWeights& t, int idx) -> double {
    switch (idx) {
      case 1: return t.c;   // 001
      case 2: return t.b;   // 010
      case 4: return t.a;   // 100
      case 7: return t.d;   // 111
      default: return 0;
    }
  };
  KahanSum total;
  for (uint32_t mask = 0; mask < (1u << E); ++mask) {
    double w = 1;
    for (int v = 0; v < h.vertex_count() && w != 0; ++v) {
      auto es = h.incident_edges(v);
      int idx = cfg_index((mask >> es[0]) & 1, (mask >> es[1]) & 1, (mask >> es[2]) & 1);
      const TriangleWeights& t = h.is_black(v) ? f.black[v / 2] : f.white[v / 2];
      w *= entry(t, idx);
    }
    if (w != 0) total.add(w);
  }
  return total.s;
}

double enumerate_conditional(const VertexModel& m, const ConditionEvent& ev) {
  check_small(m.h);
  int E = m.h.edge_count();
  KahanSum total, hit;
  for (uint32_t mask = 0; mask < (1u << E); ++mask) {
    double w = config_weight(m, mask);
    if (w == 0) continue;
    total.add(w);
    bool ok = true;
    for (auto [v, cfg] : ev.targets) {
      auto es = m.h.incident_edges(v);
      int idx = cfg_index((mask >> es[0]) & 1, (mask >> es[1]) & 1, (mask >> es[2]) & 1);
      if (idx != cfg) { ok = false; break; }
    }
    if (ok) hit.add(w);
  }
  if (total.s <= 0) throw std::invalid_argument("zero partition function");
  return hit.s / total.s;
}

}  // namespace hexdimer
