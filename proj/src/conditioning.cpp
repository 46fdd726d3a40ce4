#include "hexdimer/conditioning.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace hexdimer {

BaseChange split_base_change(const BaseChange& T, bool config_uses_edge,
                             bool dimer_present) {
  BaseChange s = T;
  if (!config_uses_edge && dimer_present) s.n0 = 0;
  else if (!config_uses_edge && !dimer_present) s.n1 = 0;
  else if (config_uses_edge && dimer_present) s.p0 = 0;
  else s.p1 = 0;
  return s;
}

Sig8 forced_tensor(const Sig8& r, const BaseChange& Ta, const BaseChange& Tb,
                   const BaseChange& Tc, VertexSide side, int config) {
  const double yc = r[config];
  const BaseChange* Ts[3] = {&Ta, &Tb, &Tc};
  std::array<std::array<double, 2>, 3> col;
  for (int m = 0; m < 3; ++m) {
    BaseChange T = *Ts[m];
    if (side == VertexSide::White) T = T.transpose().inverse();
    col[m] = cfg_bit(config, m) ? std::array<double, 2>{T.p0, T.p1}
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

namespace {

// effective basis on an edge after the base reduction's parity repair
BaseChange effective_basis(const HoneyTorus& h, const std::vector<EdgeBases>& per_cell,
                           const std::vector<uint8_t>& flipped, int edge) {
  const int cell = edge / 3;
  BaseChange T = per_cell[cell].of(h.edge_type(edge));
  if (!flipped.empty() && flipped[edge])
    T = BaseChange{T.n1, T.n0, T.p1, T.p0};  // swap rows
  return T;
}

// shortest edge path between two honeycomb vertices
std::vector<int> honey_path(const HoneyTorus& h, int from, int to) {
  std::vector<int> prev_edge(h.vertex_count(), -1), prev_vtx(h.vertex_count(), -1);
  std::vector<char> seen(h.vertex_count(), 0);
  std::queue<int> q;
  q.push(from);
  seen[from] = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    if (v == to) break;
    for (int e : h.incident_edges(v)) {
      const int u = h.is_black(v) ? h.edge_white(e) : h.edge_black(e);
      if (seen[u]) continue;
      seen[u] = 1;
      prev_edge[u] = e;
      prev_vtx[u] = v;
      q.push(u);
    }
  }
  if (!seen[to]) throw std::logic_error("honeycomb torus is connected; path must exist");
  std::vector<int> path;
  for (int v = to; v != from; v = prev_vtx[v]) path.push_back(prev_edge[v]);
  return path;
}

int slot_of_edge(const HoneyTorus& h, int vertex, int edge) {
  const auto inc = h.incident_edges(vertex);
  for (int m = 0; m < 3; ++m)
    if (inc[m] == edge) return m;
  throw std::logic_error("edge is not incident to the vertex");
}

}  // namespace

std::vector<ConditionVariant> build_condition_variants(
    const VertexModel& m, const ReducedModel& base,
    const std::vector<EdgeBases>& per_cell, const std::vector<ConditionSpec>& events) {
  const HoneyTorus& h = m.h;
  const size_t p = events.size();
  if (p == 0) throw std::invalid_argument("no conditioned vertices");
  {
    std::set<int> uniq;
    for (const auto& ev : events) {
      if (ev.vertex < 0 || ev.vertex >= h.vertex_count())
        throw std::invalid_argument("conditioned vertex out of range");
      if (ev.config < 0 || ev.config > 7)
        throw std::invalid_argument("configuration index out of range");
      if (!uniq.insert(ev.vertex).second)
        throw std::invalid_argument("vertex conditioned twice");
    }
  }

  // parity parts of every forced tensor, in the repaired bases
  std::vector<Sig8> odd_part(p), even_part(p);
  for (size_t t = 0; t < p; ++t) {
    const int v = events[t].vertex;
    const auto inc = h.incident_edges(v);
    const Sig8 w = forced_tensor(
        m.at(v), effective_basis(h, per_cell, base.flipped, inc[0]),
        effective_basis(h, per_cell, base.flipped, inc[1]),
        effective_basis(h, per_cell, base.flipped, inc[2]),
        h.is_black(v) ? VertexSide::Black : VertexSide::White, events[t].config);
    odd_part[t] = parity_part(w, true);
    even_part[t] = parity_part(w, false);
  }

  std::vector<ConditionVariant> variants;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    // vertices taking the even part; their count must be even so that the
    // parity defect can be repaired by row swaps along connecting paths
    if (__builtin_popcount(mask) % 2) continue;
    bool dead = false;
    for (size_t t = 0; t < p && !dead; ++t) {
      const Sig8& part = (mask >> t) & 1 ? even_part[t] : odd_part[t];
      if (max_abs(part) == 0) dead = true;
    }
    if (dead) continue;

    // extra row swaps forming paths that pair up the even-part vertices
    std::vector<uint8_t> extra(h.edge_count(), 0);
    {
      std::vector<int> evens;
      for (size_t t = 0; t < p; ++t)
        if ((mask >> t) & 1) evens.push_back(events[t].vertex);
      for (size_t i = 0; i + 1 < evens.size(); i += 2)
        for (int e : honey_path(h, evens[i], evens[i + 1])) extra[e] ^= 1;
    }

    // signatures affected by the swaps or by the conditioning itself
    std::map<int, Sig8> sig;
    for (size_t t = 0; t < p; ++t)
      sig[events[t].vertex] = (mask >> t) & 1 ? even_part[t] : odd_part[t];
    for (int e = 0; e < h.edge_count(); ++e) {
      if (!extra[e]) continue;
      for (int v : {h.edge_black(e), h.edge_white(e)}) {
        if (!sig.count(v)) {
          const int cell = v / 2;
          const TriangleWeights& tw = h.is_black(v) ? base.f.black[cell] : base.f.white[cell];
          sig[v] = triangle_signature(tw);
        }
        sig[v] = flip_digit(sig[v], slot_of_edge(h, v, e));
      }
    }

    ConditionVariant var;
    bool skip = false;
    for (const auto& [v, s] : sig) {
      if (!is_odd_support(s, 1e-9)) {
        // a zero parity part can make a whole variant vanish
        if (max_abs(s) == 0) {
          skip = true;
          break;
        }
        throw std::logic_error("parity repair failed to restore odd support");
      }
      const TriangleWeights tw = fisher_weights(s);
      if (tw.d == 0)
        throw std::domain_error(
            "conditioned gadget has zero full-occupancy entry; cannot normalize");
      var.replacements[v] = tw;
    }
    if (!skip) variants.push_back(std::move(var));
  }
  return variants;
}

double conditional_probability(const VertexModel& m, const std::vector<EdgeBases>& per_cell,
                               const std::vector<ConditionSpec>& events) {
  if (m.h.n < 2)
    throw std::invalid_argument("conditioning requires torus size n >= 2");
  const ReducedModel base = reduce_model(m, per_cell);
  const double total = partition_function(base.f).signed_sum;
  if (total == 0) throw std::domain_error("zero partition function");
  // ratio of contractions with the shared d-normalization factors cancelled
  // against the base, so large tori do not overflow
  double num = 0;
  for (const auto& var : build_condition_variants(m, base, per_cell, events)) {
    FisherTorus g = base.f;
    double d_ratio = 1;
    for (const auto& [v, w] : var.replacements) {
      TriangleWeights& slot = m.h.is_black(v) ? g.black[v / 2] : g.white[v / 2];
      d_ratio *= w.d / slot.d;
      slot = w;
    }
    num += d_ratio * partition_function(g).signed_sum;
  }
  return num / total;
}

double conditional_probability(const VertexModel& m, const EdgeBases& bases,
                               const std::vector<ConditionSpec>& events) {
  return conditional_probability(
      m, std::vector<EdgeBases>(m.h.n * m.h.n, bases), events);
}

}  // namespace hexdimer
