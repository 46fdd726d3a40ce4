#include "hexdimer/lattice.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace hexdimer {

int HoneyTorus::edge_black(int e) const { return 2 * (e / 3); }

int HoneyTorus::edge_white(int e) const {
  int cell = e / 3;
  int i = cell / n, j = cell % n;
  switch (edge_type(e)) {
    case EdgeType::A: return white_id(i, j);
    case EdgeType::B: return white_id((i + n - 1) % n, j);
    default: return white_id(i, (j + n - 1) % n);
  }
}

std::array<int, 3> HoneyTorus::incident_edges(int v) const {
  int cell = v / 2;
  int i = cell / n, j = cell % n;
  if (is_black(v))
    return {edge_id(i, j, EdgeType::A), edge_id(i, j, EdgeType::B),
            edge_id(i, j, EdgeType::C)};
  // white (i, j) receives the a-edge of black (i, j), the b-edge of
  // black (i+1, j) and the c-edge of black (i, j+1)
  return {edge_id(i, j, EdgeType::A), edge_id((i + 1) % n, j, EdgeType::B),
          edge_id(i, (j + 1) % n, EdgeType::C)};
}

HoneyTorus build_honey_torus(int n) {
  if (n < 1) throw std::invalid_argument("torus period must be positive");
  return HoneyTorus{n};
}

double FisherTorus::d_product() const {
  double p = 1;
  for (const auto& t : black) p *= t.d;
  for (const auto& t : white) p *= t.d;
  return p;
}

FisherTorus build_fisher_torus(const HoneyTorus& h,
                               const std::vector<TriangleWeights>& black,
                               const std::vector<TriangleWeights>& white) {
  if ((int)black.size() != h.n * h.n || (int)white.size() != h.n * h.n)
    throw std::invalid_argument("one triangle weight set per honeycomb vertex required");
  for (const auto* side : {&black, &white})
    for (const auto& t : *side)
      if (t.d == 0) throw std::invalid_argument("degenerate gadget: d entry is zero");
  return FisherTorus{h.n, black, white};
}

std::vector<FisherEdge> fisher_edges(const FisherTorus& f) {
  std::vector<FisherEdge> es;
  int n = f.n;
  es.reserve(9 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const TriangleWeights& tb = f.black[i * n + j];
      const TriangleWeights& tw = f.white[i * n + j];
      // triangle edges, weights normalized by d
      es.push_back({f.vid(i, j, 1), f.vid(i, j, 2), tb.c / tb.d});
      es.push_back({f.vid(i, j, 2), f.vid(i, j, 3), tb.a / tb.d});
      es.push_back({f.vid(i, j, 3), f.vid(i, j, 1), tb.b / tb.d});
      es.push_back({f.vid(i, j, 4), f.vid(i, j, 5), tw.c / tw.d});
      es.push_back({f.vid(i, j, 5), f.vid(i, j, 6), tw.a / tw.d});
      es.push_back({f.vid(i, j, 6), f.vid(i, j, 4), tw.b / tw.d});
      // connectors
      es.push_back({f.vid(i, j, 4), f.vid(i, j, 1), 1});
      FisherEdge b{f.vid((i + n - 1) % n, j, 5), f.vid(i, j, 2), 1};
      b.in_EH = (i == 0);
      es.push_back(b);
      FisherEdge c{f.vid(i, (j + n - 1) % n, 6), f.vid(i, j, 3), 1};
      c.in_EV = (j == 0);
      es.push_back(c);
    }
  return es;
}

std::string fisher_to_json(const FisherTorus& f) {
  nlohmann::json j;
  j["n"] = f.n;
  auto& tri = j["triangles"] = nlohmann::json::array();
  for (int color = 0; color < 2; ++color)
    for (int i = 0; i < f.n; ++i)
      for (int jj = 0; jj < f.n; ++jj) {
        const TriangleWeights& t =
            color == 0 ? f.black[i * f.n + jj] : f.white[i * f.n + jj];
        tri.push_back({{"i", i},
                       {"j", jj},
                       {"color", color == 0 ? "black" : "white"},
                       {"a", t.a},
                       {"b", t.b},
                       {"c", t.c},
                       {"d", t.d}});
      }
  return j.dump(2);
}

FisherTorus fisher_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  if (n < 1) throw std::invalid_argument("torus period must be positive");
  std::vector<TriangleWeights> black(n * n), white(n * n);
  std::vector<bool> seen(2 * n * n, false);
  for (const auto& t : j.at("triangles")) {
    int i = t.at("i").get<int>(), jj = t.at("j").get<int>();
    if (i < 0 || i >= n || jj < 0 || jj >= n)
      throw std::invalid_argument("triangle cell out of range");
    std::string color = t.at("color").get<std::string>();
    TriangleWeights w{t.at("a").get<double>(), t.at("b").get<double>(),
                      t.at("c").get<double>(),
                      t.contains("d") ? t.at("d").get<double>() : 1.0};
    int slot = i * n + jj + (color == "white" ? n * n : 0);
    if (color == "black") black[i * n + jj] = w;
    else if (color == "white") white[i * n + jj] = w;
    else throw std::invalid_argument("triangle color must be black or white");
    seen[slot] = true;
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("missing triangle weight entry");
  return build_fisher_torus(build_honey_torus(n), black, white);
}

}  // namespace hexdimer
