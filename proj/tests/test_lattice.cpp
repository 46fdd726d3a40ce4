#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hexdimer/lattice.hpp"

using namespace hexdimer;

TEST_CASE("honeycomb torus counts and ids") {
  for (int n : {1, 2, 3, 5}) {
    HoneyTorus h = build_honey_torus(n);
    CHECK(h.vertex_count() == 2 * n * n);
    CHECK(h.edge_count() == 3 * n * n);
    std::set<int> blacks, whites;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        blacks.insert(h.black_id(i, j));
        whites.insert(h.white_id(i, j));
        CHECK(h.is_black(h.black_id(i, j)));
        CHECK(!h.is_black(h.white_id(i, j)));
        CHECK(h.cell_i(h.black_id(i, j)) == i);
        CHECK(h.cell_j(h.white_id(i, j)) == j);
      }
    CHECK((int)blacks.size() == n * n);
    CHECK((int)whites.size() == n * n);
  }
}

TEST_CASE("edge endpoints and incidence are mutually consistent") {
  HoneyTorus h = build_honey_torus(3);
  for (int e = 0; e < h.edge_count(); ++e) {
    const int b = h.edge_black(e), w = h.edge_white(e);
    CHECK(h.is_black(b));
    CHECK(!h.is_black(w));
    const int slot = static_cast<int>(h.edge_type(e));
    CHECK(h.incident_edges(b)[slot] == e);
    CHECK(h.incident_edges(w)[slot] == e);
  }
  // every vertex has exactly one incident edge of each type
  for (int v = 0; v < h.vertex_count(); ++v) {
    auto inc = h.incident_edges(v);
    std::set<int> uniq(inc.begin(), inc.end());
    CHECK(uniq.size() == 3);
    for (int m = 0; m < 3; ++m)
      CHECK(static_cast<int>(h.edge_type(inc[m])) == m);
  }
}

TEST_CASE("black-white adjacency pattern") {
  HoneyTorus h = build_honey_torus(2);
  // black (i, j) meets white (i, j) on a, white (i-1, j) on b, white (i, j-1) on c
  const int b = h.black_id(1, 1);
  auto inc = h.incident_edges(b);
  CHECK(h.edge_white(inc[0]) == h.white_id(1, 1));
  CHECK(h.edge_white(inc[1]) == h.white_id(0, 1));
  CHECK(h.edge_white(inc[2]) == h.white_id(1, 0));
}

TEST_CASE("gadget torus structure and winding edge classification") {
  for (int n : {1, 2, 3}) {
    HoneyTorus h = build_honey_torus(n);
    std::vector<TriangleWeights> tw(n * n, TriangleWeights{0.5, 0.7, 0.9, 1.1});
    FisherTorus f = build_fisher_torus(h, tw, tw);
    CHECK(f.vertex_count() == 6 * n * n);
    auto edges = fisher_edges(f);
    CHECK((int)edges.size() == 9 * n * n);
    int eh = 0, ev = 0;
    for (const auto& e : edges) {
      CHECK(e.u != e.v);
      CHECK(e.u >= 0);
      CHECK(e.v < f.vertex_count());
      if (e.in_EH) ++eh;
      if (e.in_EV) ++ev;
      CHECK(!(e.in_EH && e.in_EV));
    }
    CHECK(eh == n);  // one winding b-connector per row
    CHECK(ev == n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 1; l <= 6; ++l) {
          const int v = f.vid(i, j, l);
          CHECK(f.label(v) == l);
          CHECK(f.cell_i(v) == i);
          CHECK(f.cell_j(v) == j);
        }
  }
}

TEST_CASE("triangle edge weights are normalized by the full-occupancy entry") {
  HoneyTorus h = build_honey_torus(1);
  FisherTorus f = build_fisher_torus(h, {TriangleWeights{3, 5, 7, 2}},
                                    {TriangleWeights{1, 1, 1, 4}});
  double got_a = 0;
  for (const auto& e : fisher_edges(f))
    if ((f.label(e.u) == 2 && f.label(e.v) == 3) || (f.label(e.u) == 3 && f.label(e.v) == 2))
      got_a = e.w;
  CHECK(got_a == doctest::Approx(3.0 / 2.0).epsilon(1e-15));
  CHECK(f.d_product() == doctest::Approx(8.0));
}

TEST_CASE("zero full-occupancy entry is rejected") {
  HoneyTorus h = build_honey_torus(1);
  CHECK_THROWS_AS(build_fisher_torus(h, {TriangleWeights{1, 1, 1, 0}},
                                     {TriangleWeights{1, 1, 1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("JSON round trip preserves the torus") {
  HoneyTorus h = build_honey_torus(2);
  std::vector<TriangleWeights> B, W;
  for (int c = 0; c < 4; ++c) {
    B.push_back({1.0 + c, 2.0 + c, 3.0 + c, 1.5});
    W.push_back({0.5 + c, 0.25 + c, 4.0 + c, -2.0});
  }
  FisherTorus f = build_fisher_torus(h, B, W);
  FisherTorus g = fisher_from_json(fisher_to_json(f));
  CHECK(g.n == f.n);
  for (int c = 0; c < 4; ++c) {
    CHECK(g.black[c].a == f.black[c].a);
    CHECK(g.black[c].d == f.black[c].d);
    CHECK(g.white[c].b == f.white[c].b);
    CHECK(g.white[c].c == f.white[c].c);
  }
}
