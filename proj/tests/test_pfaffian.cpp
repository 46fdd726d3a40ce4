#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hexdimer/oracle.hpp"
#include "hexdimer/pfaffian.hpp"
#include "hexdimer/reduction.hpp"
#include "hexdimer/signature.hpp"

using namespace hexdimer;

namespace {

double determinant(SkewMatrix A) {
  double det = 1.0;
  const int n = A.n;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(A.at(i, k)) > std::fabs(A.at(piv, k))) piv = i;
    if (A.at(piv, k) == 0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A.a[piv * n + j], A.a[k * n + j]);
      det = -det;
    }
    det *= A.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = A.at(i, k) / A.at(k, k);
      for (int j = k; j < n; ++j) A.at(i, j) -= f * A.at(k, j);
    }
  }
  return det;
}

FisherTorus random_torus(int n, std::mt19937& rng, double lo = 0.3, double hi = 2.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  HoneyTorus h = build_honey_torus(n);
  std::vector<TriangleWeights> B, W;
  for (int c = 0; c < n * n; ++c) {
    B.push_back({U(rng), U(rng), U(rng), U(rng)});
    W.push_back({U(rng), U(rng), U(rng), U(rng)});
  }
  return build_fisher_torus(h, B, W);
}

double matching_sum(const FisherTorus& f) {
  WeightedGraph g;
  g.vertices = f.vertex_count();
  for (const auto& e : fisher_edges(f)) g.edges.push_back({e.u, e.v, e.w});
  return enumerate_matchings(g);
}

}  // namespace

TEST_CASE("small Pfaffians in closed form") {
  SkewMatrix A2(2);
  A2.add_edge(0, 1, 3.25);
  CHECK(pfaffian(A2) == doctest::Approx(3.25));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-2, 2);
  SkewMatrix A4(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) A4.add_edge(i, j, U(rng));
  const double expect = A4.at(0, 1) * A4.at(2, 3) - A4.at(0, 2) * A4.at(1, 3) +
                        A4.at(0, 3) * A4.at(1, 2);
  CHECK(pfaffian(A4) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("Pfaffian squared equals the determinant") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int t = 0; t < 5; ++t) {
    SkewMatrix A(8);
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) A.add_edge(i, j, U(rng));
    const double pf = pfaffian(A);
    CHECK(pf * pf == doctest::Approx(determinant(A)).epsilon(1e-9));
  }
}

TEST_CASE("input validation") {
  SkewMatrix odd(3);
  CHECK_THROWS_AS(pfaffian(odd), std::invalid_argument);
  SkewMatrix bad(2);
  bad.at(0, 1) = 1;
  bad.at(1, 0) = 1;  // not skew
  CHECK_THROWS_AS(pfaffian(bad), std::invalid_argument);
  // a structurally singular matrix gives exactly zero, not noise
  SkewMatrix sing(4);
  sing.add_edge(0, 1, 1.0);  // vertices 2, 3 isolated
  CHECK(pfaffian(sing) == 0.0);
}

TEST_CASE("four-sector partition function: symmetric-model anchors") {
  constexpr double kPi = 3.14159265358979323846;
  BaseChange R = BaseChange::rotation(3 * kPi / 4);
  Sig8 u = one_two_signature(1, 1, 1);
  TriangleWeights tb = fisher_weights(apply_base_change(u, R, R, R, VertexSide::Black));
  TriangleWeights tw = fisher_weights(apply_base_change(u, R, R, R, VertexSide::White));

  HoneyTorus h1 = build_honey_torus(1);
  FisherTorus f1 = build_fisher_torus(h1, {tb}, {tw});
  PartitionResult r1 = partition_function(f1);
  CHECK(r1.Z == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(std::fabs(r1.sectorPf[0]) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  for (int s : {1, 2, 3})
    CHECK(std::fabs(r1.sectorPf[s]) == doctest::Approx(10.0 / 9.0).epsilon(1e-10));
  CHECK(contraction_value(f1) == doctest::Approx(6.0).epsilon(1e-10));

  HoneyTorus h2 = build_honey_torus(2);
  FisherTorus f2 = build_fisher_torus(h2, std::vector<TriangleWeights>(4, tb),
                                      std::vector<TriangleWeights>(4, tw));
  CHECK(contraction_value(f2) == doctest::Approx(450.0).epsilon(1e-9));

  // asymmetric instance
  Sig8 crit = one_two_signature(4, 1, 1);
  auto bases = solve_base_change_1x1(crit, crit);
  REQUIRE(bases.has_value());
  ReducedModel red =
      reduce_model_uniform(VertexModel::uniform(1, crit), *bases);
  CHECK(contraction_value(red.f) == doctest::Approx(36.0).epsilon(1e-9));
}

TEST_CASE("signed sector combination matches brute-force matching sums") {
  std::mt19937 rng(13);
  for (int t = 0; t < 4; ++t)
    for (int n : {1, 2}) {
      FisherTorus f = random_torus(n, rng);
      CHECK(partition_function(f).signed_sum ==
            doctest::Approx(matching_sum(f)).epsilon(1e-9));
    }
}

TEST_CASE("edge probabilities") {
  std::mt19937 rng(21);
  FisherTorus f = random_torus(2, rng);
  CHECK(edge_probabilities(f, {}) == 1.0);

  // each gadget vertex is covered by exactly one incident dimer
  auto edges = fisher_edges(f);
  const int v = f.vid(0, 1, 4);
  double cover = 0;
  for (const auto& e : edges)
    if (e.u == v || e.v == v) cover += edge_probabilities(f, {{e.u, e.v}});
  CHECK(cover == doctest::Approx(1.0).epsilon(1e-9));

  // against restricted matching enumeration
  const double total = matching_sum(f);
  for (int k : {0, 5, 17}) {
    const auto& e = edges[k];
    // delete the two endpoints and relabel the remaining vertices
    std::vector<int> relabel(f.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < f.vertex_count(); ++v)
      if (v != e.u && v != e.v) relabel[v] = next++;
    WeightedGraph g;
    g.vertices = next;
    for (const auto& e2 : fisher_edges(f))
      if (relabel[e2.u] >= 0 && relabel[e2.v] >= 0)
        g.edges.push_back({relabel[e2.u], relabel[e2.v], e2.w});
    const double expect = e.w * enumerate_matchings(g) / total;
    CHECK(edge_probabilities(f, {{e.u, e.v}}) == doctest::Approx(expect).epsilon(1e-9));
  }

  CHECK_THROWS(edge_probabilities(f, {{0, 1}, {1, 2}}));  // shared endpoint
}

TEST_CASE("conditioned partition replaces triangle weights") {
  std::mt19937 rng(27);
  FisherTorus f = random_torus(2, rng);
  // replacing with the same weights changes nothing
  CHECK(conditioned_partition(f, {{3, f.white[1]}}) ==
        doctest::Approx(contraction_value(f)).epsilon(1e-12));
  // replacing one black triangle equals rebuilding the torus
  TriangleWeights nw{0.9, 1.4, 0.3, 2.2};
  FisherTorus g = f;
  g.black[2] = nw;
  CHECK(conditioned_partition(f, {{4, nw}}) ==
        doctest::Approx(contraction_value(g)).epsilon(1e-12));
  CHECK_THROWS(conditioned_partition(f, {{99, nw}}));
  CHECK_THROWS(conditioned_partition(f, {{0, TriangleWeights{1, 1, 1, 0}}}));
}
