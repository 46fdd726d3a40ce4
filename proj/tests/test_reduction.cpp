#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hexdimer/oracle.hpp"
#include "hexdimer/pfaffian.hpp"
#include "hexdimer/reduction.hpp"

using namespace hexdimer;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kRt2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("tensor base change basics") {
  Sig8 r{1, 2, 3, 4, 5, 6, 7, 8};
  // identity on all edges leaves the signature alone
  Sig8 m = apply_base_change(r, BaseChange::identity(), BaseChange::identity(),
                             BaseChange::identity(), VertexSide::Black);
  for (int s = 0; s < 8; ++s) CHECK(m[s] == doctest::Approx(r[s]));

  // swapping the role of 0/1 on every edge complements every index
  Sig8 q{0, 1, 1, 0, 1, 0, 0, 0};
  Sig8 sw = apply_base_change(q, BaseChange::swap(), BaseChange::swap(),
                              BaseChange::swap(), VertexSide::Black);
  Sig8 expect{0, 0, 0, 1, 0, 1, 1, 0};
  for (int s = 0; s < 8; ++s) CHECK(sw[s] == doctest::Approx(expect[s]));
}

TEST_CASE("black and white transforms invert each other across an edge") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  Sig8 r;
  for (double& x : r) x = U(rng);
  BaseChange Ta{U(rng) + 2, U(rng), U(rng), U(rng) + 2};
  BaseChange Tb{U(rng) + 2, U(rng), U(rng), U(rng) + 2};
  BaseChange Tc{U(rng) + 2, U(rng), U(rng), U(rng) + 2};
  // white transform with T equals black transform with (T^t)^-1, so
  // composing the black transform of T with the black transform of the
  // inverse returns the original signature
  Sig8 m = apply_base_change(r, Ta, Tb, Tc, VertexSide::Black);
  Sig8 back = apply_base_change(m, Ta.inverse(), Tb.inverse(), Tc.inverse(),
                                VertexSide::Black);
  for (int s = 0; s < 8; ++s) CHECK(back[s] == doctest::Approx(r[s]).epsilon(1e-10));
  Sig8 w = apply_base_change(r, Ta, Tb, Tc, VertexSide::White);
  Sig8 w2 = apply_base_change(r, Ta.transpose().inverse(), Tb.transpose().inverse(),
                              Tc.transpose().inverse(), VertexSide::Black);
  for (int s = 0; s < 8; ++s) CHECK(w[s] == doctest::Approx(w2[s]).epsilon(1e-10));
}

TEST_CASE("rotation by 3pi/4 turns the symmetric model into a gadget") {
  BaseChange R = BaseChange::rotation(3 * kPi / 4);
  Sig8 m = apply_base_change(one_two_signature(1, 1, 1), R, R, R, VertexSide::Black);
  Sig8 expect{0, kRt2 / 2, kRt2 / 2, 0, kRt2 / 2, 0, 0, -3 * kRt2 / 2};
  for (int s = 0; s < 8; ++s) CHECK(m[s] == doctest::Approx(expect[s]).epsilon(1e-12));
  CHECK(is_odd_support(m));
  TriangleWeights t = fisher_weights(m);
  CHECK(t.a == doctest::Approx(kRt2 / 2));
  CHECK(t.d == doctest::Approx(-3 * kRt2 / 2));
}

TEST_CASE("triangle weight extraction round trip and even-support rejection") {
  TriangleWeights t{0.4, -1.2, 2.5, 0.9};
  Sig8 s = triangle_signature(t);
  CHECK(s[cfg_index(1, 0, 0)] == t.a);
  CHECK(s[cfg_index(0, 1, 0)] == t.b);
  CHECK(s[cfg_index(0, 0, 1)] == t.c);
  CHECK(s[cfg_index(1, 1, 1)] == t.d);
  TriangleWeights back = fisher_weights(s);
  CHECK(back.b == t.b);
  Sig8 bad = s;
  bad[0] = 0.5;  // even-index entry
  CHECK_THROWS(fisher_weights(bad));
  // flipping a digit turns odd support into even support
  CHECK(is_even_support(flip_digit(s, 1)));
  CHECK(!is_odd_support(flip_digit(s, 1)));
}

TEST_CASE("gadget signature of a bare weighted triangle") {
  Gadget g;
  g.g.vertices = 3;
  g.g.edges = {{1, 2, 2.0}, {0, 2, 3.0}, {0, 1, 5.0}};  // a, b, c
  g.externals = {0, 1, 2};
  Sig8 s = matchgate_signature_of_gadget(g);
  Sig8 expect{0, 5.0, 3.0, 0, 2.0, 0, 0, 1.0};
  for (int i = 0; i < 8; ++i) CHECK(s[i] == doctest::Approx(expect[i]));
}

TEST_CASE("gadget with a pendant center vertex") {
  const double a = 1.5, b = 2.5, c = 3.5, x = 0.25, y = 0.75, z = 1.25;
  Gadget g;
  g.g.vertices = 4;
  g.g.edges = {{1, 2, a}, {0, 2, b}, {0, 1, c}, {0, 3, x}, {1, 3, y}, {2, 3, z}};
  g.externals = {0, 1, 2};
  Sig8 s = matchgate_signature_of_gadget(g);
  Sig8 expect{a * x + b * y + c * z, 0, 0, x, 0, y, z, 0};
  for (int i = 0; i < 8; ++i) CHECK(s[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  CHECK(is_even_support(s));
}

TEST_CASE("per-cell product identity: gadget weights recover the 1x1 partition") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(0.3, 1.8);
  for (int t = 0; t < 6; ++t) {
    Sig8 r = t % 2 ? one_two_signature(U(rng) + 1.2, U(rng), U(rng))
                   : ising_signature(U(rng) - 1.0, U(rng) - 1.0, U(rng) - 1.0);
    auto bases = solve_base_change_1x1(r, r);
    REQUIRE(bases.has_value());
    TriangleWeights B = fisher_weights(
        apply_base_change(r, bases->Ta, bases->Tb, bases->Tc, VertexSide::Black), 1e-6);
    TriangleWeights W = fisher_weights(
        apply_base_change(r, bases->Ta, bases->Tb, bases->Tc, VertexSide::White), 1e-6);
    const double expect = enumerate_vertex_model(VertexModel::uniform(1, r)).partition;
    CHECK(B.a * W.a + B.b * W.b + B.c * W.c + B.d * W.d ==
          doctest::Approx(expect).epsilon(1e-9));
  }
  // symmetric instance in closed form: products (1/2, 1/2, 1/2, 9/2) sum to 6
  BaseChange R = BaseChange::rotation(3 * kPi / 4);
  TriangleWeights u = fisher_weights(
      apply_base_change(one_two_signature(1, 1, 1), R, R, R, VertexSide::Black));
  TriangleWeights v = fisher_weights(
      apply_base_change(one_two_signature(1, 1, 1), R, R, R, VertexSide::White));
  CHECK(u.a * v.a == doctest::Approx(0.5));
  CHECK(u.d * v.d == doctest::Approx(4.5));
}

TEST_CASE("full reduction matches the enumeration oracle") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> U(0.3, 1.8);
  for (int t = 0; t < 8; ++t) {
    Sig8 r = t % 2 ? one_two_signature(U(rng) + 1.2, U(rng), U(rng))
                   : ising_signature(U(rng) - 1.0, U(rng) - 1.0, U(rng) - 1.0);
    auto bases = solve_base_change_1x1(r, r);
    REQUIRE(bases.has_value());
    for (int n : {1, 2}) {
      VertexModel m = VertexModel::uniform(n, r);
      ReducedModel red = reduce_model_uniform(m, *bases);
      const double expect = enumerate_vertex_model(m).partition;
      CHECK(contraction_value(red.f) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("gauge equivalence of gadget tori") {
  HoneyTorus h = build_honey_torus(2);
  std::vector<TriangleWeights> B(4, {0.8, 1.3, 0.6, 1.1});
  std::vector<TriangleWeights> W(4, {1.4, 0.9, 1.7, -2.0});
  FisherTorus f1 = build_fisher_torus(h, B, W);

  auto same = check_gauge_equivalent(f1, f1);
  CHECK(same.equivalent);
  CHECK(same.residual == doctest::Approx(0.0).epsilon(1e-12));

  // valid per-vertex multipliers: 2 at the black a-external of cell 0,
  // 1/2 at the white a-external it connects to; the triangle edges at
  // those vertices scale accordingly, the connector stays fixed
  FisherTorus f2 = f1;
  f2.black[0].b *= 2;  // edge 3->1
  f2.black[0].c *= 2;  // edge 1->2
  f2.white[0].b /= 2;  // edge 6->4
  f2.white[0].c /= 2;  // edge 4->5
  auto eq = check_gauge_equivalent(f1, f2);
  CHECK(eq.equivalent);
  CHECK(eq.residual == doctest::Approx(0.0).epsilon(1e-9));

  // a single scaled edge is not a gauge transformation
  FisherTorus f3 = f1;
  f3.black[1].a *= 2;
  auto neq = check_gauge_equivalent(f1, f3);
  CHECK(!neq.equivalent);
  CHECK(neq.residual > 1e-3);
}
