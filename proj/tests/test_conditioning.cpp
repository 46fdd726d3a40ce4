#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hexdimer/conditioning.hpp"
#include "hexdimer/oracle.hpp"

using namespace hexdimer;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kRt2 = std::sqrt(2.0);

EdgeBases rotation_bases(double angle) {
  BaseChange R = BaseChange::rotation(angle);
  return EdgeBases{R, R, R};
}
}  // namespace

TEST_CASE("base-change restriction keeps exactly one column entry") {
  BaseChange T{2, 3, 5, 7};
  // configuration does not use the edge: the n column is restricted
  BaseChange s1 = split_base_change(T, false, true);
  CHECK(s1.n0 == 0);
  CHECK(s1.n1 == 3);
  CHECK(s1.p0 == 5);  // p column untouched
  BaseChange s2 = split_base_change(T, false, false);
  CHECK(s2.n0 == 2);
  CHECK(s2.n1 == 0);
  // configuration uses the edge: the p column is restricted
  BaseChange s3 = split_base_change(T, true, true);
  CHECK(s3.p0 == 0);
  CHECK(s3.p1 == 7);
  BaseChange s4 = split_base_change(T, true, false);
  CHECK(s4.p0 == 5);
  CHECK(s4.p1 == 0);
}

TEST_CASE("forced tensor is rank one and parity parts partition it") {
  Sig8 r = one_two_signature(1.4, 0.8, 1.1);
  BaseChange R = BaseChange::rotation(3 * kPi / 4);
  Sig8 f = forced_tensor(r, R, R, R, VertexSide::Black, parse_cfg("011"));
  Sig8 odd = parity_part(f, true), even = parity_part(f, false);
  for (int s = 0; s < 8; ++s) CHECK(odd[s] + even[s] == doctest::Approx(f[s]));
  for (int s : {1, 2, 4, 7}) CHECK(even[s] == 0);
  for (int s : {0, 3, 5, 6}) CHECK(odd[s] == 0);
  // rank-one: entries factor over digits
  CHECK(f[0] * f[3] == doctest::Approx(f[1] * f[2]).epsilon(1e-10));
  CHECK(f[0] * f[5] == doctest::Approx(f[1] * f[4]).epsilon(1e-10));
}

TEST_CASE("variant construction for a single conditioned vertex") {
  VertexModel m = VertexModel::uniform(2, one_two_signature(1, 1, 1));
  EdgeBases bases = rotation_bases(3 * kPi / 4);
  std::vector<EdgeBases> per_cell(4, bases);
  ReducedModel base = reduce_model(m, per_cell);

  auto vars = build_condition_variants(
      m, base, per_cell, {{m.h.black_id(0, 0), parse_cfg("001")}});
  REQUIRE(vars.size() == 1);  // one vertex: only the odd part survives
  REQUIRE(vars[0].replacements.size() == 1);
  const TriangleWeights& t = vars[0].replacements.at(m.h.black_id(0, 0));
  CHECK(t.a == doctest::Approx(kRt2 / 4).epsilon(1e-12));
  CHECK(t.b == doctest::Approx(kRt2 / 4).epsilon(1e-12));
  CHECK(t.c == doctest::Approx(-kRt2 / 4).epsilon(1e-12));
  CHECK(t.d == doctest::Approx(-kRt2 / 4).epsilon(1e-12));

  // two conditioned vertices: odd-odd and even-even parity assignments
  auto vars2 = build_condition_variants(
      m, base, per_cell,
      {{m.h.black_id(0, 0), parse_cfg("100")}, {m.h.white_id(0, 0), parse_cfg("100")}});
  CHECK(vars2.size() == 2);
}

TEST_CASE("conditional probabilities match the enumeration oracle") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> U(0.3, 1.8);
  for (int t = 0; t < 6; ++t) {
    Sig8 r = t % 2 ? one_two_signature(U(rng) + 1.2, U(rng), U(rng))
                   : ising_signature(U(rng) - 1.0, U(rng) - 1.0, U(rng) - 1.0);
    auto bases = solve_base_change_1x1(r, r);
    REQUIRE(bases.has_value());
    VertexModel m = VertexModel::uniform(2, r);
    const int v = m.h.black_id(1, 0);
    for (int cfg : {1, 3, 6}) {
      const double expect = enumerate_conditional(m, ConditionEvent{{{v, cfg}}});
      CHECK(conditional_probability(m, *bases, {{v, cfg}}) ==
            doctest::Approx(expect).epsilon(1e-8));
    }
    // joint event on the two endpoints of an a-edge
    const int w = m.h.white_id(1, 0);
    const double expect2 =
        enumerate_conditional(m, ConditionEvent{{{v, 4}, {w, 4}}});
    CHECK(conditional_probability(m, *bases, {{v, 4}, {w, 4}}) ==
          doctest::Approx(expect2).epsilon(1e-8));
  }
}

TEST_CASE("single-vertex conditionals sum to one") {
  VertexModel m = VertexModel::uniform(2, one_two_signature(4, 1, 1));
  auto bases = solve_base_change_1x1(m.at(0), m.at(0));
  REQUIRE(bases.has_value());
  double sum = 0;
  for (int cfg = 0; cfg < 8; ++cfg) {
    Sig8 f = forced_tensor(m.at(0), bases->Ta, bases->Tb, bases->Tc,
                           VertexSide::Black, cfg);
    if (max_abs(f) == 0) continue;  // zero-weight configurations contribute 0
    sum += conditional_probability(m, *bases, {{m.h.black_id(0, 1), cfg}});
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("result is independent of the chosen valid bases") {
  VertexModel m = VertexModel::uniform(2, one_two_signature(1, 1, 1));
  EdgeBases rot = rotation_bases(3 * kPi / 4);
  auto solved = solve_base_change_1x1(m.at(0), m.at(0));
  REQUIRE(solved.has_value());
  for (int cfg : {2, 5}) {
    const double p1 = conditional_probability(m, rot, {{m.h.white_id(0, 1), cfg}});
    const double p2 = conditional_probability(m, *solved, {{m.h.white_id(0, 1), cfg}});
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-9));
    CHECK(p1 == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  }
}

TEST_CASE("input validation") {
  VertexModel m1 = VertexModel::uniform(1, one_two_signature(1, 1, 1));
  auto bases = rotation_bases(3 * kPi / 4);
  CHECK_THROWS_AS(conditional_probability(m1, bases, {{0, 1}}),
                  std::invalid_argument);
  VertexModel m2 = VertexModel::uniform(2, one_two_signature(1, 1, 1));
  CHECK_THROWS_AS(conditional_probability(m2, bases, {}), std::invalid_argument);
  CHECK_THROWS_AS(conditional_probability(m2, bases, {{0, 9}}), std::invalid_argument);
  CHECK_THROWS_AS(conditional_probability(m2, bases, {{0, 1}, {0, 2}}),
                  std::invalid_argument);
}
