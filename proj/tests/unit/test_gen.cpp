#include <doctest.h>

#include "morsekit/barannikov.hpp"
#include "morsekit/error.hpp"
#include "morsekit/gen.hpp"
#include "morsekit/oracle.hpp"
#include "morsekit/selector.hpp"

using namespace morsekit;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("fixtures are valid") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = fixture(name);
    CHECK(validate(c).ok);
    CHECK(FixtureName::parse(name).to_string() == name);
  }
  const auto laud = fixture("laudenbach");
  CHECK(laud.size() == 5);
  CHECK(global_index(laud) == 2);
  CHECK(validate(fixture("f0")).selector_admissible);
  CHECK(fixture("capitanio_vprime").points_of_degree(3).empty());
  CHECK(validate(fixture("capitanio_vprime")).ok);
}

TEST_CASE("single-point fixture names") {
  const auto s = fixture("single:2:7:4");
  CHECK(s.size() == 1);
  CHECK(global_index(s) == 2);
  CHECK(minmax(s, Coefficients::rationals()).value == 7);
  CHECK(fixture("single:0:-5/3:1").point(0).value == Rational(-5, 3));
  CHECK(FixtureName::parse("single:1:5/2:3").to_string() == "single:1:5/2:3");

  for (const char* bad : {"nope", "single:2:7", "single:5:0:4", "single:a:0:4", "single:1:0:0"})
    CHECK(error_of([&] { FixtureName::parse(bad); }) == ErrorCode::UnknownFixture);
}

TEST_CASE("pair counts") {
  CHECK(pair_counts({2, {{1, 1}, {2, 2}}, 2}) == std::vector<std::size_t>{0, 0, 1, 0});
  CHECK(pair_counts({4, {{0, 1}, {1, 2}, {2, 3}, {3, 1}}, 2}) ==
        std::vector<std::size_t>{0, 1, 1, 1, 0, 0});
  // Euler characteristic 0 cannot leave exactly one free point.
  CHECK(error_of([] { pair_counts({4, {{1, 2}, {2, 3}, {3, 1}}, 2}); }) == ErrorCode::InfeasibleSizes);
  CHECK(error_of([] { pair_counts({2, {{1, 1}}, 0}); }) == ErrorCode::InfeasibleSizes);
  CHECK(error_of([] { pair_counts({2, {{3, 1}}, 1}); }) == ErrorCode::InfeasibleSizes);
  CHECK(error_of([] { pair_counts({2, {{1, 1}}, 5}); }) == ErrorCode::InfeasibleSizes);
}

TEST_CASE("random complexes honour their design") {
  SUBCASE("one pair and a free point") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = random_complex(seed, {2, {{1, 1}, {2, 2}}, 2});
      const auto form = reduce(g.complex, Coefficients::rationals());
      REQUIRE(form.free.size() == 1);
      CHECK(g.complex.point(form.free[0]).name == g.free_point);
      CHECK(g.complex.point(form.free[0]).degree == 2);
    }
  }
  SUBCASE("mixed degrees") {
    const auto g = random_complex(7, {4, {{0, 1}, {1, 2}, {2, 3}, {3, 1}}, 2});
    const auto& c = g.complex;
    CHECK(validate(c).ok);
    CHECK(validate(c).selector_admissible);
    for (int k = 0; k <= 4; ++k)
      CHECK(betti(c, Coefficients::rationals(), k) ==
            oracle::homology(c, Coefficients::rationals(), k).rank);
    CHECK(g.pairs.size() == 3);
  }
  SUBCASE("determinism") {
    const ComplexShape shape{3, {{0, 2}, {1, 4}, {2, 2}, {3, 1}}, 1};
    CHECK(serialize(random_complex(11, shape).complex) == serialize(random_complex(11, shape).complex));
    CHECK(serialize(random_complex(11, shape).complex) != serialize(random_complex(12, shape).complex));
    CHECK(random_shape(5, 30).sizes == random_shape(5, 30).sizes);
  }
}

TEST_CASE("random shapes are feasible and bounded") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto shape = random_shape(seed, 40);
    CAPTURE(seed);
    CHECK(shape.total() <= 40);
    CHECK(shape.total() >= 1);
    CHECK_NOTHROW(pair_counts(shape));
  }
}

TEST_CASE("random unimodular basis is value-order unitriangular") {
  const auto c = fixture("laudenbach");
  const auto basis = random_unimodular_basis(c, 3);
  for (const auto& p : basis)
    for (std::size_t i = 0; i < p.rows(); ++i) {
      CHECK(abs(p(i, i)) == 1);
      for (std::size_t j = 0; j < i; ++j) CHECK(p(i, j) == 0);
      for (std::size_t j = i + 1; j < p.cols(); ++j) CHECK(abs(p(i, j)) <= 3);
    }
  const auto moved = change_basis(c, basis);
  CHECK(validate(moved).ok);
  CHECK(reduce(moved, Coefficients::rationals()).pairs == reduce(c, Coefficients::rationals()).pairs);
}

TEST_CASE("rearranged values keep the chain complex") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto c = random_complex(seed, random_shape(seed, 20)).complex;
    const auto r = rearrange_values(c, seed);
    CHECK(validate(r).ok);
    CHECK(validate(r).selector_admissible);
    for (const auto& p : c.points()) CHECK(r.find(p.name).has_value());
    std::vector<Rational> before, after;
    for (const auto& p : c.points()) before.push_back(p.value);
    for (const auto& p : r.points()) after.push_back(p.value);
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(before == after);
  }
}

TEST_CASE("value perturbation") {
  const auto laud = fixture("laudenbach");
  CHECK(minimum_gap(laud) == 1);
  CHECK_FALSE(minimum_gap(fixture("single:1:0:2")).has_value());

  const auto moved = perturb_values(laud, Rational(1, 4), 9);
  CHECK(validate(moved).ok);
  CHECK(abs(Rational(minmax_int(laud).value - minmax_int(moved).value)) <= Rational(1, 4));
  CHECK(abs(Rational(maxmin_int(laud).value - maxmin_int(moved).value)) <= Rational(1, 4));
  for (PointId p = 0; p < laud.size(); ++p) {
    CHECK(moved.point(p).name == laud.point(p).name);
    CHECK(abs(Rational(moved.point(p).value - laud.point(p).value)) <= Rational(1, 4));
  }

  CHECK(perturb_values(laud, 0, 3) == laud);
  CHECK(error_of([&] { perturb_values(laud, Rational(1, 2), 1); }) == ErrorCode::EpsilonTooLarge);
  CHECK(error_of([&] { perturb_values(laud, -1, 1); }) == ErrorCode::EpsilonTooLarge);
  CHECK(perturb_values(laud, Rational(1, 3), 4) == perturb_values(laud, Rational(1, 3), 4));
}
