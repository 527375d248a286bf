#include <doctest.h>

#include "brute.hpp"
#include "morsekit/barannikov.hpp"
#include "morsekit/error.hpp"
#include "morsekit/gen.hpp"
#include "morsekit/selector.hpp"

using namespace morsekit;

namespace {

const Coefficients kZ = Coefficients::integers();
const Coefficients kQ = Coefficients::rationals();
const Coefficients kF2 = Coefficients::prime_field(2);
const Coefficients kF3 = Coefficients::prime_field(3);
const Coefficients kF5 = Coefficients::prime_field(5);

std::string at(const FilteredComplex& c, const SelectorValue& v) {
  return to_string(v.value) + "@" + c.point(v.point).name;
}

// Small random complexes, half of them with values shuffled so that the
// integral selectors can split.
std::vector<FilteredComplex> small_corpus(std::size_t n, std::size_t max_points) {
  std::vector<FilteredComplex> out;
  for (std::uint64_t seed = 0; out.size() < n; ++seed) {
    auto c = random_complex(seed, random_shape(seed, max_points)).complex;
    out.push_back(seed % 2 ? rearrange_values(c, seed, 32) : c);
  }
  return out;
}

}  // namespace

TEST_CASE("five-point fixture selector table") {
  const auto c = fixture("laudenbach");
  CHECK(at(c, minmax_int(c)) == "3@xi3_n");
  CHECK(at(c, maxmin_int(c)) == "2@xi2_n");
  CHECK(at(c, minmax_field(c, kF2)) == "3@xi3_n");
  CHECK(at(c, maxmin_field(c, kF2)) == "3@xi3_n");
  for (const auto& f : {kF3, kF5, kQ}) {
    CHECK(at(c, minmax_field(c, f)) == "2@xi2_n");
    CHECK(at(c, maxmin_field(c, f)) == "2@xi2_n");
  }

  const std::vector<Coefficients> order{kZ, kF2, kF3, kQ};
  const auto report = selector_report(c, order);
  REQUIRE(report.entries.size() == 4);
  CHECK(report.entries[0].coefficients == kZ);
  CHECK_FALSE(report.entries[0].equal());
  CHECK(report.entries[1].minmax.value == 3);
  CHECK(report.entries[2].minmax.value == 2);
  CHECK(report.entries[3].maxmin.value == 2);
  CHECK(report.chain_ok);
  CHECK_FALSE(report.int_equal);
  CHECK(report.field_equal);
  CHECK(report.int_forces_fields);
  CHECK(report.find(kF3) == &report.entries[2]);
  CHECK(report.find(kF5) == nullptr);
}

TEST_CASE("f0 has equal integral selectors") {
  const auto c = fixture("f0");
  CHECK(at(c, minmax_int(c)) == "2@xi2_n");
  CHECK(at(c, maxmin_int(c)) == "2@xi2_n");
  const std::vector<Coefficients> all{kZ, kQ, kF2};
  const auto report = selector_report(c, all);
  CHECK(report.int_equal);
  for (const auto& e : report.entries) {
    CHECK(e.minmax.value == 2);
    CHECK(e.maxmin.value == 2);
  }
}

TEST_CASE("single point selectors") {
  const auto c = fixture("single:2:7:4");
  for (const auto& coeff : {kZ, kQ, kF2, kF5}) {
    CHECK(minmax(c, coeff).value == 7);
    CHECK(maxmin(c, coeff).value == 7);
  }
  const std::vector<Coefficients> all{kZ, kQ, kF3};
  const auto report = selector_report(c, all);
  CHECK(report.field_equal);
  CHECK(report.int_equal);
  CHECK(report.chain_ok);
  CHECK(report.int_forces_fields);
}

TEST_CASE("selectors need an admissible complex") {
  const FilteredComplex two(3, {{"a", 1, 0}, {"b", 1, 1}});
  CHECK_THROWS_AS(minmax_int(two), Error);
  CHECK_THROWS_AS(minmax_field(two, kQ), Error);
}

TEST_CASE("homology generator functional") {
  const auto c = fixture("laudenbach");
  const auto w = homology_generator_functional(c, 2);
  REQUIRE(w.size() == 3);
  // The functional annihilates boundaries and takes ±1 on a generator.
  const IntMatrix up = c.boundary_matrix(3);
  Integer on_boundary = 0;
  for (std::size_t i = 0; i < 3; ++i) on_boundary += w[i] * up(i, 0);
  CHECK(on_boundary == 0);
  // Cycle xi1_n + xi3_n is a generator; 2 xi1_n + xi2_n is twice one.
  CHECK(abs(Integer(w[0] + w[2])) == 1);
  CHECK(abs(Integer(2 * w[0] + w[1])) == 2);
}

TEST_CASE("incidence criterion") {
  const auto vp = fixture("capitanio_vprime");
  CHECK(capitanio_criterion(vp, "xi2_n"));
  CHECK(capitanio_criterion(vp, "xi3_n"));
  CHECK_FALSE(capitanio_criterion(vp, "xi1_n"));
  CHECK(reduce(vp, kQ).free == std::vector<PointId>{vp.id_of("xi3_n")});
  CHECK_THROWS_AS(capitanio_criterion(vp, "nope"), Error);
  CHECK_THROWS_AS(capitanio_criterion(vp, PointId{99}), Error);
}

TEST_CASE("selectors agree with the lattice and rank oracles") {
  std::size_t split = 0;
  for (const auto& c : small_corpus(120, 9)) {
    CAPTURE(serialize(c));
    CHECK(minmax_int(c).value == brute::minmax(c, 0, true));
    CHECK(maxmin_int(c).value == brute::maxmin(c, 0, true));
    for (std::uint64_t p : {0, 2, 3, 5}) {
      const Coefficients f = p ? Coefficients::prime_field(p) : kQ;
      CHECK(minmax_field(c, f).value == brute::minmax(c, p, false));
      CHECK(maxmin_field(c, f).value == brute::maxmin(c, p, false));
    }
    split += minmax_int(c).value != maxmin_int(c).value;
  }
  // The shuffled half must actually exercise the integral split.
  CHECK(split > 0);
  MESSAGE("complexes with split integral selectors: " << split);
}

TEST_CASE("inequality chain and integral equality on random complexes") {
  for (const auto& c : small_corpus(150, 25)) {
    const std::vector<Coefficients> all{kZ, kQ, kF2, kF3, kF5};
    const auto report = selector_report(c, all);
    CHECK(report.chain_ok);
    CHECK(report.field_equal);
    CHECK(report.int_forces_fields);
    const auto r = reduce_integer(c);
    if (r.certified()) {
      const auto free = r.form().free;
      REQUIRE(free.size() == 1);
      CHECK(report.integers.minmax.value == c.point(free[0]).value);
      CHECK(report.integers.maxmin.value == c.point(free[0]).value);
    }
  }
}
