#include <doctest.h>

#include "morsekit/barannikov.hpp"
#include "morsekit/error.hpp"
#include "morsekit/gen.hpp"
#include "morsekit/oracle.hpp"

using namespace morsekit;

namespace {

std::vector<Pair> pairs_named(const FilteredComplex& c,
                              std::initializer_list<std::pair<const char*, const char*>> names) {
  std::vector<Pair> out;
  for (const auto& [u, l] : names) out.push_back({c.id_of(u), c.id_of(l)});
  std::sort(out.begin(), out.end());
  return out;
}

const Coefficients kQ = Coefficients::rationals();
const Coefficients kF2 = Coefficients::prime_field(2);

}  // namespace

TEST_CASE("five-point fixture over F2 and Q") {
  const auto c = fixture("laudenbach");

  const auto f2 = reduce(c, kF2);
  CHECK(f2.pairs == pairs_named(c, {{"xi1_n", "xi1_nm1"}, {"xi1_np1", "xi2_n"}}));
  CHECK(f2.free == std::vector<PointId>{c.id_of("xi3_n")});
  CHECK(verify_normal_form(c, f2));

  const auto q = reduce(c, kQ);
  CHECK(q.pairs == pairs_named(c, {{"xi1_n", "xi1_nm1"}, {"xi1_np1", "xi3_n"}}));
  CHECK(q.free == std::vector<PointId>{c.id_of("xi2_n")});
  CHECK(verify_normal_form(c, q));
  CHECK(q.is_free(c.id_of("xi2_n")));
  CHECK(q.partner(c.id_of("xi3_n")) == c.id_of("xi1_np1"));
  CHECK_FALSE(q.partner(c.id_of("xi2_n")).has_value());

  for (const auto& coeff : {Coefficients::prime_field(3), Coefficients::prime_field(5)})
    CHECK(reduce(c, coeff).free == q.free);
}

TEST_CASE("normal form matrices") {
  const auto c = fixture("laudenbach");
  const auto q = reduce(c, kQ);
  REQUIRE(q.basis.size() == c.boundary_matrices().size());
  // Every basis matrix is upper triangular with nonzero diagonal.
  for (const auto& p : q.basis)
    for (std::size_t r = 0; r < p.rows(); ++r) {
      CHECK(p(r, r) != 0);
      for (std::size_t col = 0; col < r; ++col) CHECK(p(r, col) == 0);
    }
  // Exactly one unit per pair in B.
  std::size_t units = 0;
  for (const auto& b : q.normal)
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t col = 0; col < b.cols(); ++col) {
        if (b(r, col) == 0) continue;
        CHECK(b(r, col) == 1);
        ++units;
      }
  CHECK(units == q.pairs.size());

  // A tampered form is rejected.
  auto broken = q;
  broken.free = {c.id_of("xi3_n")};
  CHECK_FALSE(verify_normal_form(c, broken));
  auto wrong_basis = q;
  wrong_basis.basis[2](0, 1) += 1;
  CHECK_FALSE(verify_normal_form(c, wrong_basis));
}

TEST_CASE("non-unit pivot absorbed by the upper basis vector") {
  // ∂x = 2a over Q: the pair needs P column for x scaled by 1/2.
  const auto c = parse_complex("ambient 2\npoint a 0 0\npoint x 1 1\npoint y 2 5\n");
  const auto c2 = FilteredComplex(2, {{"a", 0, 0}, {"x", 1, 1}, {"y", 2, 5}},
                                  std::vector<BoundaryEntry>{{1, 0, 2}});
  const auto form = reduce(c2, kQ);
  CHECK(form.pairs.size() == 1);
  CHECK(verify_normal_form(c2, form));
  CHECK(form.basis[1](0, 0) == Rational(1, 2));
  CHECK(form.normal[1](0, 0) == 1);
  CHECK(reduce(c, kQ).free.size() == 3);
}

TEST_CASE("integral reduction") {
  SUBCASE("five-point fixture is obstructed") {
    const auto c = fixture("laudenbach");
    const auto r = reduce_integer(c);
    REQUIRE_FALSE(r.certified());
    CHECK(r.obstruction().column == c.id_of("xi1_np1"));
    CHECK(r.obstruction().pivot == -2);
  }
  SUBCASE("f0 is certified") {
    const auto c = fixture("f0");
    const auto r = reduce_integer(c);
    REQUIRE(r.certified());
    CHECK(r.form().free == std::vector<PointId>{c.id_of("xi2_n")});
    CHECK(r.form().coefficients == Coefficients::integers());
    CHECK(verify_normal_form(c, r.form()));
    for (const auto& p : r.form().basis)
      for (std::size_t i = 0; i < p.rows(); ++i) CHECK(abs(p(i, i)) == 1);
  }
  SUBCASE("single point") {
    const auto c = fixture("single:2:7:4");
    const auto r = reduce_integer(c);
    REQUIRE(r.certified());
    CHECK(r.form().free.size() == 1);
  }
}

TEST_CASE("reduce rejects integers and invalid input") {
  CHECK_THROWS_AS(reduce(fixture("f0"), Coefficients::integers()), Error);
  const auto bad = parse_complex(
      "ambient 3\npoint a 0 0\npoint b 1 1\npoint c 2 2\nboundary b : 1*a\nboundary c : 1*b\n");
  CHECK_THROWS_AS(reduce(bad, kQ), Error);
}

TEST_CASE("betti numbers") {
  const auto c = fixture("laudenbach");
  CHECK(betti(c, kQ, 2) == 1);
  CHECK(betti(c, kQ, 1) == 0);
  CHECK(betti(c, kQ, 0) == 0);
  CHECK(betti(c, kF2, 2) == 1);
  const auto window = restrict_window(c, Rational(1, 2), Rational(7, 2));
  CHECK(betti(window, kQ, 2) == 3);
  CHECK(betti(FilteredComplex(4, {}), kQ, 1) == 0);
}

TEST_CASE("single point and empty complex") {
  const auto c = FilteredComplex(3, {{"x", 1, 0}});
  const auto form = reduce(c, kQ);
  CHECK(form.pairs.empty());
  CHECK(form.free == std::vector<PointId>{0});
  const auto empty = reduce(FilteredComplex(2, {}), kF2);
  CHECK(empty.free.empty());
  CHECK(empty.pairs.empty());
}

TEST_CASE("random complexes: designed pairing is recovered and matches rank oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = random_complex(seed, random_shape(seed, 20));
    const auto& c = g.complex;
    CAPTURE(seed);
    const auto form = reduce(c, kQ);
    REQUIRE(form.free.size() == 1);
    CHECK(c.point(form.free[0]).name == g.free_point);
    CHECK(form.pairs.size() == g.pairs.size());
    for (const auto& [u, l] : g.pairs) CHECK(form.partner(c.id_of(u)) == c.id_of(l));
    for (const auto& f : {kQ, kF2, Coefficients::prime_field(3)}) {
      const auto ff = reduce(c, f);
      CHECK(verify_normal_form(c, ff));
      CHECK(ff.pairs == oracle::pairs_by_rank(c, f));
    }
    // Conjugated normal forms always admit a unimodular reduction.
    CHECK(reduce_integer(c).certified());
  }
}
