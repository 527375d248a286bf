#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morsekit/complex.hpp"

namespace morsekit {

/// Named fixtures. `single:<degree>:<value>:<ambient>` builds a one-point
/// complex; the others are the fixed five-point complexes.
enum class FixtureKind { Laudenbach, F0, CapitanioV, CapitanioVPrime, Single };

struct FixtureName {
  FixtureKind kind = FixtureKind::Laudenbach;
  int degree = 0;
  Rational value;
  int ambient = 0;

  static FixtureName parse(std::string_view text);
  std::string to_string() const;
};

std::vector<std::string> fixture_names();

FilteredComplex fixture(const FixtureName& name);
FilteredComplex fixture(std::string_view name);

/// Point counts per degree plus the degree that keeps the free point.
struct ComplexShape {
  int ambient = 1;
  std::map<int, std::size_t> sizes;
  int free_degree = 0;

  std::size_t total() const;
};

/// Pairs needed between degrees k-1 and k (index k); throws
/// Error(InfeasibleSizes) when no perfect matching leaves exactly one free
/// point in free_degree.
std::vector<std::size_t> pair_counts(const ComplexShape& shape);

struct GeneratedComplex {
  FilteredComplex complex;
  std::string free_point;
  std::vector<std::pair<std::string, std::string>> pairs;  // (upper, lower)
};

/// Normal form first, then conjugation by random value-order triangular
/// unimodular matrices with entries in [-3, 3]. Deterministic in
/// (seed, shape).
GeneratedComplex random_complex(std::uint64_t seed, const ComplexShape& shape);

/// A feasible shape with at most max_points points (at least one).
ComplexShape random_shape(std::uint64_t seed, std::size_t max_points, int max_ambient = 6);

/// Random value-order unit-triangular integer basis change per degree.
std::vector<IntMatrix> random_unimodular_basis(const FilteredComplex& c, std::uint64_t seed,
                                               int max_entry = 3);

/// Permutes critical values within degrees where this keeps the complex
/// valid. The chain complex is unchanged, so homology and admissibility are
/// preserved, but the filtration (and hence pairing) generally is not.
FilteredComplex rearrange_values(const FilteredComplex& c, std::uint64_t seed,
                                 std::size_t attempts = 16);

/// Shifts each value by an independent seeded rational in [-eps, eps].
/// Throws Error(EpsilonTooLarge) unless 0 ≤ eps < min gap / 2.
FilteredComplex perturb_values(const FilteredComplex& c, const Rational& eps,
                               std::uint64_t seed);

/// Smallest distance between two critical values, or nullopt for < 2 points.
std::optional<Rational> minimum_gap(const FilteredComplex& c);

}  // namespace morsekit
