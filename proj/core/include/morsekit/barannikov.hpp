#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "morsekit/coeff.hpp"
#include "morsekit/complex.hpp"
#include "morsekit/matrix.hpp"

namespace morsekit {

/// Coupled critical points: ∂Ξ(upper) = Ξ(lower) in the normal form.
struct Pair {
  PointId upper;
  PointId lower;

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Barannikov canonical form of a filtered complex.
///
/// basis[k] is P_k (columns are the new basis vectors Ξ_ℓ^k in the old
/// basis, ascending value order) and normal[k] is B_k = P_{k-1}^{-1} D_k P_k.
/// Entries are exact rationals; over F_p they hold canonical residues in
/// [0, p). Over a field, free points and lower members of pairs get unit
/// diagonal in P; the upper member of a pair absorbs the scalar that makes
/// its B entry exactly 1.
struct CanonicalForm {
  Coefficients coefficients = Coefficients::rationals();
  std::vector<Pair> pairs;    // sorted
  std::vector<PointId> free;  // sorted
  std::vector<RatMatrix> basis;
  std::vector<RatMatrix> normal;

  bool is_free(PointId id) const;
  std::optional<PointId> partner(PointId id) const;
  std::vector<PointId> free_of_degree(const FilteredComplex& c, int k) const;
};

/// Field reduction: ascending-value column sweep per degree, cancelling the
/// highest-value pivot against the earlier column owning it. Throws
/// Error(UnsupportedCoefficients) over ℤ and Error(InvalidComplex) when c
/// fails validation.
CanonicalForm reduce(const FilteredComplex& c, const Coefficients& field);

/// First surviving pivot that is not ±1 during the greedy integer sweep.
struct IntegerObstruction {
  PointId column;
  Integer pivot;
};

/// Certified carries an integral CanonicalForm with ±1 diagonals. Obstructed
/// only says the greedy sweep failed; it does not rule out some other
/// unimodular normal form.
class IntegerReductionOutcome {
 public:
  explicit IntegerReductionOutcome(CanonicalForm form) : state_(std::move(form)) {}
  explicit IntegerReductionOutcome(IntegerObstruction why) : state_(std::move(why)) {}

  bool certified() const noexcept { return std::holds_alternative<CanonicalForm>(state_); }
  const CanonicalForm& form() const { return std::get<CanonicalForm>(state_); }
  const IntegerObstruction& obstruction() const { return std::get<IntegerObstruction>(state_); }

 private:
  std::variant<CanonicalForm, IntegerObstruction> state_;
};

IntegerReductionOutcome reduce_integer(const FilteredComplex& c);

/// Number of free points of degree k over the field.
std::size_t betti(const FilteredComplex& c, const Coefficients& field, int k);

/// Exact re-check of every CanonicalForm invariant against c: triangular
/// invertible P, P_{k-1}·B_k = D_k·P_k, one unit per pair column and row,
/// descending pairs, and pairs ∪ free partitioning the points.
bool verify_normal_form(const FilteredComplex& c, const CanonicalForm& form);

}  // namespace morsekit
