#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morsekit/matrix.hpp"
#include "morsekit/number.hpp"

namespace morsekit {

/// Index of a critical point in FilteredComplex::points().
using PointId = std::size_t;

struct CriticalPoint {
  std::string name;
  int degree = 0;
  Rational value;

  friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

/// One coefficient of ∂(source) = Σ coeff · target.
struct BoundaryEntry {
  PointId source;
  PointId target;
  Integer coeff;
};

/// Filtered Morse complex: critical points with exact critical values and
/// an integer boundary operator lowering degree by one.
///
/// Points are stored in canonical order (degree, value, name). The index of
/// a point within its degree ("rank" of ξ_ℓ^k) is derived from value order
/// and is never stored separately. Construction only enforces structural
/// well-formedness (unique names, adjacent degrees, nonzero coefficients);
/// the filtration invariants are checked by validate().
class FilteredComplex {
 public:
  struct Term {
    PointId target;
    Integer coeff;
  };

  FilteredComplex() = default;

  /// `entries` refers to indices of `points` as given. Throws
  /// Error(DuplicatePoint) on repeated names, Error(InvalidCoefficient) on
  /// zero or repeated terms, and Error(DimensionMismatch) when a term does
  /// not lower degree by exactly one.
  FilteredComplex(int ambient_dim, std::vector<CriticalPoint> points,
                  std::span<const BoundaryEntry> entries = {});

  /// Complex on `points` whose boundary in degree k is `boundaries[k]`,
  /// rows indexed by degree-(k-1) points and columns by degree-k points,
  /// both in ascending value order. Missing trailing degrees mean zero.
  static FilteredComplex from_matrices(int ambient_dim, std::vector<CriticalPoint> points,
                                       const std::vector<IntMatrix>& boundaries);

  int ambient_dim() const noexcept { return ambient_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  std::span<const CriticalPoint> points() const noexcept { return points_; }
  const CriticalPoint& point(PointId id) const { return points_.at(id); }
  std::optional<PointId> find(std::string_view name) const;
  /// Throws Error(UnknownPoint).
  PointId id_of(std::string_view name) const;

  /// Points of degree k, ascending by value. Empty for unused degrees.
  std::span<const PointId> points_of_degree(int k) const;
  /// Position of `id` within points_of_degree(point(id).degree).
  std::size_t position(PointId id) const { return position_.at(id); }
  /// Smallest and largest degree carrying points; (0, -1) when empty.
  int min_degree() const noexcept { return min_degree_; }
  int max_degree() const noexcept { return max_degree_; }

  /// Terms of ∂(id), sorted by target value.
  std::span<const Term> boundary(PointId id) const { return boundary_.at(id); }
  /// D_k: rows = degree k-1, columns = degree k.
  IntMatrix boundary_matrix(int k) const;
  /// D_0 … D_{ambient+1}, the shape expected by from_matrices().
  std::vector<IntMatrix> boundary_matrices() const;

  /// Nonzero entries of D_k linking `id` to the degree below or above.
  std::vector<PointId> incident(PointId id) const;

  friend bool operator==(const FilteredComplex& a, const FilteredComplex& b);

 private:
  int ambient_ = 0;
  std::vector<CriticalPoint> points_;
  std::vector<std::vector<Term>> boundary_;
  std::vector<std::vector<PointId>> coboundary_;
  std::map<int, std::vector<PointId>> by_degree_;
  std::vector<std::size_t> position_;
  int min_degree_ = 0;
  int max_degree_ = -1;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationCode { DuplicateValue, AscentViolation, DdNonzero, BadDegree };
enum class AdmissibilityCode { RankDefect, Torsion };

const char* to_string(ViolationCode code);
const char* to_string(AdmissibilityCode code);

struct Violation {
  ViolationCode code;
  std::string message;
};

struct AdmissibilityFinding {
  AdmissibilityCode code;
  std::string message;
};

/// `ok` covers the complex invariants only. Selector admissibility (rational
/// homology of total rank 1, torsion-free integral homology) is reported
/// separately and only evaluated when `ok` holds.
struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  bool selector_admissible = false;
  std::optional<int> global_index;
  std::vector<AdmissibilityFinding> admissibility;
};

ValidationReport validate(const FilteredComplex& c);

/// Throws Error(InvalidComplex) listing the first violation, if any.
void require_valid(const FilteredComplex& c);

/// Degree λ carrying the whole homology. Throws Error(NotAdmissible) when
/// rational homology is not one-dimensional or integral homology has
/// torsion, Error(InvalidComplex) when the complex is not valid.
int global_index(const FilteredComplex& c);

// ---------------------------------------------------------------------------
// Transformations

/// The complex of -f: degree k ↦ ambient - k, value v ↦ -v, boundary
/// matrices anti-transposed.
FilteredComplex negate(const FilteredComplex& c);

/// Relative complex of the window lo < f < hi. Throws
/// Error(EndpointCritical) if an endpoint is a critical value and
/// Error(InvalidCoefficient) unless lo < hi.
FilteredComplex restrict_window(const FilteredComplex& c, const Rational& lo,
                                const Rational& hi);

/// Per-degree basis change B_k = P_{k-1}^{-1} D_k P_k over ℤ. Each P_k must
/// be value-order upper triangular (new basis vector ℓ uses only points of
/// value ≤ value(ξ_ℓ)) with diagonal ±1. Missing trailing degrees default
/// to the identity.
FilteredComplex change_basis(const FilteredComplex& c, const std::vector<IntMatrix>& basis);

/// Same over ℚ: diagonals need only be nonzero, but the resulting boundary
/// must be integral (Error(NonIntegral) otherwise).
FilteredComplex change_basis(const FilteredComplex& c, const std::vector<RatMatrix>& basis);

// ---------------------------------------------------------------------------
// File format

FilteredComplex parse_complex(std::string_view text);
FilteredComplex parse_complex(std::istream& in);
std::string serialize(const FilteredComplex& c);

}  // namespace morsekit
