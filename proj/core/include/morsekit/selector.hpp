#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "morsekit/coeff.hpp"
#include "morsekit/complex.hpp"

namespace morsekit {

/// A selector value together with the critical point realizing it.
struct SelectorValue {
  Rational value;
  PointId point;

  friend bool operator==(const SelectorValue&, const SelectorValue&) = default;
};

/// Minmax over a field: the value of the unique free point (in degree λ).
SelectorValue minmax_field(const FilteredComplex& c, const Coefficients& field);
/// Maxmin over a field, computed as -minmax(-f). Throws
/// Error(InternalInconsistency) if it differs from minmax_field.
SelectorValue maxmin_field(const FilteredComplex& c, const Coefficients& field);

/// Minmax over ℤ: the first critical value whose sublevel cycles map onto a
/// generator of H_λ(ℤ) ≅ ℤ.
SelectorValue minmax_int(const FilteredComplex& c);
SelectorValue maxmin_int(const FilteredComplex& c);

/// Dispatches on the coefficient system.
SelectorValue minmax(const FilteredComplex& c, const Coefficients& coeff);
SelectorValue maxmin(const FilteredComplex& c, const Coefficients& coeff);

/// Functional w on degree-λ chains with Z_λ → ℤ onto and kernel B_λ.
std::vector<Integer> homology_generator_functional(const FilteredComplex& c, int degree);

struct SelectorEntry {
  Coefficients coefficients;
  SelectorValue minmax;
  SelectorValue maxmin;

  bool equal() const { return minmax.value == maxmin.value; }
};

struct SelectorReport {
  std::vector<SelectorEntry> entries;  // in request order
  SelectorEntry integers;              // always computed; flags depend on it
  bool field_equal = true;             // minmax = maxmin on every requested field
  bool int_equal = true;
  bool chain_ok = true;                // maxmin(ℤ) ≤ maxmin(F) = minmax(F) ≤ minmax(ℤ)
  bool int_forces_fields = true;               // ℤ equality forces every field value

  const SelectorEntry* find(const Coefficients& coeff) const;
};

SelectorReport selector_report(const FilteredComplex& c, std::span<const Coefficients> coeffs);

/// Incidence-gap test: for every η incident to p there is ξ' ≠ p incident to
/// η with |f(ξ') - f(η)| < |f(p) - f(η)|.
bool capitanio_criterion(const FilteredComplex& c, PointId p);
bool capitanio_criterion(const FilteredComplex& c, std::string_view name);

}  // namespace morsekit
