#pragma once

// Brute-force recomputations that share no code path with the column
// reduction: ranks of sublevel inclusion maps, Smith-form homology and
// direct surjectivity scans.

#include <cstddef>
#include <vector>

#include "morsekit/barannikov.hpp"
#include "morsekit/coeff.hpp"
#include "morsekit/complex.hpp"
#include "morsekit/selector.hpp"

namespace morsekit::oracle {

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1 (ℤ only)

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

HomologyGroup homology(const FilteredComplex& c, const Coefficients& coeff, int k);

/// rank(a, b) = rank of H_k(K_a) → H_k(K_b), where K_t is the sublevel
/// spanned by the first t points of degree k (for a) and k+1 (for b).
/// Rows a = 0..m_k, columns b = 0..m_{k+1}; the last entry is the Betti
/// number.
struct RankProfile {
  int degree = 0;
  Matrix<std::size_t> ranks;
};

RankProfile rank_profile(const FilteredComplex& c, const Coefficients& field, int k);

/// The persistence pairing recovered by inclusion-exclusion of inclusion ranks.
std::vector<Pair> pairs_by_rank(const FilteredComplex& c, const Coefficients& field);

/// Points not in pairs_by_rank.
std::vector<PointId> free_by_rank(const FilteredComplex& c, const Coefficients& field);

/// Smallest critical value whose sublevel cycles surject onto H_λ over the field.
SelectorValue minmax_scan_field(const FilteredComplex& c, const Coefficients& field);

}  // namespace morsekit::oracle
