#include "morsekit/barannikov.hpp"

#include <algorithm>
#include <set>
#include <type_traits>

#include "morsekit/error.hpp"
#include "morsekit/linalg.hpp"

namespace morsekit {

namespace {

template <class Ring>
using RingMatrix = linalg::FieldMatrix<Ring>;

template <class Ring>
struct DegreeSweep {
  RingMatrix<Ring> reduced;                      // R = D·V
  RingMatrix<Ring> ops;                          // V, unit upper triangular
  std::vector<std::optional<std::size_t>> low;   // pivot row per column
};

struct SweepFailure {
  std::size_t column;
  Integer pivot;
};

template <class Ring>
std::optional<std::size_t> lowest_nonzero(const Ring& ring, const RingMatrix<Ring>& m,
                                          std::size_t col) {
  for (std::size_t r = m.rows(); r-- > 0;)
    if (!ring.is_zero(m(r, col))) return r;
  return std::nullopt;
}

Integer to_integer(const IntegerRing&, const Integer& v) { return v; }
template <class Ring>
Integer to_integer(const Ring& ring, const typename Ring::Element& v) {
  return ring.to_rational(v).get_num();
}

// Columns in ascending value order; each column's highest-value pivot is
// cancelled against the earlier column owning that row until it is new or
// the column vanishes.
template <class Ring>
std::variant<DegreeSweep<Ring>, SweepFailure> sweep(const Ring& ring, const IntMatrix& d) {
  DegreeSweep<Ring> s{linalg::from_integers(ring, d),
                      RingMatrix<Ring>::identity(d.cols(), ring.one()),
                      std::vector<std::optional<std::size_t>>(d.cols())};
  std::vector<std::optional<std::size_t>> owner(d.rows());

  for (std::size_t j = 0; j < d.cols(); ++j) {
    auto low = lowest_nonzero(ring, s.reduced, j);
    while (low && owner[*low]) {
      const std::size_t i = *owner[*low];
      const auto factor = ring.mul(s.reduced(*low, j), ring.inverse(s.reduced(*low, i)));
      for (std::size_t r = 0; r < d.rows(); ++r)
        s.reduced(r, j) = ring.sub(s.reduced(r, j), ring.mul(factor, s.reduced(r, i)));
      for (std::size_t r = 0; r < d.cols(); ++r)
        s.ops(r, j) = ring.sub(s.ops(r, j), ring.mul(factor, s.ops(r, i)));
      low = lowest_nonzero(ring, s.reduced, j);
    }
    if (!low) continue;
    if (!ring.invertible(s.reduced(*low, j))) return SweepFailure{j, to_integer(ring, s.reduced(*low, j))};
    owner[*low] = j;
    s.low[j] = low;
  }
  return s;
}

template <class Ring>
std::variant<CanonicalForm, IntegerObstruction> reduce_with(const Ring& ring,
                                                            const FilteredComplex& c) {
  require_valid(c);
  const auto dmats = c.boundary_matrices();
  const std::size_t degrees = dmats.size();

  std::vector<DegreeSweep<Ring>> sweeps;
  sweeps.reserve(degrees);
  for (std::size_t k = 0; k < degrees; ++k) {
    auto result = sweep(ring, dmats[k]);
    if (auto* failure = std::get_if<SweepFailure>(&result))
      return IntegerObstruction{c.points_of_degree(static_cast<int>(k))[failure->column],
                                failure->pivot};
    sweeps.push_back(std::move(std::get<DegreeSweep<Ring>>(result)));
  }

  std::vector<RingMatrix<Ring>> basis;
  for (const auto& s : sweeps) basis.push_back(s.ops);

  CanonicalForm form;
  form.coefficients = ring.coefficients();
  for (std::size_t k = 1; k < degrees; ++k) {
    const auto& s = sweeps[k];
    const auto uppers = c.points_of_degree(static_cast<int>(k));
    const auto lowers = c.points_of_degree(static_cast<int>(k) - 1);
    for (std::size_t l = 0; l < s.reduced.cols(); ++l) {
      if (!s.low[l]) continue;
      const std::size_t m = *s.low[l];
      const auto scale = ring.inverse(s.reduced(m, l));
      // Lower basis vector: the reduced boundary itself, scaled to unit pivot.
      for (std::size_t r = 0; r < s.reduced.rows(); ++r)
        basis[k - 1](r, m) = ring.mul(s.reduced(r, l), scale);
      // Upper basis vector absorbs the same scalar so that ∂Ξ_upper = Ξ_lower.
      for (std::size_t r = 0; r < s.ops.rows(); ++r)
        basis[k](r, l) = ring.mul(s.ops(r, l), scale);
      form.pairs.push_back({uppers[l], lowers[m]});
    }
  }
  std::sort(form.pairs.begin(), form.pairs.end());

  std::vector<bool> coupled(c.size(), false);
  for (const Pair& p : form.pairs) coupled[p.upper] = coupled[p.lower] = true;
  for (PointId i = 0; i < c.size(); ++i)
    if (!coupled[i]) form.free.push_back(i);

  for (std::size_t k = 0; k < degrees; ++k) {
    const auto d = linalg::from_integers(ring, dmats[k]);
    RingMatrix<Ring> b =
        k == 0 ? linalg::multiply(ring, d, basis[k])
               : linalg::multiply(ring,
                                  linalg::upper_triangular_inverse(ring, basis[k - 1]),
                                  linalg::multiply(ring, d, basis[k]));
    form.normal.push_back(linalg::to_rational(ring, b));
  }
  for (const auto& p : basis) form.basis.push_back(linalg::to_rational(ring, p));
  return form;
}

template <class Ring>
RingMatrix<Ring> from_rational(const Ring& ring, const RatMatrix& m, bool& ok) {
  RingMatrix<Ring> out(m.rows(), m.cols(), ring.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if constexpr (std::is_same_v<Ring, RationalField>) {
        out(r, c) = m(r, c);
      } else {
        if (m(r, c).get_den() != 1) ok = false;
        out(r, c) = ring.from_integer(m(r, c).get_num());
      }
    }
  return out;
}

template <class Ring>
bool verify_with(const Ring& ring, const FilteredComplex& c, const CanonicalForm& form) {
  const auto dmats = c.boundary_matrices();
  const std::size_t degrees = dmats.size();
  if (form.basis.size() != degrees || form.normal.size() != degrees) return false;

  // Partition and descent.
  std::vector<int> role(c.size(), 0);
  for (const Pair& p : form.pairs) {
    if (p.upper >= c.size() || p.lower >= c.size()) return false;
    if (role[p.upper]++ || role[p.lower]++) return false;
    if (c.point(p.upper).degree != c.point(p.lower).degree + 1) return false;
    if (!(c.point(p.upper).value > c.point(p.lower).value)) return false;
  }
  for (PointId f : form.free) {
    if (f >= c.size() || role[f]++) return false;
  }
  if (std::find(role.begin(), role.end(), 0) != role.end()) return false;

  bool ok = true;
  std::vector<RingMatrix<Ring>> basis;
  for (std::size_t k = 0; k < degrees; ++k) {
    const std::size_t m = c.points_of_degree(static_cast<int>(k)).size();
    auto p = from_rational(ring, form.basis[k], ok);
    if (!ok || p.rows() != m || p.cols() != m) return false;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t col = 0; col < r; ++col)
        if (!ring.is_zero(p(r, col))) return false;
      if (!ring.invertible(p(r, r))) return false;
    }
    basis.push_back(std::move(p));
  }

  std::set<Pair> expected(form.pairs.begin(), form.pairs.end());
  for (std::size_t k = 0; k < degrees; ++k) {
    auto b = from_rational(ring, form.normal[k], ok);
    const auto d = linalg::from_integers(ring, dmats[k]);
    if (!ok || b.rows() != d.rows() || b.cols() != d.cols()) return false;
    if (k > 0 && !linalg::equal(ring, linalg::multiply(ring, basis[k - 1], b),
                                linalg::multiply(ring, d, basis[k])))
      return false;
    if (k == 0 && !linalg::equal(ring, linalg::multiply(ring, d, basis[k]), b)) return false;
    const auto uppers = c.points_of_degree(static_cast<int>(k));
    const auto lowers = c.points_of_degree(static_cast<int>(k) - 1);
    for (std::size_t col = 0; col < b.cols(); ++col)
      for (std::size_t r = 0; r < b.rows(); ++r) {
        const bool paired = expected.count(Pair{uppers[col], lowers[r]}) > 0;
        const auto want = paired ? ring.one() : ring.zero();
        if (!ring.is_zero(ring.sub(b(r, col), want))) return false;
      }
  }
  return true;
}

}  // namespace

bool CanonicalForm::is_free(PointId id) const {
  return std::binary_search(free.begin(), free.end(), id);
}

std::optional<PointId> CanonicalForm::partner(PointId id) const {
  for (const Pair& p : pairs) {
    if (p.upper == id) return p.lower;
    if (p.lower == id) return p.upper;
  }
  return std::nullopt;
}

std::vector<PointId> CanonicalForm::free_of_degree(const FilteredComplex& c, int k) const {
  std::vector<PointId> out;
  for (PointId f : free)
    if (c.point(f).degree == k) out.push_back(f);
  return out;
}

CanonicalForm reduce(const FilteredComplex& c, const Coefficients& field) {
  return visit_field(field, [&](const auto& f) {
    return std::get<CanonicalForm>(reduce_with(f, c));
  });
}

IntegerReductionOutcome reduce_integer(const FilteredComplex& c) {
  auto result = reduce_with(IntegerRing{}, c);
  if (auto* form = std::get_if<CanonicalForm>(&result))
    return IntegerReductionOutcome(std::move(*form));
  return IntegerReductionOutcome(std::get<IntegerObstruction>(result));
}

std::size_t betti(const FilteredComplex& c, const Coefficients& field, int k) {
  return reduce(c, field).free_of_degree(c, k).size();
}

bool verify_normal_form(const FilteredComplex& c, const CanonicalForm& form) {
  switch (form.coefficients.kind()) {
    case Coefficients::Kind::Integers:
      return verify_with(IntegerRing{}, c, form);
    case Coefficients::Kind::Rationals:
      return verify_with(RationalField{}, c, form);
    case Coefficients::Kind::PrimeField:
      return verify_with(PrimeField{form.coefficients.characteristic()}, c, form);
  }
  return false;
}

}  // namespace morsekit
