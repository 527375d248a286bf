#include "morsekit/selector.hpp"

#include "morsekit/barannikov.hpp"
#include "morsekit/error.hpp"

namespace morsekit {

SelectorValue minmax_field(const FilteredComplex& c, const Coefficients& field) {
  const int lambda = global_index(c);
  const CanonicalForm form = reduce(c, field);
  if (form.free.size() != 1 || c.point(form.free.front()).degree != lambda)
    throw Error(ErrorCode::InternalInconsistency,
                "expected exactly one free point in degree " + std::to_string(lambda) +
                    " over " + field.display_name() + ", found " +
                    std::to_string(form.free.size()) + " free points");
  const PointId p = form.free.front();
  return {c.point(p).value, p};
}

SelectorValue maxmin_field(const FilteredComplex& c, const Coefficients& field) {
  const FilteredComplex dual = negate(c);
  const SelectorValue dual_min = minmax_field(dual, field);
  SelectorValue out{Rational(-dual_min.value), c.id_of(dual.point(dual_min.point).name)};
  const SelectorValue direct = minmax_field(c, field);
  if (!(direct == out))
    throw Error(ErrorCode::InternalInconsistency,
                "maxmin over " + field.display_name() + " (" + to_string(out.value) +
                    ") differs from minmax (" + to_string(direct.value) + ")");
  return out;
}

std::vector<Integer> homology_generator_functional(const FilteredComplex& c, int degree) {
  const IntMatrix d = c.boundary_matrix(degree);
  const IntMatrix above = c.boundary_matrix(degree + 1);
  const std::size_t m = d.cols();

  // Cycle coordinates: x ↦ (V·x)[r..], with the last m - r columns of V⁻¹
  // as the cycle lattice basis.
  const SmithDecomposition cycles = smith_normal_form(d);
  const std::size_t r = cycles.rank();
  const std::size_t z = m - r;
  IntMatrix boundary_coords(z, above.cols());
  for (std::size_t i = 0; i < z; ++i)
    for (std::size_t j = 0; j < above.cols(); ++j)
      for (std::size_t k = 0; k < m; ++k) boundary_coords(i, j) += cycles.V(r + i, k) * above(k, j);

  // Quotient ℤ^z / im(boundaries) ≅ ℤ: its free coordinate is row r' of U'⁻¹.
  const SmithDecomposition quotient = smith_normal_form(boundary_coords);
  const std::size_t rq = quotient.rank();
  bool unit = true;
  for (const Integer& dq : quotient.diagonal()) unit = unit && dq == 1;
  if (z != rq + 1 || !unit)
    throw Error(ErrorCode::NotAdmissible, "H_" + std::to_string(degree) + "(Z) is not Z");

  std::vector<Integer> w(m, 0);
  for (std::size_t i = 0; i < z; ++i) {
    const Integer& coeff = quotient.U_inverse(rq, i);
    if (coeff == 0) continue;
    for (std::size_t k = 0; k < m; ++k) w[k] += coeff * cycles.V(r + i, k);
  }
  return w;
}

SelectorValue minmax_int(const FilteredComplex& c) {
  const int lambda = global_index(c);
  const auto w = homology_generator_functional(c, lambda);
  const IntMatrix d = c.boundary_matrix(lambda);
  const IntMatrix above = c.boundary_matrix(lambda + 1);
  const auto pts = c.points_of_degree(lambda);

  // The image of H_λ(sublevel) only changes when a degree-λ point enters.
  for (std::size_t t = 1; t <= pts.size(); ++t) {
    IntMatrix prefix(d.rows(), t);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t j = 0; j < t; ++j) prefix(r, j) = d(r, j);
    const IntMatrix kernel = integer_kernel(prefix);
    IntMatrix cycles(pts.size(), kernel.cols());
    for (std::size_t r = 0; r < t; ++r)
      for (std::size_t j = 0; j < kernel.cols(); ++j) cycles(r, j) = kernel(r, j);
    if (image_index(cycles, w, above) == 1) return {c.point(pts[t - 1]).value, pts[t - 1]};
  }
  throw Error(ErrorCode::InternalInconsistency,
              "no sublevel carries a generator of H_" + std::to_string(lambda) + "(Z)");
}

SelectorValue maxmin_int(const FilteredComplex& c) {
  const FilteredComplex dual = negate(c);
  const SelectorValue v = minmax_int(dual);
  return {Rational(-v.value), c.id_of(dual.point(v.point).name)};
}

SelectorValue minmax(const FilteredComplex& c, const Coefficients& coeff) {
  return coeff.is_field() ? minmax_field(c, coeff) : minmax_int(c);
}

SelectorValue maxmin(const FilteredComplex& c, const Coefficients& coeff) {
  return coeff.is_field() ? maxmin_field(c, coeff) : maxmin_int(c);
}

const SelectorEntry* SelectorReport::find(const Coefficients& coeff) const {
  for (const auto& e : entries)
    if (e.coefficients == coeff) return &e;
  return nullptr;
}

SelectorReport selector_report(const FilteredComplex& c, std::span<const Coefficients> coeffs) {
  const Coefficients z = Coefficients::integers();
  SelectorReport report{{}, {z, minmax_int(c), maxmin_int(c)}};
  for (const Coefficients& coeff : coeffs) {
    if (coeff == z) {
      report.entries.push_back(report.integers);
      continue;
    }
    report.entries.push_back({coeff, minmax_field(c, coeff), maxmin_field(c, coeff)});
  }

  const SelectorEntry& zi = report.integers;
  report.int_equal = zi.equal();
  report.chain_ok = zi.maxmin.value <= zi.minmax.value;
  for (const auto& e : report.entries) {
    if (!e.coefficients.is_field()) continue;
    report.field_equal = report.field_equal && e.equal();
    report.chain_ok = report.chain_ok && zi.maxmin.value <= e.maxmin.value && e.equal() &&
                      e.minmax.value <= zi.minmax.value;
    if (report.int_equal)
      report.int_forces_fields = report.int_forces_fields && e.minmax.value == zi.minmax.value &&
                         e.maxmin.value == zi.minmax.value;
  }
  return report;
}

bool capitanio_criterion(const FilteredComplex& c, PointId p) {
  if (p >= c.size()) throw Error(ErrorCode::UnknownPoint, "point index out of range");
  const Rational& fp = c.point(p).value;
  for (PointId eta : c.incident(p)) {
    const Rational& fe = c.point(eta).value;
    const Rational gap = abs(Rational(fp - fe));
    bool closer = false;
    for (PointId other : c.incident(eta))
      if (other != p && abs(Rational(c.point(other).value - fe)) < gap) closer = true;
    if (!closer) return false;
  }
  return true;
}

bool capitanio_criterion(const FilteredComplex& c, std::string_view name) {
  return capitanio_criterion(c, c.id_of(name));
}

}  // namespace morsekit
