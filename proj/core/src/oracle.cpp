#include "morsekit/oracle.hpp"

#include <algorithm>

#include "morsekit/error.hpp"
#include "morsekit/linalg.hpp"

namespace morsekit::oracle {

namespace {

template <class Field>
linalg::FieldMatrix<Field> leading_columns(const linalg::FieldMatrix<Field>& m, std::size_t n,
                                           const Field& field) {
  linalg::FieldMatrix<Field> out(m.rows(), n, field.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(r, c);
  return out;
}

// Cycles supported on the first `a` degree-k points, as vectors in F^{m_k}.
template <class Field>
std::vector<linalg::FieldVector<Field>> prefix_cycles(const Field& field,
                                                      const linalg::FieldMatrix<Field>& d,
                                                      std::size_t a) {
  const auto kernel = linalg::kernel_basis(field, leading_columns(d, a, field));
  std::vector<linalg::FieldVector<Field>> out;
  for (std::size_t j = 0; j < kernel.cols(); ++j) {
    linalg::FieldVector<Field> v(d.cols(), field.zero());
    for (std::size_t r = 0; r < a; ++r) v[r] = kernel(r, j);
    out.push_back(std::move(v));
  }
  return out;
}

template <class Field>
RankProfile profile_with(const Field& field, const FilteredComplex& c, int k) {
  const auto d = linalg::from_integers(field, c.boundary_matrix(k));
  const auto up = linalg::from_integers(field, c.boundary_matrix(k + 1));
  const std::size_t m = d.cols();
  const std::size_t n = up.cols();

  std::vector<std::size_t> boundary_rank(n + 1, 0);
  {
    linalg::IncrementalBasis<Field> b(field, m);
    for (std::size_t j = 0; j < n; ++j) {
      b.insert(up.column(j));
      boundary_rank[j + 1] = b.rank();
    }
  }

  RankProfile out{k, Matrix<std::size_t>(m + 1, n + 1, 0)};
  for (std::size_t a = 0; a <= m; ++a) {
    linalg::IncrementalBasis<Field> span(field, m);
    for (auto& z : prefix_cycles(field, d, a)) span.insert(std::move(z));
    for (std::size_t b = 0; b <= n; ++b) {
      out.ranks(a, b) = span.rank() - boundary_rank[b];
      if (b < n) span.insert(up.column(b));
    }
  }
  return out;
}

template <class Field>
SelectorValue scan_with(const Field& field, const FilteredComplex& c, int lambda) {
  const auto d = linalg::from_integers(field, c.boundary_matrix(lambda));
  const auto up = linalg::from_integers(field, c.boundary_matrix(lambda + 1));
  const auto pts = c.points_of_degree(lambda);

  linalg::IncrementalBasis<Field> boundaries(field, d.cols());
  for (std::size_t j = 0; j < up.cols(); ++j) boundaries.insert(up.column(j));
  const std::size_t base = boundaries.rank();

  for (std::size_t t = 1; t <= pts.size(); ++t) {
    linalg::IncrementalBasis<Field> span = boundaries;
    for (auto& z : prefix_cycles(field, d, t)) span.insert(std::move(z));
    if (span.rank() > base) return {c.point(pts[t - 1]).value, pts[t - 1]};
  }
  throw Error(ErrorCode::InternalInconsistency,
              "no sublevel surjects onto H_" + std::to_string(lambda));
}

}  // namespace

HomologyGroup homology(const FilteredComplex& c, const Coefficients& coeff, int k) {
  const std::size_t m = c.points_of_degree(k).size();
  const IntMatrix d = c.boundary_matrix(k);
  const IntMatrix up = c.boundary_matrix(k + 1);
  HomologyGroup out;
  if (coeff.is_field()) {
    out.rank = m - rank_over(d, coeff) - rank_over(up, coeff);
    return out;
  }
  const auto here = smith_normal_form(d);
  const auto above = smith_normal_form(up);
  out.rank = m - here.rank() - above.rank();
  for (const Integer& x : above.diagonal())
    if (x > 1) out.torsion.push_back(x);
  return out;
}

RankProfile rank_profile(const FilteredComplex& c, const Coefficients& field, int k) {
  return visit_field(field, [&](const auto& f) { return profile_with(f, c, k); });
}

std::vector<Pair> pairs_by_rank(const FilteredComplex& c, const Coefficients& field) {
  std::vector<Pair> out;
  if (c.empty()) return out;
  for (int k = c.min_degree(); k < c.max_degree(); ++k) {
    const RankProfile prof = rank_profile(c, field, k);
    const auto lowers = c.points_of_degree(k);
    const auto uppers = c.points_of_degree(k + 1);
    const auto& r = prof.ranks;
    for (std::size_t i = 1; i <= lowers.size(); ++i)
      for (std::size_t j = 1; j <= uppers.size(); ++j) {
        const long mu = static_cast<long>(r(i, j - 1)) - static_cast<long>(r(i - 1, j - 1)) -
                        static_cast<long>(r(i, j)) + static_cast<long>(r(i - 1, j));
        if (mu < 0 || mu > 1)
          throw Error(ErrorCode::InternalInconsistency, "inclusion-exclusion multiplicity " +
                                                            std::to_string(mu));
        if (mu == 1) out.push_back({uppers[j - 1], lowers[i - 1]});
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointId> free_by_rank(const FilteredComplex& c, const Coefficients& field) {
  std::vector<bool> coupled(c.size(), false);
  for (const Pair& p : pairs_by_rank(c, field)) coupled[p.upper] = coupled[p.lower] = true;
  std::vector<PointId> out;
  for (PointId i = 0; i < c.size(); ++i)
    if (!coupled[i]) out.push_back(i);
  return out;
}

SelectorValue minmax_scan_field(const FilteredComplex& c, const Coefficients& field) {
  const int lambda = global_index(c);
  return visit_field(field, [&](const auto& f) { return scan_with(f, c, lambda); });
}

}  // namespace morsekit::oracle
