#include "morsekit/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <type_traits>

#include "morsekit/coeff.hpp"
#include "morsekit/error.hpp"

namespace morsekit {

namespace {

bool canonical_less(const CriticalPoint& a, const CriticalPoint& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.value != b.value) return a.value < b.value;
  return a.name < b.name;
}

}  // namespace

FilteredComplex::FilteredComplex(int ambient_dim, std::vector<CriticalPoint> points,
                                 std::span<const BoundaryEntry> entries)
    : ambient_(ambient_dim) {
  const std::size_t n = points.size();
  std::vector<PointId> order(n);
  std::iota(order.begin(), order.end(), PointId{0});
  std::sort(order.begin(), order.end(),
            [&](PointId a, PointId b) { return canonical_less(points[a], points[b]); });
  std::vector<PointId> remap(n);
  points_.reserve(n);
  for (PointId i = 0; i < n; ++i) {
    remap[order[i]] = i;
    points_.push_back(std::move(points[order[i]]));
  }

  std::set<std::string_view> names;
  for (const auto& p : points_)
    if (!names.insert(p.name).second)
      throw Error(ErrorCode::DuplicatePoint, "duplicate point name '" + p.name + "'");

  boundary_.assign(n, {});
  coboundary_.assign(n, {});
  for (const BoundaryEntry& e : entries) {
    if (e.source >= n || e.target >= n)
      throw Error(ErrorCode::UnknownPoint, "boundary entry refers to a missing point");
    const PointId s = remap[e.source];
    const PointId t = remap[e.target];
    if (e.coeff == 0)
      throw Error(ErrorCode::InvalidCoefficient,
                  "zero coefficient in boundary of '" + points_[s].name + "'");
    if (points_[t].degree != points_[s].degree - 1)
      throw Error(ErrorCode::DimensionMismatch, "boundary of '" + points_[s].name +
                                                    "' names '" + points_[t].name +
                                                    "', which is not one degree lower");
    for (const Term& term : boundary_[s])
      if (term.target == t)
        throw Error(ErrorCode::InvalidCoefficient, "repeated term '" + points_[t].name +
                                                       "' in boundary of '" +
                                                       points_[s].name + "'");
    boundary_[s].push_back({t, e.coeff});
    coboundary_[t].push_back(s);
  }
  for (auto& terms : boundary_)
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.target < b.target; });
  for (auto& co : coboundary_) std::sort(co.begin(), co.end());

  position_.resize(n);
  for (PointId i = 0; i < n; ++i) {
    auto& bucket = by_degree_[points_[i].degree];
    position_[i] = bucket.size();
    bucket.push_back(i);
  }
  if (!by_degree_.empty()) {
    min_degree_ = by_degree_.begin()->first;
    max_degree_ = by_degree_.rbegin()->first;
  }
}

FilteredComplex FilteredComplex::from_matrices(int ambient_dim, std::vector<CriticalPoint> points,
                                               const std::vector<IntMatrix>& boundaries) {
  // Order the points canonically first so matrix indices are meaningful.
  std::sort(points.begin(), points.end(), canonical_less);
  std::map<int, std::vector<PointId>> by_degree;
  for (PointId i = 0; i < points.size(); ++i) by_degree[points[i].degree].push_back(i);
  auto column_ids = [&](int k) -> const std::vector<PointId>& {
    static const std::vector<PointId> none;
    auto it = by_degree.find(k);
    return it == by_degree.end() ? none : it->second;
  };

  std::vector<BoundaryEntry> entries;
  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    const IntMatrix& d = boundaries[k];
    const auto& cols = column_ids(static_cast<int>(k));
    const auto& rows = column_ids(static_cast<int>(k) - 1);
    if (d.rows() != rows.size() || d.cols() != cols.size())
      throw Error(ErrorCode::DimensionMismatch,
                  "boundary matrix for degree " + std::to_string(k) + " has shape " +
                      std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                      ", expected " + std::to_string(rows.size()) + "x" +
                      std::to_string(cols.size()));
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (d(r, c) != 0) entries.push_back({cols[c], rows[r], d(r, c)});
  }
  return FilteredComplex(ambient_dim, std::move(points), entries);
}

std::optional<PointId> FilteredComplex::find(std::string_view name) const {
  for (PointId i = 0; i < points_.size(); ++i)
    if (points_[i].name == name) return i;
  return std::nullopt;
}

PointId FilteredComplex::id_of(std::string_view name) const {
  auto id = find(name);
  if (!id) throw Error(ErrorCode::UnknownPoint, "unknown point '" + std::string(name) + "'");
  return *id;
}

std::span<const PointId> FilteredComplex::points_of_degree(int k) const {
  auto it = by_degree_.find(k);
  if (it == by_degree_.end()) return {};
  return it->second;
}

IntMatrix FilteredComplex::boundary_matrix(int k) const {
  const auto cols = points_of_degree(k);
  const auto rows = points_of_degree(k - 1);
  IntMatrix d(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const Term& t : boundary_[cols[c]]) d(position_[t.target], c) = t.coeff;
  return d;
}

std::vector<IntMatrix> FilteredComplex::boundary_matrices() const {
  const int top = std::max(ambient_, max_degree_) + 1;
  std::vector<IntMatrix> out;
  for (int k = 0; k <= top; ++k) out.push_back(boundary_matrix(k));
  return out;
}

std::vector<PointId> FilteredComplex::incident(PointId id) const {
  std::vector<PointId> out;
  for (const Term& t : boundary_.at(id)) out.push_back(t.target);
  for (PointId s : coboundary_.at(id)) out.push_back(s);
  return out;
}

bool operator==(const FilteredComplex& a, const FilteredComplex& b) {
  if (a.ambient_ != b.ambient_ || a.points_ != b.points_) return false;
  for (PointId i = 0; i < a.points_.size(); ++i) {
    const auto& x = a.boundary_[i];
    const auto& y = b.boundary_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j].target != y[j].target || x[j].coeff != y[j].coeff) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::DuplicateValue: return "duplicate_value";
    case ViolationCode::AscentViolation: return "ascent_violation";
    case ViolationCode::DdNonzero: return "dd_nonzero";
    case ViolationCode::BadDegree: return "bad_degree";
  }
  return "unknown";
}

const char* to_string(AdmissibilityCode code) {
  switch (code) {
    case AdmissibilityCode::RankDefect: return "rank_defect";
    case AdmissibilityCode::Torsion: return "torsion";
  }
  return "unknown";
}

namespace {

std::vector<Violation> invariant_violations(const FilteredComplex& c) {
  std::vector<Violation> out;
  const auto pts = c.points();

  for (const auto& p : pts)
    if (p.degree < 0 || p.degree > c.ambient_dim())
      out.push_back({ViolationCode::BadDegree, "point '" + p.name + "' has degree " +
                                                   std::to_string(p.degree) +
                                                   " outside [0, " +
                                                   std::to_string(c.ambient_dim()) + "]"});

  std::vector<PointId> by_value(pts.size());
  std::iota(by_value.begin(), by_value.end(), PointId{0});
  std::sort(by_value.begin(), by_value.end(),
            [&](PointId a, PointId b) { return pts[a].value < pts[b].value; });
  for (std::size_t i = 1; i < by_value.size(); ++i) {
    const auto& a = pts[by_value[i - 1]];
    const auto& b = pts[by_value[i]];
    if (a.value == b.value)
      out.push_back({ViolationCode::DuplicateValue, "points '" + a.name + "' and '" + b.name +
                                                        "' share value " +
                                                        to_string(a.value)});
  }

  for (PointId s = 0; s < pts.size(); ++s)
    for (const auto& t : c.boundary(s))
      if (!(pts[s].value > pts[t.target].value))
        out.push_back({ViolationCode::AscentViolation,
                       "boundary of '" + pts[s].name + "' (value " + to_string(pts[s].value) +
                           ") reaches '" + pts[t.target].name + "' (value " +
                           to_string(pts[t.target].value) + ")"});

  if (!c.empty()) {
    for (int k = c.min_degree() + 2; k <= c.max_degree(); ++k) {
      const IntMatrix dd = c.boundary_matrix(k - 1) * c.boundary_matrix(k);
      if (!dd.is_zero())
        out.push_back({ViolationCode::DdNonzero,
                       "D_" + std::to_string(k - 1) + " * D_" + std::to_string(k) + " != 0"});
    }
  }
  return out;
}

}  // namespace

void require_valid(const FilteredComplex& c) {
  const auto v = invariant_violations(c);
  if (!v.empty())
    throw Error(ErrorCode::InvalidComplex, std::string(to_string(v.front().code)) + ": " +
                                               v.front().message);
}

namespace {

// Rank over ℚ and torsion per degree from the Smith forms of the boundaries.
struct AdmissibilityScan {
  std::vector<AdmissibilityFinding> findings;
  std::optional<int> index;
};

AdmissibilityScan scan_admissibility(const FilteredComplex& c) {
  AdmissibilityScan out;
  if (c.empty()) {
    out.findings.push_back({AdmissibilityCode::RankDefect, "empty complex has zero homology"});
    return out;
  }
  const int lo = c.min_degree();
  const int hi = c.max_degree();
  std::size_t total = 0;
  std::vector<int> carrying;

  std::vector<SmithDecomposition> snf;
  for (int k = lo; k <= hi + 1; ++k) snf.push_back(smith_normal_form(c.boundary_matrix(k)));
  for (int k = lo; k <= hi; ++k) {
    const auto& here = snf[static_cast<std::size_t>(k - lo)];
    const auto& above = snf[static_cast<std::size_t>(k - lo + 1)];
    const std::size_t m = c.points_of_degree(k).size();
    const std::size_t rank = m - here.rank() - above.rank();
    total += rank;
    if (rank > 0) carrying.push_back(k);
    std::vector<std::string> tors;
    for (const Integer& d : above.diagonal())
      if (d > 1) tors.push_back(to_string(d));
    if (!tors.empty()) {
      std::string msg = "H_" + std::to_string(k) + "(Z) has torsion";
      for (const auto& t : tors) msg += " Z/" + t;
      out.findings.push_back({AdmissibilityCode::Torsion, msg});
    }
  }
  if (total != 1) {
    std::string msg = "rational homology has total rank " + std::to_string(total);
    if (!carrying.empty()) {
      msg += " (degrees";
      for (int k : carrying) msg += " " + std::to_string(k);
      msg += ")";
    }
    out.findings.push_back({AdmissibilityCode::RankDefect, msg});
  }
  if (out.findings.empty()) out.index = carrying.front();
  return out;
}

}  // namespace

ValidationReport validate(const FilteredComplex& c) {
  ValidationReport report;
  report.violations = invariant_violations(c);
  report.ok = report.violations.empty();
  if (report.ok) {
    auto scan = scan_admissibility(c);
    report.admissibility = std::move(scan.findings);
    report.global_index = scan.index;
    report.selector_admissible = scan.index.has_value();
  }
  return report;
}

int global_index(const FilteredComplex& c) {
  require_valid(c);
  auto scan = scan_admissibility(c);
  if (!scan.index) {
    std::string msg = "complex is not selector-admissible:";
    for (const auto& f : scan.findings) msg += " " + f.message + ";";
    msg.pop_back();
    throw Error(ErrorCode::NotAdmissible, msg);
  }
  return *scan.index;
}

// ---------------------------------------------------------------------------
// Transformations

FilteredComplex negate(const FilteredComplex& c) {
  std::vector<CriticalPoint> points;
  points.reserve(c.size());
  for (const auto& p : c.points())
    points.push_back({p.name, c.ambient_dim() - p.degree, Rational(-p.value)});
  // Boundary entry (source s → target t) becomes (t → s): the transpose.
  // Re-sorting by the negated values reverses both orders, which is the
  // anti-transpose at matrix level.
  std::vector<BoundaryEntry> entries;
  for (PointId s = 0; s < c.size(); ++s)
    for (const auto& t : c.boundary(s)) entries.push_back({t.target, s, t.coeff});
  return FilteredComplex(c.ambient_dim(), std::move(points), entries);
}

FilteredComplex restrict_window(const FilteredComplex& c, const Rational& lo,
                                const Rational& hi) {
  if (!(lo < hi))
    throw Error(ErrorCode::InvalidCoefficient,
                "window (" + to_string(lo) + ", " + to_string(hi) + ") is empty");
  for (const auto& p : c.points())
    if (p.value == lo || p.value == hi)
      throw Error(ErrorCode::EndpointCritical,
                  "window endpoint " + to_string(p.value) + " is the critical value of '" +
                      p.name + "'");

  std::vector<CriticalPoint> points;
  std::vector<PointId> new_id(c.size(), c.size());
  for (PointId i = 0; i < c.size(); ++i) {
    const auto& p = c.point(i);
    if (p.value > lo && p.value < hi) {
      new_id[i] = points.size();
      points.push_back(p);
    }
  }
  std::vector<BoundaryEntry> entries;
  for (PointId s = 0; s < c.size(); ++s) {
    if (new_id[s] == c.size()) continue;
    for (const auto& t : c.boundary(s))
      if (new_id[t.target] != c.size()) entries.push_back({new_id[s], new_id[t.target], t.coeff});
  }
  return FilteredComplex(c.ambient_dim(), std::move(points), entries);
}

namespace {

template <class T>
void check_basis_shape(const FilteredComplex& c, const std::vector<Matrix<T>>& basis,
                       bool unit_diagonal) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& p = basis[k];
    const std::size_t m = c.points_of_degree(static_cast<int>(k)).size();
    if (p.rows() != m || p.cols() != m)
      throw Error(ErrorCode::DimensionMismatch,
                  "basis change for degree " + std::to_string(k) + " must be " +
                      std::to_string(m) + "x" + std::to_string(m));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t col = 0; col < r; ++col)
        if (p(r, col) != 0)
          throw Error(ErrorCode::NonTriangular,
                      "basis change for degree " + std::to_string(k) +
                          " uses a higher-value point (entry " + std::to_string(r) + "," +
                          std::to_string(col) + ")");
      const T& d = p(r, r);
      if (d == 0 || (unit_diagonal && d != 1 && d != -1))
        throw Error(unit_diagonal ? ErrorCode::NonUnitDiagonal : ErrorCode::NonTriangular,
                    "basis change for degree " + std::to_string(k) + " has diagonal entry " +
                        to_string(d));
    }
  }
}

// Inverse of an upper-triangular matrix with invertible diagonal, in T.
template <class T>
Matrix<T> triangular_inverse(const Matrix<T>& p) {
  const std::size_t n = p.rows();
  Matrix<T> inv(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = n; i-- > 0;) {
      T acc = (i == j) ? T(1) : T(0);
      for (std::size_t k = i + 1; k < n; ++k) acc -= p(i, k) * inv(k, j);
      if constexpr (std::is_same_v<T, Integer>) {
        inv(i, j) = acc * p(i, i);  // diagonal is ±1
      } else {
        inv(i, j) = acc / p(i, i);
      }
    }
  return inv;
}

template <class T>
FilteredComplex conjugate(const FilteredComplex& c, const std::vector<Matrix<T>>& basis_in) {
  const auto dmats = c.boundary_matrices();
  std::vector<Matrix<T>> basis(dmats.size());
  for (std::size_t k = 0; k < dmats.size(); ++k) {
    const std::size_t m = c.points_of_degree(static_cast<int>(k)).size();
    basis[k] = k < basis_in.size() ? basis_in[k] : Matrix<T>::identity(m);
  }
  std::vector<IntMatrix> out(dmats.size());
  for (std::size_t k = 0; k < dmats.size(); ++k) {
    Matrix<T> d = dmats[k].map([](const Integer& v) { return T(v); });
    Matrix<T> b = k == 0 ? d * basis[k] : triangular_inverse(basis[k - 1]) * d * basis[k];
    IntMatrix bi(b.rows(), b.cols());
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t col = 0; col < b.cols(); ++col) {
        if constexpr (std::is_same_v<T, Integer>) {
          bi(r, col) = b(r, col);
        } else {
          if (b(r, col).get_den() != 1)
            throw Error(ErrorCode::NonIntegral,
                        "basis change yields non-integral boundary coefficient " +
                            to_string(b(r, col)));
          bi(r, col) = b(r, col).get_num();
        }
      }
    out[k] = std::move(bi);
  }
  std::vector<CriticalPoint> points(c.points().begin(), c.points().end());
  return FilteredComplex::from_matrices(c.ambient_dim(), std::move(points), out);
}

}  // namespace

FilteredComplex change_basis(const FilteredComplex& c, const std::vector<IntMatrix>& basis) {
  check_basis_shape(c, basis, true);
  return conjugate(c, basis);
}

FilteredComplex change_basis(const FilteredComplex& c, const std::vector<RatMatrix>& basis) {
  check_basis_shape(c, basis, false);
  return conjugate(c, basis);
}

}  // namespace morsekit
