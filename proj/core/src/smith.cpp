#include <algorithm>
#include <utility>

#include "morsekit/coeff.hpp"

namespace morsekit {

namespace {

// Working state: A is reduced in place while U, V (A = U·S·V) and their
// inverses track every elementary operation.
class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& a)
      : a_(a),
        u_(IntMatrix::identity(a.rows())),
        u_inv_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())),
        v_inv_(IntMatrix::identity(a.cols())) {}

  SmithDecomposition run() {
    const std::size_t limit = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      if (!place_pivot(t)) break;
      while (true) {
        // Any surviving remainder is smaller than the pivot, so re-selecting
        // the smallest entry of the whole block makes progress and keeps the
        // quotients (and hence entry growth) small.
        if (!clear_cross(t)) {
          place_pivot(t);
          continue;
        }
        // Divisibility: pivot must divide everything left in the trailing block.
        auto bad = find_non_multiple(t);
        if (!bad) break;
        add_row(t, *bad, 1);  // row t += row bad; reintroduces a remainder in row t
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    return {std::move(u_), std::move(a_), std::move(v_), std::move(u_inv_), std::move(v_inv_)};
  }

 private:
  // Smallest-magnitude nonzero entry of the trailing block moved to (t, t).
  bool place_pivot(std::size_t t) {
    std::size_t best_r = 0, best_c = 0;
    bool found = false;
    for (std::size_t r = t; r < a_.rows(); ++r)
      for (std::size_t c = t; c < a_.cols(); ++c) {
        if (a_(r, c) == 0) continue;
        if (!found || cmpabs(a_(r, c), a_(best_r, best_c)) < 0) {
          best_r = r;
          best_c = c;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, best_r);
    swap_cols(t, best_c);
    return true;
  }

  static int cmpabs(const Integer& x, const Integer& y) {
    return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t());
  }

  // One pass reducing row t and column t modulo the pivot with nearest-integer
  // quotients. Returns true when both are clear apart from the pivot.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    Integer q;
    for (std::size_t r = t + 1; r < a_.rows(); ++r) {
      if (a_(r, t) == 0) continue;
      nearest_quotient(q, a_(r, t), a_(t, t));
      add_row(r, t, -q);
      if (a_(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < a_.cols(); ++c) {
      if (a_(t, c) == 0) continue;
      nearest_quotient(q, a_(t, c), a_(t, t));
      add_col(c, t, -q);
      if (a_(t, c) != 0) clean = false;
    }
    return clean;
  }

  // q = round(a / b), so that |a - q b| <= |b| / 2.
  static void nearest_quotient(Integer& q, const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer twice = 2 * r;
    if (mpz_cmpabs(twice.get_mpz_t(), b.get_mpz_t()) > 0) q += 1;
  }

  std::optional<std::size_t> find_non_multiple(std::size_t t) const {
    for (std::size_t r = t + 1; r < a_.rows(); ++r)
      for (std::size_t c = t + 1; c < a_.cols(); ++c)
        if (mpz_divisible_p(a_(r, c).get_mpz_t(), a_(t, t).get_mpz_t()) == 0) return r;
    return std::nullopt;
  }

  // A ← E·A with E = swap(i, j): U ← U·E, U⁻¹ ← E·U⁻¹.
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    for (std::size_t r = 0; r < u_.rows(); ++r) std::swap(u_(r, i), u_(r, j));
    for (std::size_t c = 0; c < u_inv_.cols(); ++c) std::swap(u_inv_(i, c), u_inv_(j, c));
  }

  // row_i += q · row_j.
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) += q * a_(j, c);
    for (std::size_t c = 0; c < u_inv_.cols(); ++c) u_inv_(i, c) += q * u_inv_(j, c);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, j) -= q * u_(r, i);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    for (std::size_t c = 0; c < u_inv_.cols(); ++c) u_inv_(i, c) = -u_inv_(i, c);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, i) = -u_(r, i);
  }

  // A ← A·F with F = swap(i, j): V ← F·V, V⁻¹ ← V⁻¹·F.
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t c = 0; c < v_.cols(); ++c) std::swap(v_(i, c), v_(j, c));
    for (std::size_t r = 0; r < v_inv_.rows(); ++r) std::swap(v_inv_(r, i), v_inv_(r, j));
  }

  // col_i += q · col_j.
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) a_(r, i) += q * a_(r, j);
    for (std::size_t r = 0; r < v_inv_.rows(); ++r) v_inv_(r, i) += q * v_inv_(r, j);
    for (std::size_t c = 0; c < v_.cols(); ++c) v_(j, c) -= q * v_(i, c);
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix u_inv_;
  IntMatrix v_;
  IntMatrix v_inv_;
};

}  // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  const std::size_t n = std::min(S.rows(), S.cols());
  for (std::size_t i = 0; i < n && S(i, i) != 0; ++i) d.push_back(S(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const { return diagonal().size(); }

SmithDecomposition smith_normal_form(const IntMatrix& a) { return SmithWorker(a).run(); }

}  // namespace morsekit
