#include "brute.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace brute {

namespace {

Integer mod(const Integer& x, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return r;
}

// Calls fn on every increasing k-subset of {0..n-1}.
void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

IntMatrix leading_columns(const IntMatrix& a, std::size_t t) {
  IntMatrix out(a.rows(), t);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < t; ++j) out(r, j) = a(r, j);
  return out;
}

IntMatrix trailing_rows(const IntMatrix& a, std::size_t from) {
  IntMatrix out(a.rows() - from, a.cols());
  for (std::size_t r = from; r < a.rows(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) out(r - from, j) = a(r, j);
  return out;
}

}  // namespace

std::size_t rank(const IntMatrix& a, std::uint64_t p) {
  std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = p ? Rational(mod(a(r, c), p)) : Rational(a(r, c));
  // Over F_p entries stay canonical residues; division uses a modular inverse.
  auto reduce_entry = [&](Rational& x) {
    if (p) x = Rational(mod(x.get_num(), p));
  };
  auto inverse = [&](const Rational& x) -> Rational {
    if (!p) return 1 / x;
    Integer inv;
    const Integer pp(static_cast<unsigned long>(p));
    mpz_invert(inv.get_mpz_t(), x.get_num().get_mpz_t(), pp.get_mpz_t());
    return Rational(inv);
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[rank]);
    const Rational inv = inverse(m[rank][c]);
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] * inv;
      reduce_entry(f);
      for (std::size_t k = c; k < a.cols(); ++k) {
        m[r][k] -= f * m[rank][k];
        reduce_entry(m[r][k]);
      }
    }
    ++rank;
  }
  return rank;
}

Integer det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    const Integer term = a(0, j) * det(minor);
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

Integer determinantal_divisor(const IntMatrix& a, std::size_t k) {
  if (k == 0) return 1;
  Integer g = 0;
  subsets(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
    subsets(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
      if (g == 1) return;
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
      const Integer d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

std::vector<Integer> invariant_factors(const IntMatrix& a) {
  std::vector<Integer> out;
  const std::size_t r = rank(a);
  Integer prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    const Integer d = determinantal_divisor(a, k);
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

IntMatrix kernel(const IntMatrix& a) {
  IntMatrix m = a;
  IntMatrix t = IntMatrix::identity(a.cols());
  auto col_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
    for (std::size_t r = 0; r < t.rows(); ++r) t(r, dst) -= q * t(r, src);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
    for (std::size_t r = 0; r < t.rows(); ++r) std::swap(t(r, i), t(r, j));
  };
  std::size_t pc = 0;
  for (std::size_t i = 0; i < m.rows() && pc < m.cols(); ++i) {
    for (std::size_t j = pc + 1; j < m.cols(); ++j) {
      while (m(i, j) != 0) {
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), m(i, pc).get_mpz_t(), m(i, j).get_mpz_t());
        col_sub(pc, j, q);
        col_swap(pc, j);
      }
    }
    if (m(i, pc) != 0) ++pc;
  }
  IntMatrix out(a.cols(), a.cols() - pc);
  for (std::size_t r = 0; r < a.cols(); ++r)
    for (std::size_t j = pc; j < a.cols(); ++j) out(r, j - pc) = t(r, j);
  return out;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b, std::size_t rows) {
  IntMatrix out(rows, a.cols() + b.cols());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(r, j) = a(r, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(r, a.cols() + j) = b(r, j);
  }
  return out;
}

FilteredComplex dual(const FilteredComplex& c) {
  // Matrix level: D'_{n-k+1}(i, j) = D_k(a-1-j, b-1-i), with each degree's
  // points listed in reversed value order.
  const int n = c.ambient_dim();
  const int top = std::max(n, c.max_degree());
  std::vector<morsekit::CriticalPoint> pts;
  for (int k = n - top; k <= n; ++k) {
    if (n - k < 0) continue;
    const auto ids = c.points_of_degree(n - k);
    for (std::size_t i = ids.size(); i-- > 0;) {
      const auto& p = c.point(ids[i]);
      pts.push_back({p.name, k, Rational(-p.value)});
    }
  }
  std::vector<IntMatrix> mats(static_cast<std::size_t>(n + 2));
  for (int k = 0; k <= n + 1; ++k) {
    const IntMatrix d = c.boundary_matrix(k);
    const int j = n - k + 1;
    if (j < 0 || j > n + 1) continue;
    const std::size_t a = d.rows(), b = d.cols();
    IntMatrix t(b, a);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t jj = 0; jj < a; ++jj) t(i, jj) = d(a - 1 - jj, b - 1 - i);
    mats[static_cast<std::size_t>(j)] = t;
  }
  return FilteredComplex::from_matrices(n, std::move(pts), mats);
}

std::optional<int> homology_degree(const FilteredComplex& c, std::uint64_t p) {
  std::optional<int> found;
  std::size_t total = 0;
  for (int k = 0; k <= std::max(c.ambient_dim(), c.max_degree()); ++k) {
    const std::size_t m = c.points_of_degree(k).size();
    const std::size_t h = m - rank(c.boundary_matrix(k), p) - rank(c.boundary_matrix(k + 1), p);
    total += h;
    if (h) found = k;
  }
  if (total != 1) return std::nullopt;
  return found;
}

std::size_t minmax_position(const FilteredComplex& c, std::uint64_t p, bool integral) {
  const auto lambda = homology_degree(c, p);
  if (!lambda) throw std::runtime_error("homology is not one-dimensional");
  const IntMatrix d = c.boundary_matrix(*lambda);
  const IntMatrix b = c.boundary_matrix(*lambda + 1);
  const std::size_t m = d.cols();
  const std::size_t rank_b = rank(b, p);
  const std::size_t rank_z = m - rank(d, p);

  for (std::size_t t = 1; t <= m; ++t) {
    if (!integral) {
      // dim Z_t against dim(B ∩ E_t), E_t the span of the first t points.
      const std::size_t z_t = t - rank(leading_columns(d, t), p);
      const std::size_t b_t = rank_b - rank(trailing_rows(b, t), p);
      if (z_t > b_t) return t - 1;
      continue;
    }
    // Z_t + B = Z  iff  it has full rank in Z and is saturated.
    const IntMatrix k = kernel(leading_columns(d, t));
    IntMatrix zt(m, k.cols());
    for (std::size_t r = 0; r < t; ++r)
      for (std::size_t j = 0; j < k.cols(); ++j) zt(r, j) = k(r, j);
    const IntMatrix gens = hcat(zt, b, m);
    if (rank(gens) == rank_z && determinantal_divisor(gens, rank_z) == 1) return t - 1;
  }
  throw std::runtime_error("no sublevel surjects");
}

Rational minmax(const FilteredComplex& c, std::uint64_t p, bool integral) {
  const auto lambda = homology_degree(c, p);
  const std::size_t pos = minmax_position(c, p, integral);
  return c.point(c.points_of_degree(*lambda)[pos]).value;
}

Rational maxmin(const FilteredComplex& c, std::uint64_t p, bool integral) {
  return -minmax(dual(c), p, integral);
}

}  // namespace brute
