#include "morsekit/coeff.hpp"

#include <algorithm>
#include <charconv>

#include "morsekit/error.hpp"
#include "morsekit/linalg.hpp"

namespace morsekit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownPoint: return "unknown_point";
    case ErrorCode::DuplicatePoint: return "duplicate_point";
    case ErrorCode::InvalidCoefficient: return "invalid_coefficient";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::InvalidComplex: return "invalid_complex";
    case ErrorCode::NotAdmissible: return "not_admissible";
    case ErrorCode::EndpointCritical: return "endpoint_critical";
    case ErrorCode::NonTriangular: return "non_triangular";
    case ErrorCode::NonUnitDiagonal: return "non_unit_diagonal";
    case ErrorCode::NonIntegral: return "non_integral";
    case ErrorCode::UnsupportedCoefficients: return "unsupported_coefficients";
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::InternalInconsistency: return "internal_inconsistency";
    case ErrorCode::InfeasibleSizes: return "infeasible_sizes";
    case ErrorCode::EpsilonTooLarge: return "epsilon_too_large";
    case ErrorCode::UnknownFixture: return "unknown_fixture";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Numbers

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  // mpq_class::get_str already omits "/1" for integers.
  return value.get_str();
}

namespace {

bool is_decimal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char ch) { return ch >= '0' && ch <= '9'; });
}

}  // namespace

std::optional<Integer> parse_integer(std::string_view text) {
  if (!is_decimal(text)) return std::nullopt;
  if (text[0] == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto v = parse_integer(text);
    if (!v) return std::nullopt;
    return Rational(*v);
  }
  auto num = parse_integer(text.substr(0, slash));
  const auto den_text = text.substr(slash + 1);
  if (!num || den_text.empty() || den_text[0] == '-' || den_text[0] == '+') return std::nullopt;
  auto den = parse_integer(den_text);
  if (!den || *den == 0) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), num->get_mpz_t(), den->get_mpz_t());
  if (g != 1) return std::nullopt;
  return Rational(*num, *den);
}

// ---------------------------------------------------------------------------
// Coefficients

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const Integer z(std::to_string(n), 10);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

Coefficients Coefficients::prime_field(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 62) || !is_prime(p))
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a supported prime");
  return Coefficients(Kind::PrimeField, p);
}

Coefficients Coefficients::parse(std::string_view token) {
  if (token == "z") return integers();
  if (token == "q") return rationals();
  if (token.size() >= 2 && token[0] == 'f') {
    std::uint64_t p = 0;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec == std::errc{} && ptr == last) return prime_field(p);
  }
  throw Error(ErrorCode::UnsupportedCoefficients,
              "unknown coefficient token '" + std::string(token) + "' (expected z, q or f<p>)");
}

std::string Coefficients::token() const {
  switch (kind_) {
    case Kind::Integers: return "z";
    case Kind::Rationals: return "q";
    case Kind::PrimeField: return "f" + std::to_string(prime_);
  }
  return "?";
}

std::string Coefficients::display_name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "F" + std::to_string(prime_);
  }
  return "?";
}

std::vector<Coefficients> parse_coefficient_list(std::string_view text) {
  std::vector<Coefficients> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(Coefficients::parse(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

PrimeField::Element PrimeField::from_integer(const Integer& v) const {
  return static_cast<Element>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p_)));
}

PrimeField::Element PrimeField::inverse(Element a) const {
  // Fermat: a^(p-2).
  Element result = 1;
  Element base = a % p_;
  std::uint64_t e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Integer linear algebra helpers

std::size_t rank_over(const IntMatrix& a, const Coefficients& coeff) {
  const Coefficients field = coeff.is_field() ? coeff : Coefficients::rationals();
  return visit_field(field, [&](const auto& f) {
    return linalg::rank(f, linalg::from_integers(f, a));
  });
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  const std::size_t n = a.cols();
  IntMatrix basis(n, n - r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = r; j < n; ++j) basis(i, j - r) = snf.V_inverse(i, j);
  return basis;
}

Integer image_index(const IntMatrix& generators, std::span<const Integer> functional,
                    const IntMatrix& boundaries) {
  const std::size_t n = functional.size();
  if ((generators.cols() > 0 && generators.rows() != n) ||
      (boundaries.cols() > 0 && boundaries.rows() != n))
    throw Error(ErrorCode::DimensionMismatch,
                "image_index: generators, boundaries and functional disagree on dimension");
  Integer g = 0;
  auto absorb = [&](const IntMatrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += functional[i] * m(i, j);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dot.get_mpz_t());
    }
  };
  absorb(generators);
  absorb(boundaries);
  return g;
}

Integer determinant(const IntMatrix& a) {
  if (!a.square())
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  const std::size_t n = m.rows();
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && m(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(sel, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    }
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : Integer(sign * m(n - 1, n - 1));
}

}  // namespace morsekit
