#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morsekit/error.hpp"
#include "morsekit/matrix.hpp"
#include "morsekit/number.hpp"

namespace morsekit {

bool is_prime(std::uint64_t n);

/// Coefficient system: the integers, the rationals, or a prime field F_p.
class Coefficients {
 public:
  enum class Kind { Integers, Rationals, PrimeField };

  static Coefficients integers() { return Coefficients(Kind::Integers, 0); }
  static Coefficients rationals() { return Coefficients(Kind::Rationals, 0); }
  /// Throws Error(NotPrime) unless p is a prime below 2^62.
  static Coefficients prime_field(std::uint64_t p);

  /// Accepts `z`, `q`, or `f<p>` (e.g. `f2`, `f101`).
  static Coefficients parse(std::string_view token);

  Kind kind() const noexcept { return kind_; }
  bool is_field() const noexcept { return kind_ != Kind::Integers; }
  /// 0 for the integers and the rationals.
  std::uint64_t characteristic() const noexcept { return prime_; }

  std::string token() const;
  std::string display_name() const;

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  Coefficients(Kind kind, std::uint64_t prime) : kind_(kind), prime_(prime) {}

  Kind kind_;
  std::uint64_t prime_;
};

std::vector<Coefficients> parse_coefficient_list(std::string_view comma_separated);

// ---------------------------------------------------------------------------
// Arithmetic policies. Generic linear algebra (see linalg.hpp) is written
// against this interface; `invertible` is what separates ℤ from a field.

class RationalField {
 public:
  using Element = Rational;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(const Integer& v) const { return Rational(v); }
  bool is_zero(const Element& a) const { return a == 0; }
  bool invertible(const Element& a) const { return a != 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inverse(const Element& a) const { return 1 / a; }
  Rational to_rational(const Element& a) const { return a; }
  Coefficients coefficients() const { return Coefficients::rationals(); }
};

class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {}

  std::uint64_t prime() const noexcept { return p_; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(const Integer& v) const;
  bool is_zero(Element a) const { return a == 0; }
  bool invertible(Element a) const { return a != 0; }
  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + (p_ - b); }
  Element mul(Element a, Element b) const {
    __extension__ using Wide = unsigned __int128;
    return static_cast<Element>(static_cast<Wide>(a) * b % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inverse(Element a) const;
  Rational to_rational(Element a) const { return Rational(Integer(static_cast<unsigned long>(a))); }
  Coefficients coefficients() const { return Coefficients::prime_field(p_); }

 private:
  std::uint64_t p_;
};

/// ℤ as a ring: only ±1 is invertible. Used by the unit-pivot reduction.
class IntegerRing {
 public:
  using Element = Integer;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(const Integer& v) const { return v; }
  bool is_zero(const Element& a) const { return a == 0; }
  bool invertible(const Element& a) const { return a == 1 || a == -1; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  /// Precondition: invertible(a).
  Element inverse(const Element& a) const { return a; }
  Rational to_rational(const Element& a) const { return Rational(a); }
  Coefficients coefficients() const { return Coefficients::integers(); }
};

// ---------------------------------------------------------------------------
// Integer normal forms.

/// A = U·S·V with U, V unimodular and S diagonal with d_1 | d_2 | ... ≥ 0.
/// The inverses of U and V are carried along since the homology scans need
/// them (kernel bases and quotient functionals).
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;

  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Rank after mapping entries into the coefficient field; ℤ reports the
/// rank over ℚ.
std::size_t rank_over(const IntMatrix& a, const Coefficients& coeff);

/// Lattice basis (as columns) of {x ∈ ℤ^n : A·x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Nonnegative generator of {w·g : g ∈ ℤ-span of G's columns} +
/// {w·b : b a column of B}. Throws Error(DimensionMismatch) if G, B and w
/// do not share one ambient lattice.
Integer image_index(const IntMatrix& generators, std::span<const Integer> functional,
                    const IntMatrix& boundaries);

Integer determinant(const IntMatrix& a);

/// Calls fn(RationalField{}) or fn(PrimeField{p}); throws
/// Error(UnsupportedCoefficients) for the integers.
template <class Fn>
decltype(auto) visit_field(const Coefficients& coeff, Fn&& fn) {
  switch (coeff.kind()) {
    case Coefficients::Kind::Rationals:
      return fn(RationalField{});
    case Coefficients::Kind::PrimeField:
      return fn(PrimeField{coeff.characteristic()});
    case Coefficients::Kind::Integers:
      break;
  }
  throw Error(ErrorCode::UnsupportedCoefficients,
              "operation requires a field; got " + coeff.display_name());
}

}  // namespace morsekit
