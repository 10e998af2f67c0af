// Exact scalars: GMP-backed rationals and rational linear combinations of
// formal transcendental symbols.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace almab {

/// Arbitrary precision rational, always stored in lowest terms.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Thrown when a product of two symbolic quantities would be required.
class SymbolicProductError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "p", "-p", "p/q" (no whitespace inside the literal).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }

/**
 * constant + sum_s c_s * s where the symbols s are treated as Q-linearly
 * independent together with 1. Zero coefficients are never stored, so
 * equality and the zero test are plain data comparisons.
 */
class ScalarLC {
 public:
  using SymbolMap = std::map<std::string, Rational>;

  ScalarLC() = default;
  ScalarLC(int c) : constant_(c) {}  // NOLINT(google-explicit-constructor)
  ScalarLC(Rational c) : constant_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  ScalarLC(Rational c, SymbolMap symbols);

  static ScalarLC symbol(const std::string& name, const Rational& coefficient = 1);

  /// Parses literals such as "0", "-1/2", "b", "2*b - 3/4*c + 1".
  static ScalarLC parse(std::string_view text);

  const Rational& constant() const { return constant_; }
  const SymbolMap& symbol_terms() const { return symbols_; }
  Rational coefficient(const std::string& symbol) const;

  bool is_zero() const { return constant_.is_zero() && symbols_.empty(); }
  bool is_rational() const { return symbols_.empty(); }

  ScalarLC& operator+=(const ScalarLC& other);
  ScalarLC& operator-=(const ScalarLC& other);
  ScalarLC& operator*=(const Rational& q);

  friend ScalarLC operator+(ScalarLC a, const ScalarLC& b) { return a += b; }
  friend ScalarLC operator-(ScalarLC a, const ScalarLC& b) { return a -= b; }
  friend ScalarLC operator-(ScalarLC a) { return a *= Rational(-1); }
  friend ScalarLC operator*(const Rational& q, ScalarLC a) { return a *= q; }
  friend ScalarLC operator*(ScalarLC a, const Rational& q) { return a *= q; }
  /// Defined only when at least one factor is rational.
  friend ScalarLC operator*(const ScalarLC& a, const ScalarLC& b);

  friend bool operator==(const ScalarLC& a, const ScalarLC& b) = default;

  /// Substitutes rational values for every symbol (used by numeric oracles).
  Rational evaluate(const std::map<std::string, Rational>& values) const;

  std::string to_string() const;

 private:
  void canonicalize();

  Rational constant_{0};
  SymbolMap symbols_;
};

inline bool is_zero(const ScalarLC& a) { return a.is_zero(); }
inline std::string to_string(const ScalarLC& a) { return a.to_string(); }

ScalarLC lc_add(const ScalarLC& a, const ScalarLC& b);
ScalarLC lc_scale(const Rational& q, const ScalarLC& a);
bool lc_is_zero(const ScalarLC& a);

/// Conversion used by templated code that mixes coefficient rings.
template <class To>
To scalar_cast(const Rational& q) {
  return To(q);
}

}  // namespace almab
