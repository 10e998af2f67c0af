// Free graded-commutative algebras on ordered generators, with differentials
// and derivations defined on generators and extended by the Leibniz rule.
#pragma once

#include "almab/linalg.hpp"
#include "almab/scalar.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace almab {

/// Sorted (generator, exponent) pairs; odd generators have exponent 1.
using GenMonomial = std::vector<std::pair<int, int>>;

class Polynomial {
 public:
  using TermMap = std::map<GenMonomial, Rational>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial generator(int id, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const GenMonomial& m, const Rational& c);
  Rational coefficient(const GenMonomial& m) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  TermMap terms_;
};

class FreeCdga {
 public:
  struct Generator {
    std::string name;
    int degree = 1;
    Polynomial differential;
  };

  int add_generator(std::string name, int degree, Polynomial differential = {});
  int size() const { return static_cast<int>(generators_.size()); }
  const Generator& generator(int id) const { return generators_.at(static_cast<std::size_t>(id)); }
  const std::vector<Generator>& generators() const { return generators_; }
  void set_differential(int id, Polynomial d) { generators_.at(static_cast<std::size_t>(id)).differential = std::move(d); }
  void set_name(int id, std::string name) { generators_.at(static_cast<std::size_t>(id)).name = std::move(name); }

  bool is_odd(int id) const { return generator(id).degree % 2 != 0; }
  int degree(const GenMonomial& m) const;

  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;

  /// Extends values on generators to a derivation of the given degree:
  /// D(ab) = D(a) b + (-1)^{deg(D) |a|} a D(b).
  Polynomial apply_derivation(const std::vector<Polynomial>& values, int derivation_degree, const Polynomial& p) const;
  Polynomial differential(const Polynomial& p) const;

  /// Monomials of total degree k using only generators with id < limit
  /// (all generators when limit < 0), in map order.
  std::vector<GenMonomial> monomials(int k, int limit = -1) const;

  std::string format(const Polynomial& p) const;
  std::string format(const GenMonomial& m) const;

 private:
  /// Product of two normalized monomials: sign (0 when an odd generator repeats).
  std::pair<int, GenMonomial> multiply_monomials(const GenMonomial& a, const GenMonomial& b) const;

  std::vector<Generator> generators_;
};

/// Dense coordinates of polynomials over a fixed monomial list.
class PolynomialBasis {
 public:
  PolynomialBasis() = default;
  explicit PolynomialBasis(std::vector<GenMonomial> monomials);

  int size() const { return static_cast<int>(monomials_.size()); }
  const GenMonomial& operator[](int i) const { return monomials_.at(static_cast<std::size_t>(i)); }
  const std::vector<GenMonomial>& monomials() const { return monomials_; }
  /// -1 when the monomial is not part of the basis.
  int index(const GenMonomial& m) const;

  DenseVector<Rational> coordinates(const Polynomial& p) const;
  Polynomial polynomial(const DenseVector<Rational>& v) const;

 private:
  std::vector<GenMonomial> monomials_;
  std::map<GenMonomial, int> index_;
};

}  // namespace almab
