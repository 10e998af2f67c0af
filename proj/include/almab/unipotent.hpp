// The submodule U of H*(R^n) on which the monodromy acts unipotently.
#pragma once

#include "almab/spectral.hpp"

#include <vector>

namespace almab {

/// Per-degree rational bases (reduced echelon form, lexicographic pivots).
struct UBasis {
  int n = 0;
  std::vector<std::vector<Multivector<Rational>>> degrees;  // index k = 0..n

  const std::vector<Multivector<Rational>>& operator[](int k) const { return degrees.at(static_cast<std::size_t>(k)); }
  int dimension(int k) const {
    return k < 0 || k > n ? 0 : static_cast<int>(degrees.at(static_cast<std::size_t>(k)).size());
  }
};

/// exp(lambda t) = 1 for the weight.
bool resonance_test(const Weight& w);

/// Degree-k slice of U from the resonant monomials in the complexified basis.
std::vector<Multivector<Rational>> compute_U(const AlmostAbelianSpec& spec, int k);
UBasis compute_U(const AlmostAbelianSpec& spec);

/// Number of resonant complex monomials of degree k (= dim U^k).
int resonant_monomial_count(const AlmostAbelianSpec& spec, int k);

/// Independent route: generalized 1-eigenspace of the monodromy on Lambda^k,
/// with the monodromy built as an exact rational matrix. Needs zero real parts
/// and complex resonances in (1/4)Z (rotation matrices with rational entries).
std::vector<Multivector<Rational>> oracle_U(const AlmostAbelianSpec& spec, int k);
bool oracle_available(const AlmostAbelianSpec& spec);

/// Monodromy on Lambda^1 used by oracle_U (rotation times exp(N^t)).
LinearEndo<Rational> rational_monodromy(const AlmostAbelianSpec& spec);

/// Reduced echelon basis of the span.
std::vector<Multivector<Rational>> echelon_basis(const std::vector<Multivector<Rational>>& xs, int n, int k);

bool same_span(const std::vector<Multivector<Rational>>& a, const std::vector<Multivector<Rational>>& b, int n, int k);
bool in_span(const Multivector<Rational>& x, const std::vector<Multivector<Rational>>& basis);

}  // namespace almab
