// Chevalley-Eilenberg cohomology of the completely solvable modification
// g~ = R x_{M~} R^n. The base generator is alpha^{n+1}.
#pragma once

#include "almab/spectral.hpp"

#include <vector>

namespace almab {

/// Sign in d(alpha^j) = kCeSign * M~^t(alpha^j) ^ alpha^{n+1}, i.e. dxi(X,Y) = -xi([X,Y]).
inline constexpr int kCeSign = -1;

/// Cochain x + y ^ alpha^{n+1} with x in Lambda^k and y in Lambda^{k-1} of the fiber.
struct CeCochain {
  Multivector<ScalarLC> x;
  Multivector<ScalarLC> y;
};

/// d as an antiderivation of Lambda(R^{n+1}) (alpha^{n+1} closed).
Multivector<ScalarLC> ce_differential(const AlmostAbelianSpec& spec, const Multivector<ScalarLC>& form);
CeCochain ce_differential(const AlmostAbelianSpec& spec, const CeCochain& cochain);

/// Splits a form on R^{n+1} into fiber part and coefficient of alpha^{n+1}.
CeCochain split_cochain(const Multivector<ScalarLC>& form);
Multivector<ScalarLC> join_cochain(const CeCochain& cochain);

struct CohomologyDegree {
  int degree = 0;
  /// Closed fiber forms: echelon basis of ker A_k.
  std::vector<Multivector<Rational>> kernel_part;
  /// y with y ^ alpha^{n+1} representing coker A_{k-1} (non-pivot monomials).
  std::vector<Multivector<Rational>> cokernel_part;

  int betti() const { return static_cast<int>(kernel_part.size() + cokernel_part.size()); }
  /// All representatives as forms on R^{n+1}.
  std::vector<Multivector<Rational>> representatives() const;
};

/// H^k via the weight decomposition of Lambda^k; requires the modification hypothesis.
CohomologyDegree cohomology(const AlmostAbelianSpec& spec, int k);
std::vector<CohomologyDegree> cohomology(const AlmostAbelianSpec& spec);
std::vector<int> betti_numbers(const AlmostAbelianSpec& spec);

}  // namespace almab
