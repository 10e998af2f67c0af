// Twisted total model M_S = (Lambda(A) (x) M_U, D) and the kernel criterion
// for k-formality.
#pragma once

#include "almab/sullivan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace almab {

/// Values of the twist derivation theta on the generators of M_U.
struct TwistAssignment {
  std::vector<Polynomial> theta;
  /// Generators whose value required a choice among several valid preimages.
  std::vector<bool> ambiguous;

  bool any_ambiguous() const;
  bool is_zero() const;
};

TwistAssignment twist_derivation(const MinimalModel& model, const LinearEndo<Rational>& nilpotent);
TwistAssignment twist_derivation(const MinimalModel& model, const AlmostAbelianSpec& spec);

/// theta extended as a degree-0 derivation.
Polynomial apply_twist(const MinimalModel& model, const TwistAssignment& twist, const Polynomial& p);

/// [d, theta] = 0 on every generator.
bool twist_commutes_with_d(const MinimalModel& model, const TwistAssignment& twist);
/// Some power of theta vanishes on every graded piece up to `degree`.
bool twist_is_nilpotent(const MinimalModel& model, const TwistAssignment& twist, int degree);
/// rho(theta(x)) = N^t(rho(x)) on every generator.
bool twist_realizes_nilpotent(const MinimalModel& model, const TwistAssignment& twist,
                              const LinearEndo<Rational>& nilpotent);

/// Generator 0 of `algebra` is A; generator i + 1 is generator i of the base.
/// D = d + A.theta, so on base generators Dx = dx + (-1)^{|x|} theta(x) A; with
/// the CE sign d = alpha^{n+1}.M~^t this makes tau a chain map.
class TwistedModel {
 public:
  TwistedModel(MinimalModel base, TwistAssignment twist);

  const MinimalModel& base() const { return base_; }
  const TwistAssignment& twist() const { return twist_; }
  const FreeCdga& algebra() const { return algebra_; }
  static constexpr int kA = 0;

  /// Moves a polynomial of M_U into M_S.
  Polynomial embed(const Polynomial& p) const;
  Polynomial D(const Polynomial& p) const { return algebra_.differential(p); }
  const Polynomial& D_of_generator(int id) const { return algebra_.generator(id).differential; }
  /// tau: A -> alpha^{n+1}, base generators -> rho-values, into Lambda(R^{n+1}).
  Multivector<Rational> realize(const Polynomial& p, int degree) const;

 private:
  MinimalModel base_;
  TwistAssignment twist_;
  FreeCdga algebra_;
};

TwistedModel twisted_model(const MinimalModel& model, const AlmostAbelianSpec& spec);

/// D o D on every generator of M_S.
bool twisted_differential_squares_to_zero(const TwistedModel& tm);

struct FormalityDegree {
  int degree = 0;
  int kernel_dim = 0;
  bool pass = true;
  std::optional<Polynomial> witness;
  Polynomial witness_twist;
};

struct FormalityVerdict {
  int max_checked_degree = 0;
  int model_bound = 0;
  std::vector<FormalityDegree> degrees;
  std::vector<int> ambiguous_generators;

  bool pass() const;
  std::optional<int> first_failure() const;
  /// Always qualified by the checked degree and the model bound.
  std::string summary() const;
};

FormalityVerdict k_formality(const TwistedModel& tm, int k);
/// Builds the model with bound max(k, d_max) and decides k-formality.
FormalityVerdict k_formality(const AlmostAbelianSpec& spec, int k, int d_max = -1);

/// Independent restatement at k = 1: fails iff N^t is nonzero on U^1.
bool degree_one_predicts_failure(const AlmostAbelianSpec& spec);

/// Lines "DA = 0", "Dg4 = -g1*A", ... in the "dx + yA" shape.
std::string total_model_dump(const TwistedModel& tm);
nlohmann::json total_model_to_json(const TwistedModel& tm);

}  // namespace almab
