// Invariant symplectic forms omega = F + eta ^ alpha^{n+1} built from a
// co-symplectic pair (F, eta) on U.
#pragma once

#include "almab/unipotent.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace almab {

/// Echelon basis of {F in span(U^2) : N^t F = 0}.
std::vector<Multivector<Rational>> closed_two_classes(const AlmostAbelianSpec& spec);

/// Polynomial in the search parameters, keyed by exponent vectors.
using ParamPolynomial = std::map<std::vector<int>, Rational>;

/// P(a, b) = top(F^{m-1} ^ eta) for F = sum a_i F_i, eta = sum b_j eta_j,
/// parameters ordered (a_1..a_r, b_1..b_s). Requires fiber dimension 2m - 1.
ParamPolynomial nondegeneracy_polynomial(const std::vector<Multivector<Rational>>& two_forms,
                                         const std::vector<Multivector<Rational>>& one_forms);
Rational evaluate(const ParamPolynomial& p, const std::vector<Rational>& point);

/// Visits {0..bound}^count by increasing L1 norm, ties in lexicographically
/// descending order, until `visit` returns true. Returns the accepted point.
std::optional<std::vector<int>> grid_search(int count, int bound,
                                            const std::function<bool(const std::vector<int>&)>& visit);

struct SymplecticWitness {
  Multivector<Rational> F;
  Multivector<Rational> eta;
  /// Two-form on R^{n+1}.
  Multivector<Rational> omega;
  /// Parameter values that produced F and eta (empty for user candidates).
  std::vector<Rational> parameters;
};

SymplecticWitness make_witness(const AlmostAbelianSpec& spec, const Multivector<Rational>& F,
                               const Multivector<Rational>& eta);

struct SymplecticCertificate {
  bool omega_consistent = false;
  bool F_in_U = false;
  bool eta_in_U = false;
  bool F_twist_free = false;
  bool closed = false;
  Rational top_F_eta;
  Rational omega_top;
  bool expansion_ok = false;
  bool F_power_vanishes = false;

  bool pass() const;
};

SymplecticCertificate verify_symplectic(const AlmostAbelianSpec& spec, const SymplecticWitness& w);

enum class SearchStatus { Found, NoneFound, Undefined };

struct SearchResult {
  SearchStatus status = SearchStatus::NoneFound;
  std::string message;
  std::optional<SymplecticWitness> witness;
  std::optional<SymplecticCertificate> certificate;
  int parameter_count = 0;
  int grid_bound = 0;
  /// Whether theta vanishes on all of M_U^2 (the global hypothesis D_2 = d_2).
  bool global_condition = false;
};

SearchResult find_symplectic(const AlmostAbelianSpec& spec);

nlohmann::json witness_to_json(const SymplecticWitness& w);
SymplecticWitness witness_from_json(const nlohmann::json& doc, int n);

}  // namespace almab
