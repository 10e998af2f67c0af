// Degreewise minimal model of the cdga (U, 0) with realization rho into Lambda(R^n).
#pragma once

#include "almab/free_cdga.hpp"
#include "almab/unipotent.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace almab {

class MinimalModel {
 public:
  MinimalModel() = default;
  MinimalModel(int fiber_dim, int degree_bound) : fiber_dim_(fiber_dim), degree_bound_(degree_bound) {}

  /// Appends a generator; closed generators carry their U-representative.
  int add_generator(int degree, Polynomial differential, Multivector<Rational> rho, bool closed);

  int fiber_dim() const { return fiber_dim_; }
  int degree_bound() const { return degree_bound_; }
  void set_degree_bound(int bound) { degree_bound_ = bound; }
  const FreeCdga& algebra() const { return algebra_; }
  int size() const { return algebra_.size(); }
  int degree(int id) const { return algebra_.generator(id).degree; }
  bool closed(int id) const { return closed_.at(static_cast<std::size_t>(id)); }
  const Multivector<Rational>& rho(int id) const { return rho_.at(static_cast<std::size_t>(id)); }
  const Polynomial& differential_of(int id) const { return algebra_.generator(id).differential; }
  const std::string& name(int id) const { return algebra_.generator(id).name; }

  Polynomial d(const Polynomial& p) const { return algebra_.differential(p); }
  /// rho extended as an algebra map; zero on non-closed generators.
  Multivector<Rational> realize(const Polynomial& p, int degree) const;

  /// Number of generators of each degree, split closed / non-closed.
  std::vector<std::pair<int, int>> generator_counts() const;

  /// Copy without generator `id` (differentials referring to it are kept
  /// only if they do not mention it); used for negative controls.
  MinimalModel without_generator(int id) const;

 private:
  int fiber_dim_ = 0;
  int degree_bound_ = 0;
  FreeCdga algebra_;
  std::vector<Multivector<Rational>> rho_;
  std::vector<bool> closed_;
};

/// Linear algebra on one graded piece of the model.
struct GradedPiece {
  int degree = 0;
  PolynomialBasis basis;
};

GradedPiece graded_piece(const MinimalModel& model, int k, int limit = -1);
/// d : M^k -> M^{k+1} as a matrix (columns indexed by `from`).
DenseMatrix<Rational> differential_matrix(const MinimalModel& model, const GradedPiece& from, const GradedPiece& to);
/// rho : M^k -> Lambda^k as a matrix.
DenseMatrix<Rational> realization_matrix(const MinimalModel& model, const GradedPiece& piece);

/// Cocycles of degree k (rows, reduced echelon).
DenseMatrix<Rational> cocycles(const MinimalModel& model, int k);

struct ModelClass {
  Polynomial representative;
  Multivector<Rational> image;
};

/// Basis of H^k(model) (complement of the coboundaries among cocycles) with rho-images.
std::vector<ModelClass> model_cohomology(const MinimalModel& model, int k);

/// Builds the model through degree d_max. Closed generators of each degree are
/// chosen along the filtration ker N^t subset ker (N^t)^2 subset ... of U^q so
/// that the twist only refers to earlier generators.
MinimalModel model_of_U(const UBasis& u, const LinearEndo<Rational>& nilpotent, int d_max);
MinimalModel model_of_U(const AlmostAbelianSpec& spec, int d_max);

struct QuasiIsoDegree {
  int degree = 0;
  int cohomology_dim = 0;
  int u_dim = 0;
  int image_rank = 0;
  bool pass = false;
};

struct QuasiIsoReport {
  std::vector<QuasiIsoDegree> degrees;
  bool pass() const;
};

QuasiIsoReport verify_quasi_iso(const MinimalModel& model, const UBasis& u);
QuasiIsoReport verify_quasi_iso(const MinimalModel& model, const AlmostAbelianSpec& spec);

/// d o d on every generator.
bool differential_squares_to_zero(const MinimalModel& model);
/// No generator differential has a constant or linear term.
bool is_minimal(const MinimalModel& model);
/// rho o d = 0 on generators and rho sends closed generators to their representatives.
bool realization_is_chain_map(const MinimalModel& model);

/// Stable text dump (see README for the format).
std::string dump_model(const MinimalModel& model);
nlohmann::json model_to_json(const MinimalModel& model);
MinimalModel model_from_json(const nlohmann::json& doc);

nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& doc);
nlohmann::json multivector_to_json(const Multivector<Rational>& x);
Multivector<Rational> multivector_from_json(const nlohmann::json& doc, int dim, int degree);

}  // namespace almab
