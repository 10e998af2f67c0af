#include "almab/formality.hpp"

#include <sstream>

namespace almab {

using nlohmann::json;

namespace {

/// Monomials of degree q in closed generators only; theta of a closed
/// generator lives in their span.
std::vector<GenMonomial> closed_monomials(const MinimalModel& model, int q) {
  std::vector<GenMonomial> out;
  for (const auto& m : model.algebra().monomials(q)) {
    bool closed = true;
    for (const auto& [id, e] : m) closed = closed && model.closed(id);
    if (closed) out.push_back(m);
  }
  return out;
}

Polynomial twist_of_closed(const MinimalModel& model, const LinearEndo<Rational>& nilpotent, int id, bool& ambiguous) {
  const int q = model.degree(id);
  const Multivector<Rational> target = derivation_apply(nilpotent, model.rho(id));
  if (target.is_zero()) {
    ambiguous = false;
    return {};
  }
  GradedPiece piece{q, PolynomialBasis(closed_monomials(model, q))};
  DenseMatrix<Rational> r = realization_matrix(model, piece);
  ExteriorBasis eb(model.fiber_dim(), q);
  auto c = solve<Rational>(r, to_dense(target, eb));
  if (!c) throw InvariantViolation("N^t(rho(" + model.name(id) + ")) is not realized by closed generators");
  ambiguous = rank<Rational>(r) < r.cols();
  return piece.basis.polynomial(*c);
}

/// Solves d p = rhs with rho(p) = 0 over monomials of degree q in generators with id < limit.
std::optional<Polynomial> exact_preimage(const MinimalModel& model, const Polynomial& rhs, int q, int limit,
                                         bool& ambiguous) {
  GradedPiece from = graded_piece(model, q, limit);
  GradedPiece to = graded_piece(model, q + 1);
  if (from.basis.size() == 0) {
    if (!rhs.is_zero()) return std::nullopt;
    ambiguous = false;
    return Polynomial{};
  }
  DenseMatrix<Rational> dm = differential_matrix(model, from, to);
  DenseMatrix<Rational> rm = realization_matrix(model, from);
  DenseMatrix<Rational> system = vstack<Rational>(dm, rm);
  DenseVector<Rational> b = DenseVector<Rational>::Constant(system.rows(), Rational(0));
  b.head(dm.rows()) = to.basis.coordinates(rhs);
  auto c = solve<Rational>(system, b);
  if (!c) return std::nullopt;
  ambiguous = rank<Rational>(system) < system.cols();
  return from.basis.polynomial(*c);
}

/// Number of applications of theta needed to reach zero (capped).
int twist_depth(const MinimalModel& model, const TwistAssignment& twist, Polynomial p, int cap) {
  int depth = 0;
  while (!p.is_zero() && depth < cap) {
    p = apply_twist(model, twist, p);
    ++depth;
  }
  return depth;
}

}  // namespace

bool TwistAssignment::any_ambiguous() const {
  return std::find(ambiguous.begin(), ambiguous.end(), true) != ambiguous.end();
}

bool TwistAssignment::is_zero() const {
  return std::all_of(theta.begin(), theta.end(), [](const Polynomial& p) { return p.is_zero(); });
}

TwistAssignment twist_derivation(const MinimalModel& model, const LinearEndo<Rational>& nilpotent) {
  TwistAssignment twist;
  for (int id = 0; id < model.size(); ++id) {
    bool ambiguous = false;
    Polynomial value;
    if (model.closed(id)) {
      value = twist_of_closed(model, nilpotent, id, ambiguous);
    } else {
      // theta(dz) is exact with zero realization; prefer a preimage in earlier generators
      const Polynomial rhs = apply_twist(model, twist, model.differential_of(id));
      auto p = exact_preimage(model, rhs, model.degree(id), id, ambiguous);
      if (!p) p = exact_preimage(model, rhs, model.degree(id), -1, ambiguous);
      if (!p) throw InvariantViolation("no twist value for " + model.name(id) + " is compatible with D^2 = 0");
      value = *p;
    }
    twist.theta.push_back(value);
    twist.ambiguous.push_back(ambiguous);
  }
  return twist;
}

TwistAssignment twist_derivation(const MinimalModel& model, const AlmostAbelianSpec& spec) {
  return twist_derivation(model, nilpotent_log(spec));
}

Polynomial apply_twist(const MinimalModel& model, const TwistAssignment& twist, const Polynomial& p) {
  std::vector<Polynomial> values = twist.theta;
  values.resize(static_cast<std::size_t>(model.size()));
  return model.algebra().apply_derivation(values, 0, p);
}

bool twist_commutes_with_d(const MinimalModel& model, const TwistAssignment& twist) {
  for (int id = 0; id < model.size(); ++id) {
    const Polynomial lhs = model.d(twist.theta.at(static_cast<std::size_t>(id)));
    const Polynomial rhs = apply_twist(model, twist, model.differential_of(id));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool twist_is_nilpotent(const MinimalModel& model, const TwistAssignment& twist, int degree) {
  for (int k = 0; k <= degree; ++k) {
    const auto monomials = model.algebra().monomials(k);
    const int cap = static_cast<int>(monomials.size()) + 1;
    for (const auto& m : monomials) {
      Polynomial p;
      p.add_term(m, Rational(1));
      if (twist_depth(model, twist, p, cap) >= cap) return false;
    }
  }
  return true;
}

bool twist_realizes_nilpotent(const MinimalModel& model, const TwistAssignment& twist,
                              const LinearEndo<Rational>& nilpotent) {
  for (int id = 0; id < model.size(); ++id) {
    const int q = model.degree(id);
    if (!(model.realize(twist.theta.at(static_cast<std::size_t>(id)), q) == derivation_apply(nilpotent, model.rho(id)))) {
      return false;
    }
  }
  return true;
}

TwistedModel::TwistedModel(MinimalModel base, TwistAssignment twist) : base_(std::move(base)), twist_(std::move(twist)) {
  algebra_.add_generator("A", 1);
  for (int id = 0; id < base_.size(); ++id) algebra_.add_generator(base_.name(id), base_.degree(id));
  const Polynomial a = Polynomial::generator(kA);
  for (int id = 0; id < base_.size(); ++id) {
    Polynomial value = embed(base_.differential_of(id));
    value += algebra_.multiply(a, embed(twist_.theta.at(static_cast<std::size_t>(id))));
    algebra_.set_differential(id + 1, value);
  }
}

Polynomial TwistedModel::embed(const Polynomial& p) const {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    GenMonomial shifted;
    for (const auto& [id, e] : m) shifted.emplace_back(id + 1, e);
    out.add_term(shifted, c);
  }
  return out;
}

Multivector<Rational> TwistedModel::realize(const Polynomial& p, int degree) const {
  const int total = base_.fiber_dim() + 1;
  Multivector<Rational> out(total, degree);
  for (const auto& [m, c] : p.terms()) {
    Multivector<Rational> term = Multivector<Rational>::unit(total, c);
    for (const auto& [id, e] : m) {
      const Multivector<Rational> factor =
          id == kA ? Multivector<Rational>::monomial(total, {total}) : base_.rho(id - 1).embed(total);
      for (int r = 0; r < e; ++r) term = wedge(term, factor);
    }
    if (!term.is_zero()) out += term;
  }
  return out;
}

TwistedModel twisted_model(const MinimalModel& model, const AlmostAbelianSpec& spec) {
  return TwistedModel(model, twist_derivation(model, spec));
}

bool twisted_differential_squares_to_zero(const TwistedModel& tm) {
  for (int id = 0; id < tm.algebra().size(); ++id) {
    if (!tm.D(tm.D_of_generator(id)).is_zero()) return false;
  }
  return true;
}

bool FormalityVerdict::pass() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.pass; });
}

std::optional<int> FormalityVerdict::first_failure() const {
  for (const auto& d : degrees) {
    if (!d.pass) return d.degree;
  }
  return std::nullopt;
}

std::string FormalityVerdict::summary() const {
  std::ostringstream os;
  if (auto f = first_failure()) {
    os << "not " << *f << "-formal";
  } else {
    os << "formal through degree " << max_checked_degree;
  }
  os << " (checked through degree " << max_checked_degree << " at model bound " << model_bound << ")";
  return os.str();
}

FormalityVerdict k_formality(const TwistedModel& tm, int k) {
  const MinimalModel& model = tm.base();
  if (k > model.degree_bound()) {
    throw std::out_of_range("formality degree " + std::to_string(k) + " exceeds the model bound " +
                            std::to_string(model.degree_bound()));
  }
  FormalityVerdict verdict;
  verdict.max_checked_degree = k;
  verdict.model_bound = model.degree_bound();
  for (int id = 0; id < model.size(); ++id) {
    if (tm.twist().ambiguous.at(static_cast<std::size_t>(id))) verdict.ambiguous_generators.push_back(id);
  }
  for (int i = 1; i <= k; ++i) {
    FormalityDegree entry;
    entry.degree = i;
    GradedPiece piece = graded_piece(model, i);
    DenseMatrix<Rational> z = cocycles(model, i);
    entry.kernel_dim = static_cast<int>(z.rows());
    int best_depth = 0;
    const int cap = piece.basis.size() + 1;
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      Polynomial v = piece.basis.polynomial(z.row(r).transpose());
      Polynomial image = apply_twist(model, tm.twist(), v);
      if (image.is_zero()) continue;
      entry.pass = false;
      // report the element furthest from the kernel of theta
      const int depth = twist_depth(model, tm.twist(), v, cap);
      if (depth > best_depth) {
        best_depth = depth;
        entry.witness = v;
        entry.witness_twist = image;
      }
    }
    verdict.degrees.push_back(entry);
  }
  return verdict;
}

FormalityVerdict k_formality(const AlmostAbelianSpec& spec, int k, int d_max) {
  const int bound = std::max(k, d_max);
  MinimalModel model = model_of_U(spec, std::max(bound, 1));
  return k_formality(twisted_model(model, spec), k);
}

bool degree_one_predicts_failure(const AlmostAbelianSpec& spec) {
  const LinearEndo<Rational> N = nilpotent_log(spec);
  for (const auto& v : compute_U(spec, 1)) {
    if (!derivation_apply(N, v).is_zero()) return true;
  }
  return false;
}

std::string total_model_dump(const TwistedModel& tm) {
  const MinimalModel& base = tm.base();
  std::ostringstream os;
  os << "DA = 0\n";
  for (int id = 0; id < base.size(); ++id) {
    const Polynomial& dx = base.differential_of(id);
    Polynomial y = tm.twist().theta.at(static_cast<std::size_t>(id));
    // A.y = (-1)^{|y|} y.A
    if (base.degree(id) % 2 != 0) y *= Rational(-1);
    std::string rhs;
    if (!dx.is_zero()) rhs = base.algebra().format(dx);
    if (!y.is_zero()) {
      std::string twist = base.algebra().format(y);
      twist = y.terms().size() == 1 ? twist + "*A" : "(" + twist + ")*A";
      if (rhs.empty()) {
        rhs = twist;
      } else if (twist.front() == '-') {
        rhs += " - " + twist.substr(1);
      } else {
        rhs += " + " + twist;
      }
    }
    os << "D" << base.name(id) << " = " << (rhs.empty() ? "0" : rhs) << "\n";
  }
  return os.str();
}

json total_model_to_json(const TwistedModel& tm) {
  json doc;
  json gens = json::array();
  for (int id = 0; id < tm.algebra().size(); ++id) {
    json g;
    g["id"] = id + 1;
    g["name"] = tm.algebra().generator(id).name;
    g["degree"] = tm.algebra().generator(id).degree;
    g["D"] = polynomial_to_json(tm.D_of_generator(id));
    gens.push_back(g);
  }
  doc["generators"] = gens;
  json theta = json::array();
  for (int id = 0; id < tm.base().size(); ++id) {
    theta.push_back({{"generator", tm.base().name(id)},
                     {"value", polynomial_to_json(tm.twist().theta.at(static_cast<std::size_t>(id)))},
                     {"ambiguous", static_cast<bool>(tm.twist().ambiguous.at(static_cast<std::size_t>(id)))}});
  }
  doc["theta"] = theta;
  doc["dump"] = total_model_dump(tm);
  return doc;
}

}  // namespace almab
