#include "almab/sullivan.hpp"

#include <sstream>

namespace almab {

using nlohmann::json;

namespace {

constexpr int kMaxKillRounds = 64;

}  // namespace

int MinimalModel::add_generator(int degree, Polynomial differential, Multivector<Rational> rho, bool closed) {
  const int id = algebra_.add_generator("g" + std::to_string(algebra_.size() + 1), degree, std::move(differential));
  if (rho.dim() != fiber_dim_ || rho.degree() != degree) {
    rho = Multivector<Rational>(fiber_dim_, degree);
  }
  rho_.push_back(std::move(rho));
  closed_.push_back(closed);
  return id;
}

Multivector<Rational> MinimalModel::realize(const Polynomial& p, int degree) const {
  Multivector<Rational> out(fiber_dim_, degree);
  for (const auto& [m, c] : p.terms()) {
    Multivector<Rational> term = Multivector<Rational>::unit(fiber_dim_, c);
    for (const auto& [id, e] : m) {
      for (int r = 0; r < e && !term.is_zero(); ++r) term = wedge(term, rho(id));
    }
    if (term.is_zero()) continue;
    if (term.degree() != degree) throw std::invalid_argument("polynomial is not homogeneous of the requested degree");
    out += term;
  }
  return out;
}

std::vector<std::pair<int, int>> MinimalModel::generator_counts() const {
  std::vector<std::pair<int, int>> counts(static_cast<std::size_t>(std::max(degree_bound_, 0) + 1), {0, 0});
  for (int id = 0; id < size(); ++id) {
    const auto d = static_cast<std::size_t>(degree(id));
    if (d >= counts.size()) counts.resize(d + 1, {0, 0});
    (closed(id) ? counts[d].first : counts[d].second) += 1;
  }
  return counts;
}

MinimalModel MinimalModel::without_generator(int removed) const {
  MinimalModel out(fiber_dim_, degree_bound_);
  auto remap = [removed](int id) { return id > removed ? id - 1 : id; };
  for (int id = 0; id < size(); ++id) {
    if (id == removed) continue;
    Polynomial d;
    for (const auto& [m, c] : differential_of(id).terms()) {
      GenMonomial shifted;
      bool mentions = false;
      for (const auto& [g, e] : m) {
        if (g == removed) mentions = true;
        shifted.emplace_back(remap(g), e);
      }
      if (!mentions) d.add_term(shifted, c);
    }
    out.add_generator(degree(id), d, rho(id), closed(id));
  }
  return out;
}

GradedPiece graded_piece(const MinimalModel& model, int k, int limit) {
  return {k, PolynomialBasis(model.algebra().monomials(k, limit))};
}

DenseMatrix<Rational> differential_matrix(const MinimalModel& model, const GradedPiece& from, const GradedPiece& to) {
  DenseMatrix<Rational> m = DenseMatrix<Rational>::Constant(to.basis.size(), from.basis.size(), Rational(0));
  for (int j = 0; j < from.basis.size(); ++j) {
    Polynomial p;
    p.add_term(from.basis[j], Rational(1));
    const Polynomial dp = model.d(p);
    for (const auto& [mono, c] : dp.terms()) {
      const int i = to.basis.index(mono);
      if (i < 0) throw InvariantViolation("differential leaves the graded piece");
      m(i, j) = c;
    }
  }
  return m;
}

DenseMatrix<Rational> realization_matrix(const MinimalModel& model, const GradedPiece& piece) {
  ExteriorBasis target(model.fiber_dim(), std::min(piece.degree, model.fiber_dim()));
  const bool empty_target = piece.degree > model.fiber_dim();
  DenseMatrix<Rational> m =
      DenseMatrix<Rational>::Constant(empty_target ? 0 : target.size(), piece.basis.size(), Rational(0));
  if (empty_target) return m;
  for (int j = 0; j < piece.basis.size(); ++j) {
    Polynomial p;
    p.add_term(piece.basis[j], Rational(1));
    const auto image = model.realize(p, piece.degree);
    for (const auto& [mono, c] : image.terms()) m(target.index(mono), j) = c;
  }
  return m;
}

DenseMatrix<Rational> cocycles(const MinimalModel& model, int k) {
  GradedPiece from = graded_piece(model, k);
  GradedPiece to = graded_piece(model, k + 1);
  return kernel<Rational>(differential_matrix(model, from, to));
}

namespace {

/// Cocycle classes of degree k modulo coboundaries, as reduced representatives.
std::vector<DenseVector<Rational>> class_representatives(const DenseMatrix<Rational>& cocycle_rows,
                                                         const DenseMatrix<Rational>& boundary_rows,
                                                         Eigen::Index cols) {
  DenseMatrix<Rational> boundaries = boundary_rows.rows() > 0 ? boundary_rows : DenseMatrix<Rational>(0, cols);
  Echelon<Rational> eb = rref<Rational>(boundaries);
  SpanBuilder<Rational> span(boundaries.rows() > 0 ? boundaries : DenseMatrix<Rational>(0, cols));
  std::vector<DenseVector<Rational>> out;
  for (Eigen::Index r = 0; r < cocycle_rows.rows(); ++r) {
    DenseVector<Rational> v = cocycle_rows.row(r).transpose();
    if (span.add(v)) out.push_back(reduce<Rational>(v, eb));
  }
  return out;
}

DenseMatrix<Rational> boundary_rows(const MinimalModel& model, int k, const GradedPiece& target) {
  if (k <= 0) return DenseMatrix<Rational>(0, target.basis.size());
  GradedPiece from = graded_piece(model, k - 1);
  return differential_matrix(model, from, target).transpose();
}

/// Vectors of span(basis) killed by N^j, in reduced echelon form.
std::vector<Multivector<Rational>> filtration_level(const std::vector<Multivector<Rational>>& basis,
                                                    const LinearEndo<Rational>& N, int j, int n, int q) {
  ExteriorBasis eb(n, q);
  std::vector<Multivector<Rational>> images;
  for (const auto& b : basis) {
    Multivector<Rational> v = b;
    for (int r = 0; r < j; ++r) v = derivation_apply(N, v);
    images.push_back(v);
  }
  // coefficient vectors c with sum c_i N^j(b_i) = 0
  DenseMatrix<Rational> ker = kernel<Rational>(rows_of(images, eb).transpose());
  std::vector<Multivector<Rational>> out;
  for (Eigen::Index r = 0; r < ker.rows(); ++r) {
    Multivector<Rational> v(n, q);
    for (Eigen::Index i = 0; i < ker.cols(); ++i) {
      Multivector<Rational> term = basis[static_cast<std::size_t>(i)];
      term *= ker(r, i);
      v += term;
    }
    out.push_back(v);
  }
  return echelon_basis(out, n, q);
}

}  // namespace

std::vector<ModelClass> model_cohomology(const MinimalModel& model, int k) {
  if (k > model.degree_bound()) {
    throw std::out_of_range("degree " + std::to_string(k) + " exceeds the model bound " +
                            std::to_string(model.degree_bound()));
  }
  if (k < 0) return {};
  GradedPiece piece = graded_piece(model, k);
  DenseMatrix<Rational> z = cocycles(model, k);
  auto reps = class_representatives(z, boundary_rows(model, k, piece), piece.basis.size());
  std::vector<ModelClass> out;
  for (const auto& v : reps) {
    Polynomial p = piece.basis.polynomial(v);
    out.push_back({p, model.realize(p, k)});
  }
  return out;
}

MinimalModel model_of_U(const UBasis& u, const LinearEndo<Rational>& nilpotent, int d_max) {
  if (d_max < 1) throw std::invalid_argument("degree bound must be at least 1");
  const int n = u.n;
  MinimalModel model(n, d_max);

  for (int q = 1; q <= d_max; ++q) {
    // closed generators: complement of rho*(H^q) in U^q, filtration adapted
    if (q <= n && u.dimension(q) > 0) {
      ExteriorBasis eb(n, q);
      GradedPiece piece = graded_piece(model, q);
      DenseMatrix<Rational> z = cocycles(model, q);
      DenseMatrix<Rational> realized = realization_matrix(model, piece);
      DenseMatrix<Rational> image = z.rows() > 0 ? DenseMatrix<Rational>(z * realized.transpose())
                                                 : DenseMatrix<Rational>(0, eb.size());
      SpanBuilder<Rational> span(image);
      const auto& uq = u[q];
      for (int j = 1; span.rank() < static_cast<Eigen::Index>(uq.size()); ++j) {
        if (j > q * n + 1) throw InvariantViolation("nilpotent filtration of U does not exhaust U");
        for (const auto& v : filtration_level(uq, nilpotent, j, n, q)) {
          if (span.add(to_dense(v, eb))) model.add_generator(q, {}, v, true);
        }
      }
    }

    // non-closed generators killing ker(rho*) on H^{q+1}
    bool settled = false;
    for (int round = 0; round < kMaxKillRounds; ++round) {
      GradedPiece piece_q = graded_piece(model, q);
      GradedPiece piece_q1 = graded_piece(model, q + 1);
      GradedPiece piece_q2 = graded_piece(model, q + 2);
      DenseMatrix<Rational> d1 = differential_matrix(model, piece_q1, piece_q2);
      DenseMatrix<Rational> r1 = realization_matrix(model, piece_q1);
      DenseMatrix<Rational> dying = kernel<Rational>(vstack<Rational>(d1, r1));
      auto reps = class_representatives(dying, boundary_rows(model, q + 1, piece_q1), piece_q1.basis.size());
      if (reps.empty()) {
        settled = true;
        break;
      }
      for (const auto& v : reps) {
        model.add_generator(q, piece_q1.basis.polynomial(v), Multivector<Rational>(n, q), false);
      }
    }
    if (!settled) {
      throw InvariantViolation("model construction did not stabilize in degree " + std::to_string(q) +
                               " (finite-type bound exceeded)");
    }
  }
  return model;
}

MinimalModel model_of_U(const AlmostAbelianSpec& spec, int d_max) {
  return model_of_U(compute_U(spec), nilpotent_log(spec), d_max);
}

bool QuasiIsoReport::pass() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.pass; });
}

QuasiIsoReport verify_quasi_iso(const MinimalModel& model, const UBasis& u) {
  QuasiIsoReport report;
  for (int i = 0; i <= model.degree_bound(); ++i) {
    QuasiIsoDegree entry;
    entry.degree = i;
    const auto classes = model_cohomology(model, i);
    entry.cohomology_dim = static_cast<int>(classes.size());
    entry.u_dim = u.dimension(i);
    bool inside = true;
    std::vector<Multivector<Rational>> images;
    for (const auto& c : classes) {
      if (!in_span(c.image, i <= u.n ? u[i] : std::vector<Multivector<Rational>>{})) inside = false;
      if (!c.image.is_zero()) images.push_back(c.image);
    }
    entry.image_rank = i <= u.n ? static_cast<int>(echelon_basis(images, u.n, i).size()) : 0;
    entry.pass = inside && entry.cohomology_dim == entry.u_dim && entry.image_rank == entry.u_dim;
    report.degrees.push_back(entry);
  }
  return report;
}

QuasiIsoReport verify_quasi_iso(const MinimalModel& model, const AlmostAbelianSpec& spec) {
  return verify_quasi_iso(model, compute_U(spec));
}

bool differential_squares_to_zero(const MinimalModel& model) {
  for (int id = 0; id < model.size(); ++id) {
    if (!model.d(model.differential_of(id)).is_zero()) return false;
  }
  return true;
}

bool is_minimal(const MinimalModel& model) {
  for (int id = 0; id < model.size(); ++id) {
    for (const auto& [m, c] : model.differential_of(id).terms()) {
      int factors = 0;
      for (const auto& [g, e] : m) {
        if (g >= id) return false;
        factors += e;
      }
      if (factors < 2) return false;
    }
  }
  return true;
}

bool realization_is_chain_map(const MinimalModel& model) {
  for (int id = 0; id < model.size(); ++id) {
    const Polynomial& d = model.differential_of(id);
    if (!model.realize(d, model.degree(id) + 1).is_zero()) return false;
    if (model.closed(id) != d.is_zero()) return false;
    if (model.closed(id) == model.rho(id).is_zero()) return false;
  }
  return true;
}

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json mono = json::array();
    for (const auto& [id, e] : m) mono.push_back(json::array({id + 1, e}));
    terms.push_back(json::array({to_string(c), mono}));
  }
  return terms;
}

Polynomial polynomial_from_json(const json& doc) {
  Polynomial p;
  for (const auto& term : doc) {
    GenMonomial m;
    for (const auto& factor : term.at(1)) m.emplace_back(factor.at(0).get<int>() - 1, factor.at(1).get<int>());
    std::sort(m.begin(), m.end());
    p.add_term(m, parse_rational(term.at(0).get<std::string>()));
  }
  return p;
}

json multivector_to_json(const Multivector<Rational>& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms()) terms.push_back(json::array({to_string(c), monomial_indices(m)}));
  return terms;
}

Multivector<Rational> multivector_from_json(const json& doc, int dim, int degree) {
  Multivector<Rational> x(dim, degree);
  for (const auto& term : doc) {
    auto indices = term.at(1).get<std::vector<int>>();
    if (static_cast<int>(indices.size()) != degree) throw std::invalid_argument("multivector term of wrong degree");
    x += Multivector<Rational>::monomial(dim, indices, parse_rational(term.at(0).get<std::string>()));
  }
  return x;
}

std::string dump_model(const MinimalModel& model) {
  std::ostringstream os;
  os << "minimal-model v1 fiber_dim=" << model.fiber_dim() << " degree_bound=" << model.degree_bound() << "\n";
  for (int id = 0; id < model.size(); ++id) {
    os << model.name(id) << " deg=" << model.degree(id) << (model.closed(id) ? " closed" : " open")
       << " d=" << model.algebra().format(model.differential_of(id)) << " rho=" << model.rho(id).to_string() << "\n";
  }
  return os.str();
}

json model_to_json(const MinimalModel& model) {
  json doc;
  doc["fiber_dim"] = model.fiber_dim();
  doc["degree_bound"] = model.degree_bound();
  json gens = json::array();
  for (int id = 0; id < model.size(); ++id) {
    json g;
    g["id"] = id + 1;
    g["name"] = model.name(id);
    g["degree"] = model.degree(id);
    g["closed"] = model.closed(id);
    g["d"] = polynomial_to_json(model.differential_of(id));
    g["rho"] = multivector_to_json(model.rho(id));
    gens.push_back(g);
  }
  doc["generators"] = gens;
  return doc;
}

MinimalModel model_from_json(const json& doc) {
  MinimalModel model(doc.at("fiber_dim").get<int>(), doc.at("degree_bound").get<int>());
  int expected = 1;
  for (const auto& g : doc.at("generators")) {
    if (g.at("id").get<int>() != expected++) throw std::invalid_argument("model generators must be listed in id order");
    const int degree = g.at("degree").get<int>();
    model.add_generator(degree, polynomial_from_json(g.at("d")),
                        multivector_from_json(g.at("rho"), model.fiber_dim(), degree), g.at("closed").get<bool>());
  }
  return model;
}

}  // namespace almab
