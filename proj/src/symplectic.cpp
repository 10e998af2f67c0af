#include "almab/symplectic.hpp"

#include "almab/cohomology.hpp"
#include "almab/formality.hpp"

namespace almab {

using nlohmann::json;

std::vector<Multivector<Rational>> closed_two_classes(const AlmostAbelianSpec& spec) {
  const int n = spec.n;
  if (n < 2) return {};
  const auto u2 = compute_U(spec, 2);
  if (u2.empty()) return {};
  const LinearEndo<Rational> N = nilpotent_log(spec);
  ExteriorBasis eb(n, 2);
  std::vector<Multivector<Rational>> images;
  for (const auto& f : u2) images.push_back(derivation_apply(N, f));
  DenseMatrix<Rational> ker = kernel<Rational>(rows_of(images, eb).transpose());
  std::vector<Multivector<Rational>> out;
  for (Eigen::Index r = 0; r < ker.rows(); ++r) {
    Multivector<Rational> f(n, 2);
    for (Eigen::Index i = 0; i < ker.cols(); ++i) f += ker(r, i) * u2[static_cast<std::size_t>(i)];
    out.push_back(f);
  }
  return echelon_basis(out, n, 2);
}

ParamPolynomial nondegeneracy_polynomial(const std::vector<Multivector<Rational>>& two_forms,
                                         const std::vector<Multivector<Rational>>& one_forms) {
  ParamPolynomial out;
  const auto r = static_cast<int>(two_forms.size());
  const auto s = static_cast<int>(one_forms.size());
  if (s == 0) return out;
  const int dim = one_forms.front().dim();
  if (dim % 2 == 0) throw std::invalid_argument("fiber dimension must be odd");
  const int m = (dim + 1) / 2;

  // F^{m-1} = (m-1)! sum over multisets prod F_i^{e_i} / e_i!
  std::vector<int> exps(static_cast<std::size_t>(r + s), 0);
  Rational factorial(1);
  for (int i = 2; i < m; ++i) factorial *= i;
  std::function<void(int, int, const Multivector<Rational>&, Rational)> expand =
      [&](int start, int remaining, const Multivector<Rational>& partial, Rational coeff) {
        if (partial.is_zero()) return;
        if (remaining == 0) {
          for (int j = 0; j < s; ++j) {
            Rational top = top_coefficient(wedge(partial, one_forms[static_cast<std::size_t>(j)]));
            if (top.is_zero()) continue;
            exps[static_cast<std::size_t>(r + j)] = 1;
            Rational& slot = out[exps];
            slot += coeff * top;
            if (slot.is_zero()) out.erase(exps);
            exps[static_cast<std::size_t>(r + j)] = 0;
          }
          return;
        }
        for (int i = start; i < r; ++i) {
          Multivector<Rational> next = partial;
          Rational c = coeff;
          for (int e = 1; e <= remaining; ++e) {
            next = wedge(next, two_forms[static_cast<std::size_t>(i)]);
            if (next.is_zero()) break;
            c /= e;
            exps[static_cast<std::size_t>(i)] = e;
            expand(i + 1, remaining - e, next, c);
          }
          exps[static_cast<std::size_t>(i)] = 0;
        }
      };
  expand(0, m - 1, Multivector<Rational>::unit(dim), factorial);
  return out;
}

Rational evaluate(const ParamPolynomial& p, const std::vector<Rational>& point) {
  Rational total(0);
  for (const auto& [exps, c] : p) {
    Rational term = c;
    for (std::size_t i = 0; i < exps.size() && !term.is_zero(); ++i) {
      for (int e = 0; e < exps[i]; ++e) term *= point.at(i);
    }
    total += term;
  }
  return total;
}

std::optional<std::vector<int>> grid_search(int count, int bound,
                                            const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> point(static_cast<std::size_t>(count), 0);
  bool found = false;
  std::function<void(int, int)> fill = [&](int pos, int remaining) {
    if (found) return;
    if (pos == count - 1) {
      if (remaining > bound) return;
      point[static_cast<std::size_t>(pos)] = remaining;
      found = visit(point);
      return;
    }
    for (int v = std::min(remaining, bound); v >= 0 && !found; --v) {
      point[static_cast<std::size_t>(pos)] = v;
      fill(pos + 1, remaining - v);
    }
  };
  if (count == 0) {
    if (visit(point)) return point;
    return std::nullopt;
  }
  for (int norm = 0; norm <= count * bound && !found; ++norm) fill(0, norm);
  if (found) return point;
  return std::nullopt;
}

SymplecticWitness make_witness(const AlmostAbelianSpec& spec, const Multivector<Rational>& F,
                               const Multivector<Rational>& eta) {
  if (F.dim() != spec.n || F.degree() != 2 || eta.dim() != spec.n || eta.degree() != 1) {
    throw std::invalid_argument("witness must consist of a fiber 2-form and a fiber 1-form");
  }
  const int total = spec.n + 1;
  SymplecticWitness w{F, eta, F.embed(total), {}};
  w.omega += wedge(eta.embed(total), Multivector<Rational>::monomial(total, {total}));
  return w;
}

bool SymplecticCertificate::pass() const {
  return omega_consistent && F_in_U && eta_in_U && F_twist_free && closed && !omega_top.is_zero() && expansion_ok &&
         F_power_vanishes;
}

SymplecticCertificate verify_symplectic(const AlmostAbelianSpec& spec, const SymplecticWitness& w) {
  SymplecticCertificate cert;
  const int n = spec.n;
  const int total = n + 1;
  if (total % 2 != 0) throw HypothesisError("symplectic undefined: total dimension " + std::to_string(total) + " is odd");
  const int m = total / 2;

  const SymplecticWitness rebuilt = make_witness(spec, w.F, w.eta);
  cert.omega_consistent = rebuilt.omega == w.omega;
  cert.F_in_U = in_span(w.F, compute_U(spec, 2));
  cert.eta_in_U = in_span(w.eta, compute_U(spec, 1));
  cert.F_twist_free = derivation_apply(nilpotent_log(spec), w.F).is_zero();
  cert.closed = ce_differential(spec, w.omega.cast<ScalarLC>()).is_zero();

  const Multivector<Rational> f_power = power(w.F, m - 1);
  cert.top_F_eta = top_coefficient(wedge(f_power, w.eta));
  cert.omega_top = top_coefficient(power(w.omega, m));
  cert.expansion_ok = cert.omega_top == Rational(m) * cert.top_F_eta;
  cert.F_power_vanishes = power(w.F, m).is_zero();
  return cert;
}

SearchResult find_symplectic(const AlmostAbelianSpec& spec) {
  SearchResult result;
  const int total = spec.n + 1;
  if (total % 2 != 0) {
    result.status = SearchStatus::Undefined;
    result.message = "symplectic undefined: total dimension " + std::to_string(total) + " is odd";
    return result;
  }
  const int m = total / 2;
  const auto two = closed_two_classes(spec);
  const auto one = compute_U(spec, 1);
  result.parameter_count = static_cast<int>(two.size() + one.size());
  result.grid_bound = m;

  {
    MinimalModel model = model_of_U(spec, 2);
    TwistAssignment twist = twist_derivation(model, spec);
    result.global_condition = true;
    for (const auto& mono : model.algebra().monomials(2)) {
      Polynomial p;
      p.add_term(mono, Rational(1));
      if (!apply_twist(model, twist, p).is_zero()) result.global_condition = false;
    }
  }

  const ParamPolynomial P = nondegeneracy_polynomial(two, one);
  if (P.empty()) {
    result.status = SearchStatus::NoneFound;
    result.message = "none found at search bound: top(F^" + std::to_string(m - 1) +
                     " ^ eta) vanishes identically on closed U^2 x U^1 (no symplectic form of this type)";
    return result;
  }

  std::vector<Rational> values;
  auto hit = grid_search(result.parameter_count, m, [&](const std::vector<int>& point) {
    values.assign(point.begin(), point.end());
    return !evaluate(P, values).is_zero();
  });
  if (!hit) throw InvariantViolation("nonzero nondegeneracy polynomial vanishes on its whole grid");

  Multivector<Rational> F(spec.n, 2);
  Multivector<Rational> eta(spec.n, 1);
  for (std::size_t i = 0; i < two.size(); ++i) F += values[i] * two[i];
  for (std::size_t j = 0; j < one.size(); ++j) eta += values[two.size() + j] * one[j];
  SymplecticWitness w = make_witness(spec, F, eta);
  w.parameters = values;
  SymplecticCertificate cert = verify_symplectic(spec, w);
  if (!cert.pass()) throw InvariantViolation("search produced a witness that fails verification");
  result.status = SearchStatus::Found;
  result.message = "symplectic form found";
  result.witness = w;
  result.certificate = cert;
  return result;
}

json witness_to_json(const SymplecticWitness& w) {
  json doc;
  doc["F"] = multivector_to_json(w.F);
  doc["eta"] = multivector_to_json(w.eta);
  doc["omega"] = multivector_to_json(w.omega);
  json params = json::array();
  for (const auto& p : w.parameters) params.push_back(to_string(p));
  doc["parameters"] = params;
  return doc;
}

SymplecticWitness witness_from_json(const json& doc, int n) {
  SymplecticWitness w{multivector_from_json(doc.at("F"), n, 2), multivector_from_json(doc.at("eta"), n, 1),
                      multivector_from_json(doc.at("omega"), n + 1, 2), {}};
  if (doc.contains("parameters")) {
    for (const auto& p : doc["parameters"]) w.parameters.push_back(parse_rational(p.get<std::string>()));
  }
  return w;
}

}  // namespace almab
