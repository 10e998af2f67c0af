#include "almab/report.hpp"

#include "almab/cohomology.hpp"
#include "almab/formality.hpp"
#include "almab/symplectic.hpp"

#include <sstream>

namespace almab {

using nlohmann::json;

namespace {

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::NoneFound:
      return "none found at search bound";
    case SearchStatus::Undefined:
      return "symplectic undefined";
  }
  return "";
}

json multivector_list(const std::vector<Multivector<Rational>>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(multivector_to_json(x));
  return out;
}

json text_list(const std::vector<Multivector<Rational>>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

json unipotent_section(const AlmostAbelianSpec& spec) {
  const UBasis u = compute_U(spec);
  json dims = json::array();
  json bases = json::array();
  json text = json::array();
  for (int k = 0; k <= spec.n; ++k) {
    dims.push_back(u.dimension(k));
    bases.push_back(multivector_list(u[k]));
    text.push_back(text_list(u[k]));
  }
  return {{"dimensions", dims}, {"bases", bases}, {"text", text}};
}

json cohomology_section(const AlmostAbelianSpec& spec) {
  if (!satisfies_modification_hypothesis(spec)) {
    return {{"status", "unavailable"},
            {"reason", "modification hypothesis not satisfied: some complex block is not resonant"}};
  }
  json betti = json::array();
  json reps = json::array();
  json text = json::array();
  int euler = 0;
  for (const auto& h : cohomology(spec)) {
    betti.push_back(h.betti());
    reps.push_back(multivector_list(h.representatives()));
    text.push_back(text_list(h.representatives()));
    euler += (h.degree % 2 == 0 ? 1 : -1) * h.betti();
  }
  const ScalarLC trace = modified_trace(spec);
  bool duality = true;
  const auto n1 = static_cast<std::size_t>(spec.n + 1);
  for (std::size_t k = 0; k <= n1; ++k) duality = duality && betti[k] == betti[n1 - k];
  return {{"status", "ok"},       {"betti", betti},
          {"representatives", reps}, {"text", text},
          {"euler_characteristic", euler}, {"trace", trace.to_string()},
          {"poincare_duality", duality}};
}

json model_section(const MinimalModel& model, const UBasis& u) {
  json doc = model_to_json(model);
  json counts = json::array();
  const auto c = model.generator_counts();
  for (std::size_t d = 1; d < c.size(); ++d) {
    counts.push_back({{"degree", d}, {"closed", c[d].first}, {"non_closed", c[d].second}});
  }
  doc["generator_counts"] = counts;
  json qi = json::array();
  for (const auto& d : verify_quasi_iso(model, u).degrees) {
    qi.push_back({{"degree", d.degree},
                  {"cohomology_dim", d.cohomology_dim},
                  {"u_dim", d.u_dim},
                  {"image_rank", d.image_rank},
                  {"pass", d.pass}});
  }
  doc["quasi_isomorphism"] = qi;
  doc["d_squared_zero"] = differential_squares_to_zero(model);
  doc["minimal"] = is_minimal(model);
  doc["dump"] = dump_model(model);
  return doc;
}

json formality_section(const TwistedModel& tm, int k) {
  const FormalityVerdict v = k_formality(tm, k);
  const MinimalModel& model = tm.base();
  json degrees = json::array();
  for (const auto& d : v.degrees) {
    json entry{{"degree", d.degree}, {"kernel_dim", d.kernel_dim}, {"pass", d.pass}};
    if (d.witness) {
      entry["witness"] = polynomial_to_json(*d.witness);
      entry["witness_text"] = model.algebra().format(*d.witness);
      entry["twist_text"] = model.algebra().format(d.witness_twist);
    }
    degrees.push_back(entry);
  }
  json ambiguous = json::array();
  for (int id : v.ambiguous_generators) ambiguous.push_back(model.name(id));
  json doc{{"summary", v.summary()},
           {"pass", v.pass()},
           {"max_checked_degree", v.max_checked_degree},
           {"model_bound", v.model_bound},
           {"degrees", degrees},
           {"ambiguous_generators", ambiguous},
           {"d_squared_zero", twisted_differential_squares_to_zero(tm)},
           {"total_model", total_model_to_json(tm)}};
  doc["first_failure"] = v.first_failure() ? json(*v.first_failure()) : json(nullptr);
  return doc;
}

json symplectic_section(const AlmostAbelianSpec& spec) {
  json doc;
  if ((spec.n + 1) % 2 == 0 && !satisfies_modification_hypothesis(spec)) {
    doc["status"] = "unavailable";
    doc["message"] = "modification hypothesis not satisfied: closedness cannot be certified";
    return doc;
  }
  const SearchResult r = find_symplectic(spec);
  doc["status"] = status_name(r.status);
  doc["message"] = r.message;
  if (r.status == SearchStatus::Undefined) return doc;
  doc["closedness_condition"] = "per-element: N^t F = 0";
  doc["global_condition_D2_equals_d2"] = r.global_condition;
  doc["parameter_count"] = r.parameter_count;
  doc["grid_bound"] = r.grid_bound;
  doc["closed_two_classes"] = multivector_list(closed_two_classes(spec));
  if (r.witness) {
    doc["witness"] = witness_to_json(*r.witness);
    doc["witness_text"] = {{"F", r.witness->F.to_string()},
                           {"eta", r.witness->eta.to_string()},
                           {"omega", r.witness->omega.to_string()}};
    const auto& c = *r.certificate;
    doc["certificate"] = {{"closed", c.closed},
                          {"top_F_eta", to_string(c.top_F_eta)},
                          {"omega_top", to_string(c.omega_top)},
                          {"expansion_ok", c.expansion_ok},
                          {"pass", c.pass()}};
  }
  return doc;
}

json assumptions(const AlmostAbelianSpec& spec, int max_degree) {
  json out = json::array();
  out.push_back("lattice existence asserted by the input, not checked: " +
                (spec.lattice_label.empty() ? std::string("(no label)") : spec.lattice_label));
  out.push_back(std::string("modification hypothesis (resonant complex blocks): ") +
                (satisfies_modification_hypothesis(spec) ? "holds" : "fails"));
  if (spec.unimodular) {
    const bool zero_trace = satisfies_modification_hypothesis(spec) && modified_trace(spec).is_zero();
    out.push_back(std::string("unimodularity asserted: ") + (*spec.unimodular ? "yes" : "no") +
                  "; trace of the modification is " + (zero_trace ? "zero" : "nonzero"));
  }
  out.push_back("finite type: model built and checked through degree " + std::to_string(max_degree) + " only");
  out.push_back("resonance read modulo 2*pi*i: sum of weights * t in 2*pi*i*Z");
  out.push_back("nilpotent log used without the factor t (kernels unchanged)");
  return out;
}

}  // namespace

json build_report(const AlmostAbelianSpec& spec, int max_degree, Stage stage) {
  if (max_degree < 1) throw std::invalid_argument("max degree must be at least 1");
  json report;
  report["format"] = "almab-report";
  report["format_version"] = kReportFormatVersion;
  report["spec"] = spec_to_json(spec);
  report["max_degree"] = max_degree;
  report["unipotent"] = unipotent_section(spec);
  if (stage >= Stage::Cohomology) report["cohomology"] = cohomology_section(spec);
  if (stage >= Stage::Model) {
    const UBasis u = compute_U(spec);
    const MinimalModel model = model_of_U(u, nilpotent_log(spec), max_degree);
    report["model"] = model_section(model, u);
    if (stage >= Stage::Formality) report["formality"] = formality_section(twisted_model(model, spec), max_degree);
  }
  if (stage >= Stage::Symplectic) report["symplectic"] = symplectic_section(spec);
  report["assumptions"] = assumptions(spec, max_degree);
  return report;
}

std::string render_text(const json& report) {
  std::ostringstream os;
  const json& spec = report.at("spec");
  os << "almost abelian spec: n = " << spec.at("n").get<int>();
  if (!spec.at("lattice_label").get<std::string>().empty()) os << " (" << spec.at("lattice_label").get<std::string>() << ")";
  os << "\nmax degree: " << report.at("max_degree").get<int>() << "\n";

  if (report.contains("unipotent")) {
    const json& u = report["unipotent"];
    os << "\n[U]\ndimensions:";
    for (const auto& d : u["dimensions"]) os << " " << d.get<int>();
    os << "\n";
    for (std::size_t k = 1; k < u["text"].size(); ++k) {
      os << "U^" << k << ":";
      for (const auto& t : u["text"][k]) os << " " << t.get<std::string>() << ";";
      os << "\n";
    }
  }
  if (report.contains("cohomology")) {
    const json& h = report["cohomology"];
    os << "\n[cohomology]\n";
    if (h["status"] == "ok") {
      os << "betti:";
      for (const auto& b : h["betti"]) os << " " << b.get<int>();
      os << "\n";
      for (std::size_t k = 1; k < h["text"].size(); ++k) {
        os << "H^" << k << ":";
        for (const auto& t : h["text"][k]) os << " " << t.get<std::string>() << ";";
        os << "\n";
      }
      os << "poincare duality: " << (h["poincare_duality"].get<bool>() ? "yes" : "no") << "\n";
    } else {
      os << h["reason"].get<std::string>() << "\n";
    }
  }
  if (report.contains("model")) {
    const json& m = report["model"];
    os << "\n[minimal model of U]\n" << m["dump"].get<std::string>();
    os << "generators per degree (closed/non-closed):";
    for (const auto& c : m["generator_counts"]) {
      os << " " << c["degree"].get<int>() << ":" << c["closed"].get<int>() << "/" << c["non_closed"].get<int>();
    }
    os << "\nquasi-isomorphism:";
    for (const auto& q : m["quasi_isomorphism"]) {
      os << " " << q["degree"].get<int>() << (q["pass"].get<bool>() ? ":ok" : ":FAIL");
    }
    os << "\n";
  }
  if (report.contains("formality")) {
    const json& f = report["formality"];
    os << "\n[formality]\n" << f["total_model"]["dump"].get<std::string>();
    os << "verdict: " << f["summary"].get<std::string>() << "\n";
    for (const auto& d : f["degrees"]) {
      if (d.contains("witness_text")) {
        os << "witness in degree " << d["degree"].get<int>() << ": " << d["witness_text"].get<std::string>()
           << " is d-closed, theta = " << d["twist_text"].get<std::string>() << "\n";
      }
    }
    if (!f["ambiguous_generators"].empty()) {
      os << "twist required a choice for:";
      for (const auto& g : f["ambiguous_generators"]) os << " " << g.get<std::string>();
      os << "\n";
    }
  }
  if (report.contains("symplectic")) {
    const json& s = report["symplectic"];
    os << "\n[symplectic]\n" << s["message"].get<std::string>() << "\n";
    if (s.contains("witness_text")) {
      os << "F = " << s["witness_text"]["F"].get<std::string>() << "\n";
      os << "eta = " << s["witness_text"]["eta"].get<std::string>() << "\n";
      os << "omega = " << s["witness_text"]["omega"].get<std::string>() << "\n";
      os << "top(F^(m-1) ^ eta) = " << s["certificate"]["top_F_eta"].get<std::string>()
         << ", top(omega^m) = " << s["certificate"]["omega_top"].get<std::string>() << "\n";
    }
    if (s.contains("global_condition_D2_equals_d2")) {
      os << "closedness used: " << s["closedness_condition"].get<std::string>()
         << "; global D_2 = d_2 on M_U: " << (s["global_condition_D2_equals_d2"].get<bool>() ? "yes" : "no") << "\n";
    }
  }
  os << "\n[assumptions]\n";
  for (const auto& a : report.at("assumptions")) os << "- " << a.get<std::string>() << "\n";
  return os.str();
}

namespace {

class Verifier {
 public:
  Verifier(const json& report, const AlmostAbelianSpec& spec, VerifyResult& out)
      : report_(report), spec_(spec), out_(out) {}

  void check(bool ok, const std::string& what, const std::string& detail = {}) {
    out_.checked.push_back(what);
    if (!ok) out_.divergences.push_back(what + (detail.empty() ? "" : ": " + detail));
  }

  template <class T>
  void check_equal(const T& reported, const T& recomputed, const std::string& what) {
    std::ostringstream os;
    os << "report " << reported << ", recomputed " << recomputed;
    check(reported == recomputed, what, os.str());
  }

  void unipotent() {
    const json& u = report_.at("unipotent");
    const UBasis basis = compute_U(spec_);
    const json& dims = u.at("dimensions");
    check(dims.size() == static_cast<std::size_t>(spec_.n + 1), "unipotent.dimensions", "wrong length");
    for (std::size_t k = 0; k < dims.size() && k <= static_cast<std::size_t>(spec_.n); ++k) {
      const int kk = static_cast<int>(k);
      check_equal(dims[k].get<int>(), basis.dimension(kk), "unipotent.dimensions[" + std::to_string(k) + "]");
      std::vector<Multivector<Rational>> reported;
      for (const auto& x : u.at("bases").at(k)) reported.push_back(multivector_from_json(x, spec_.n, kk));
      check(same_span(reported, basis[kk], spec_.n, kk), "unipotent.bases[" + std::to_string(k) + "]",
            "span differs");
    }
  }

  void cohomology_section() {
    const json& h = report_.at("cohomology");
    const bool available = satisfies_modification_hypothesis(spec_);
    check(h.at("status") == (available ? "ok" : "unavailable"), "cohomology.status");
    if (!available || h.at("status") != "ok") return;
    const auto recomputed = cohomology(spec_);
    const json& betti = h.at("betti");
    check(betti.size() == recomputed.size(), "cohomology.betti", "wrong length");
    for (std::size_t k = 0; k < betti.size() && k < recomputed.size(); ++k) {
      check_equal(betti[k].get<int>(), recomputed[k].betti(), "cohomology.betti[" + std::to_string(k) + "]");
      const int kk = static_cast<int>(k);
      const json& reps = h.at("representatives").at(k);
      bool closed = true;
      std::vector<Multivector<Rational>> parsed;
      for (const auto& x : reps) {
        parsed.push_back(multivector_from_json(x, spec_.n + 1, kk));
        closed = closed && ce_differential(spec_, parsed.back().cast<ScalarLC>()).is_zero();
      }
      check(closed, "cohomology.representatives[" + std::to_string(k) + "] closed");
      check(parsed == recomputed[k].representatives(), "cohomology.representatives[" + std::to_string(k) + "]",
            "representatives differ");
    }
  }

  int model(int overlap) {
    const json& m = report_.at("model");
    MinimalModel dumped;
    try {
      dumped = model_from_json(m);
    } catch (const nlohmann::json::exception& e) {
      throw ReportError(std::string("model: malformed (") + e.what() + ")");
    }
    check(differential_squares_to_zero(dumped), "model d^2 = 0");
    check(is_minimal(dumped), "model minimality");
    check(realization_is_chain_map(dumped), "model realization is a chain map");
    MinimalModel truncated = dumped;
    truncated.set_degree_bound(overlap);
    check(verify_quasi_iso(truncated, compute_U(spec_)).pass(), "model quasi-isomorphism through degree " +
                                                                    std::to_string(overlap));
    const auto counts = model_of_U(spec_, overlap).generator_counts();
    const auto reported = dumped.generator_counts();
    for (int d = 1; d <= overlap; ++d) {
      const auto r = static_cast<std::size_t>(d) < reported.size() ? reported[static_cast<std::size_t>(d)]
                                                                   : std::pair<int, int>{0, 0};
      const auto c = counts[static_cast<std::size_t>(d)];
      check_equal(r.first, c.first, "model.closed_generators[degree " + std::to_string(d) + "]");
      check_equal(r.second, c.second, "model.non_closed_generators[degree " + std::to_string(d) + "]");
    }
    dumped_ = dumped;
    return dumped.degree_bound();
  }

  void formality(int overlap) {
    const json& f = report_.at("formality");
    // D^2 = 0 on the dumped total model, independent of recomputation
    FreeCdga total;
    std::vector<Polynomial> values;
    for (const auto& g : f.at("total_model").at("generators")) {
      total.add_generator(g.at("name").get<std::string>(), g.at("degree").get<int>());
      values.push_back(polynomial_from_json(g.at("D")));
    }
    for (int id = 0; id < total.size(); ++id) total.set_differential(id, values[static_cast<std::size_t>(id)]);
    bool squares = true;
    for (const auto& v : values) squares = squares && total.differential(v).is_zero();
    check(squares, "formality D^2 = 0 on the dumped total model");

    const int k = std::min(f.at("max_checked_degree").get<int>(), overlap);
    const FormalityVerdict v = k_formality(spec_, k, k);
    const TwistAssignment twist = twist_derivation(dumped_, spec_);
    for (const auto& d : f.at("degrees")) {
      const int degree = d.at("degree").get<int>();
      if (degree > k) continue;
      const std::string where = "formality.degrees[" + std::to_string(degree) + "]";
      check_equal(d.at("pass").get<bool>(), v.degrees.at(static_cast<std::size_t>(degree - 1)).pass, where + ".pass");
      if (d.contains("witness")) {
        const Polynomial w = polynomial_from_json(d.at("witness"));
        check(dumped_.d(w).is_zero() && !apply_twist(dumped_, twist, w).is_zero(), where + ".witness",
              "not a closed element with nonzero twist");
      }
    }
    if (k == f.at("max_checked_degree").get<int>()) {
      const json reported = f.at("first_failure");
      const json recomputed = v.first_failure() ? json(*v.first_failure()) : json(nullptr);
      check(reported == recomputed, "formality.first_failure",
            "report " + reported.dump() + ", recomputed " + recomputed.dump());
      check_equal(f.at("pass").get<bool>(), v.pass(), "formality.pass");
    }
  }

  void symplectic() {
    const json& s = report_.at("symplectic");
    const std::string status = s.at("status").get<std::string>();
    if (status == "unavailable") {
      check(!satisfies_modification_hypothesis(spec_), "symplectic.status");
      return;
    }
    const SearchResult r = find_symplectic(spec_);
    check_equal(status, std::string(status_name(r.status)), "symplectic.status");
    if (s.contains("witness")) {
      SymplecticWitness w = witness_from_json(s.at("witness"), spec_.n);
      const SymplecticCertificate c = verify_symplectic(spec_, w);
      check(c.pass(), "symplectic.witness", "witness fails verification");
      check_equal(s.at("certificate").at("omega_top").get<std::string>(), to_string(c.omega_top),
                  "symplectic.certificate.omega_top");
    }
  }

 private:
  const json& report_;
  const AlmostAbelianSpec& spec_;
  VerifyResult& out_;
  MinimalModel dumped_;
};

}  // namespace

VerifyResult verify_report(const json& report, const AlmostAbelianSpec& spec, int max_degree) {
  if (!report.is_object() || report.value("format", "") != "almab-report") {
    throw ReportError("not an analysis report (missing format tag)");
  }
  if (!report.contains("format_version") || report["format_version"] != kReportFormatVersion) {
    throw ReportError("unsupported report format version");
  }
  if (!report.contains("spec") || !report.contains("max_degree") || !report["max_degree"].is_number_integer()) {
    throw ReportError("report lacks the spec echo or the degree bound");
  }
  VerifyResult out;
  const int bound = report["max_degree"].get<int>();
  const int overlap = max_degree < 0 ? bound : std::min(bound, max_degree);
  out.compared_degree = overlap;
  Verifier v(report, spec, out);
  try {
    const bool same_spec = report["spec"] == spec_to_json(spec);
    v.check(same_spec, "spec", "echoed spec differs from the input; nothing else compared");
    if (!same_spec) return out;
    if (report.contains("unipotent")) v.unipotent();
    if (report.contains("cohomology")) v.cohomology_section();
    if (report.contains("model")) {
      v.model(overlap);
      if (report.contains("formality")) v.formality(overlap);
    }
    if (report.contains("symplectic")) v.symplectic();
  } catch (const nlohmann::json::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace almab
