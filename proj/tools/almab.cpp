// Command-line front end.
//
//   almab <unipotent|cohomology|model|formality|symplectic|analyze> SPEC
//         [--max-degree K] [--format text|json] [--report PATH]
//   almab verify REPORT SPEC [--max-degree K]
//
// Exit status: 0 success, 1 input/hypothesis error, 2 internal invariant
// violation, 3 verification found a divergence.
#include "almab/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;
constexpr int kExitMismatch = 3;

struct Options {
  std::string input;
  std::string report_path;
  std::string format = "text";
  int max_degree = 3;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw almab::InputError("cannot write report file '" + path + "'");
  out << text;
}

int run_stage(almab::Stage stage, const Options& opt) {
  const almab::AlmostAbelianSpec spec = almab::load_spec(opt.input);
  if (stage == almab::Stage::Cohomology && !almab::satisfies_modification_hypothesis(spec)) {
    throw almab::HypothesisError("modification hypothesis not satisfied: cohomology of the modification is unavailable");
  }
  if (stage == almab::Stage::Symplectic && (spec.n + 1) % 2 != 0) {
    throw almab::HypothesisError("symplectic undefined: total dimension " + std::to_string(spec.n + 1) + " is odd");
  }
  const nlohmann::json report = almab::build_report(spec, opt.max_degree, stage);
  const std::string machine = report.dump(2) + "\n";
  if (!opt.report_path.empty()) write_file(opt.report_path, machine);
  std::cout << (opt.format == "json" ? machine : almab::render_text(report));
  return 0;
}

int run_verify(const std::string& report_path, const std::string& spec_path, int max_degree) {
  std::ifstream in(report_path);
  if (!in) throw almab::InputError("cannot read report file '" + report_path + "'");
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw almab::ReportError(std::string("report is not valid JSON: ") + e.what());
  }
  const almab::AlmostAbelianSpec spec = almab::load_spec(spec_path);
  const almab::VerifyResult result = almab::verify_report(report, spec, max_degree);
  std::cout << "checked " << result.checked.size() << " claims through degree " << result.compared_degree << "\n";
  for (const auto& d : result.divergences) std::cout << "DIVERGENCE " << d << "\n";
  std::cout << (result.ok() ? "report verified" : "report does not match") << "\n";
  return result.ok() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of almost abelian solvmanifolds"};
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::pair<std::string, almab::Stage>> stages{
      {"unipotent", almab::Stage::Unipotent},   {"cohomology", almab::Stage::Cohomology},
      {"model", almab::Stage::Model},           {"formality", almab::Stage::Formality},
      {"symplectic", almab::Stage::Symplectic}, {"analyze", almab::Stage::Analyze}};
  const std::map<std::string, std::string> help{
      {"unipotent", "nilpotent monodromy submodule U"},
      {"cohomology", "cohomology via the completely solvable modification"},
      {"model", "minimal model of U"},
      {"formality", "k-formality verdict through --max-degree"},
      {"symplectic", "search for an invariant symplectic form"},
      {"analyze", "full report"}};
  std::vector<std::pair<CLI::App*, almab::Stage>> commands;
  for (const auto& [name, stage] : stages) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("spec", opt.input, "input spec (JSON)")->required();
    sub->add_option("--max-degree", opt.max_degree, "model degree bound")->check(CLI::Range(1, 16));
    sub->add_option("--format", opt.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--report", opt.report_path, "also write the JSON report here");
    commands.emplace_back(sub, stage);
  }
  std::string report_path;
  std::string spec_path;
  int verify_degree = -1;
  CLI::App* verify = app.add_subcommand("verify", "re-derive every claim of a JSON report");
  verify->add_option("report", report_path, "report emitted with --format json or --report")->required();
  verify->add_option("spec", spec_path, "input spec (JSON)")->required();
  verify->add_option("--max-degree", verify_degree, "compare only through this degree")->check(CLI::Range(1, 16));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (verify->parsed()) return run_verify(report_path, spec_path, verify_degree);
    for (const auto& [sub, stage] : commands) {
      if (sub->parsed()) return run_stage(stage, opt);
    }
  } catch (const almab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const almab::HypothesisError& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return kExitInput;
  } catch (const almab::ReportError& e) {
    std::cerr << "report error: " << e.what() << "\n";
    return kExitInput;
  } catch (const almab::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
