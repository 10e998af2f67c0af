// Analysis report: machine-readable document, text rendering and
// independent re-verification.
#pragma once

#include "almab/spectral.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace almab {

inline constexpr int kReportFormatVersion = 1;

/// Pipeline stages, in order; each includes the previous ones' inputs only.
enum class Stage { Unipotent, Cohomology, Model, Formality, Symplectic, Analyze };

/// Runs the pipeline up to `stage` and returns the report document.
nlohmann::json build_report(const AlmostAbelianSpec& spec, int max_degree, Stage stage);

std::string render_text(const nlohmann::json& report);

/// Malformed report document.
class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifyResult {
  std::vector<std::string> checked;
  std::vector<std::string> divergences;
  int compared_degree = 0;

  bool ok() const { return divergences.empty(); }
};

/// Re-derives every checkable claim of `report` for `spec` through
/// min(report bound, max_degree) (the report bound when max_degree < 0).
VerifyResult verify_report(const nlohmann::json& report, const AlmostAbelianSpec& spec, int max_degree = -1);

}  // namespace almab
