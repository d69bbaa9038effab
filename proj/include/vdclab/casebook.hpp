#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace vdclab {

struct CaseQuantity {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tol = 0.0;  // 0 means exact
  std::string provenance;  // "paper" | "derived" | "trivial"
  bool pass = false;
};

struct CaseReport {
  std::string case_id;
  nlohmann::json params;
  std::uint64_t seed = 0;
  bool pass = false;
  double runtime_ms = 0.0;  // excluded from the canonical JSON
  std::vector<CaseQuantity> quantities;

  // Deterministic under fixed seed; runtime is reported separately so the
  // canonical report is re-run stable.
  nlohmann::json to_json() const;
};

const std::vector<std::string>& case_names();

// Throws UnknownCaseError for names outside the catalogue. params may be
// empty; each case documents its recognized keys.
CaseReport run_case(const std::string& name, const nlohmann::json& params, std::uint64_t seed);

std::vector<CaseReport> run_all_cases(std::uint64_t seed);

}  // namespace vdclab
