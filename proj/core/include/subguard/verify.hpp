#pragma once

#include <string>
#include <vector>

#include "subguard/oracle.hpp"

namespace subguard {

/// One closed-form quantity checked against its brute-force counterpart.
struct VerificationEntry {
  std::string instance;
  std::string quantity;
  std::vector<double> closed_form;
  std::vector<double> oracle;
  double abs_diff = 0.0;
  bool agree = false;
};

/// Runs every oracle that applies to the (canonical) scenario: kind
/// classification, plus the capture point or barrier target point.
std::vector<VerificationEntry> verify_scenario(const Scenario& scenario,
                                               const OracleOptions& options = {});

/// JSON array of {"instance", "quantity", "closed_form", "oracle",
/// "abs_diff", "agree"} records.
std::string verification_to_json(const std::vector<VerificationEntry>& entries);

}  // namespace subguard
