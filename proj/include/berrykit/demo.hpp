#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "berrykit/berry.hpp"

namespace bk {

struct DemoParams {
  BackendKind backend = BackendKind::Semantic;
  Nat budget = 32;
  std::size_t max_len = 6;  // scale of the desk-size analogue
  std::size_t cap = kDefaultEnumerationCap;
  MockPhi mock{50, 2};
};

struct Claim {
  enum class Status { Checked, Asserted } status;
  std::string statement;
  nlohmann::json evidence;  // Checked: replayable record with a "kind" field
  std::string citation;     // Asserted: where the meta-level argument lives
  bool ok = true;           // Checked: the check succeeded
};

struct DemoReport {
  int corollary = 0;
  std::string title;
  std::vector<Claim> claims;

  [[nodiscard]] bool ok() const;
  [[nodiscard]] nlohmann::json to_json() const;
  static DemoReport from_json(const nlohmann::json& j);
};

/// Runs the executable steps of corollary 1..5. Throws PreconditionError
/// for other ids and FeasibilityError when the scale exceeds the cap.
DemoReport demo(int corollary, const DemoParams& params = {});

struct ReplayOutcome {
  std::size_t claim;
  bool ok;
  std::string reason;
};

/// Re-validates every Checked claim of a serialized report from its evidence.
std::vector<ReplayOutcome> replay(const nlohmann::json& report, std::size_t cap = kDefaultEnumerationCap);

}  // namespace bk
