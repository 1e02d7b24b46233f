#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ca/exec.hpp"
#include "ca/session.hpp"

namespace ca {

enum class CheckStatus { Pass, Fail, Inconclusive, Skipped };

const char* to_string(CheckStatus s);

struct CheckResult {
  std::string module;
  std::string check;
  std::string statement;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json quantities = nlohmann::ordered_json::object();
  CheckStatus status = CheckStatus::Skipped;
  std::string reason;  // failed precondition when skipped, otherwise a short note
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  std::size_t count(CheckStatus s) const;
  bool any_fail() const { return count(CheckStatus::Fail) > 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int cutoff = 0;  // resolution cutoff over A (0: dim A + 1)
  int nmax = -1;   // Frobenius steps for limit checks (-1: default for p)
  int max_tries = 200;
  Exec exec = Exec::Parallel;
};

/// Check ids in report order.
std::span<const std::string> check_ids();

/// Runs one check on one module.  Unmet preconditions and engine errors give
/// Skipped; Error(UnknownCheck) for an unknown id, Error(InvalidArgument) for
/// an unknown module.
VerificationReport verify(const Session& s, const std::string& check_id, const std::string& module,
                          const VerifyOptions& options = {});
/// Every check on every module, ordered by module name then check id.
VerificationReport run_all(const Session& s, const VerifyOptions& options = {});

nlohmann::ordered_json to_json(const VerificationReport& r);

// JSON forms shared by the report and the command line: -infinity and
// infinite values become null, a pd bound becomes {"at_least": N}, rationals
// become {"num": a, "den": b}.
nlohmann::ordered_json to_json(Dimension d);
nlohmann::ordered_json to_json(const ProjectiveDimension& pd);
nlohmann::ordered_json to_json(const Rational& q);
nlohmann::ordered_json to_json(const LimitReport& r);
nlohmann::ordered_json to_json(std::span<const Poly> polys, const PolyRing& ring);

}  // namespace ca
