#pragma once

// Acceptance criteria for the measurement model, runnable from the CLI
// (`qnd verify`) and from the acceptance test binary.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qnd::cli {

struct Check {
  enum class Kind {
    Absolute,  // |computed - expected| <= tolerance
    Relative,  // |computed - expected| <= tolerance * |expected|
    AtMost,    // computed <= expected
    AtLeast,   // computed >= expected
    Info,      // reported, never gating
  };
  std::string label;
  Kind kind = Kind::Absolute;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string group;
  std::string title;
  std::vector<Check> checks;

  bool passed() const;
};

struct VerifyOptions {
  // Group name or criterion number; empty runs everything.
  std::string only;
  // Multiplies Absolute and Relative tolerances.
  double tol_scale = 1.0;
  std::uint64_t seed = 20000607;
  // Phase variance assigned to a resolution; replaceable for mutation tests.
  std::function<double(double)> phase_noise;
};

const std::vector<std::string>& acceptance_groups();

// Throws InvalidParam for an unknown group or criterion number.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

void print_report(const std::vector<CriterionResult>& results, std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qnd::cli
