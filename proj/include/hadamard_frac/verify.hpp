#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hadamard_frac/quadrature.hpp"

namespace hfrac {

struct IdentityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double error = 0.0;      // relative, or value/bound for the boundary suite
  double tolerance = 0.0;
  bool passed = false;
};

struct SuiteReport {
  std::string name;
  std::vector<IdentityCheck> checks;
  double worst = 0.0;
  bool passed = true;
  std::vector<std::string> failing() const;
};

struct VerifyReport {
  std::vector<SuiteReport> suites;
  double worst = 0.0;
  bool passed = true;
};

struct VerifyOptions {
  std::optional<std::string> suite;  // run only this suite
  bool inject_bug = false;           // flip the sign of one mu-image closed form
  QuadratureSpec quad;
};

/// conjugation, ibp, lemma3, boundary, semigroup, gamma.
const std::vector<std::string>& verify_suite_names();

/// Runs the identity suites. Throws DomainError for an unknown suite name.
VerifyReport run_verify(const VerifyOptions& opts = {});

}  // namespace hfrac
