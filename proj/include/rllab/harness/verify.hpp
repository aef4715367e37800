#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rllab::harness {

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  // Fault injection for smoke-testing the gate: the KL suite checks the
  // negated closed form.
  bool flip_kl_sign = false;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  // One-line summary: worst error, counts, anything reported but not asserted.
  std::string detail;
  double seconds = 0.0;
};

// kl, asymmetry, cim, pinsker, taylor, gradients, controller
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument on an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options = {});

SuiteResult verify_kl(const VerifyOptions& options);
SuiteResult verify_asymmetry(const VerifyOptions& options);
SuiteResult verify_cim(const VerifyOptions& options);
SuiteResult verify_pinsker(const VerifyOptions& options);
SuiteResult verify_taylor(const VerifyOptions& options);
SuiteResult verify_gradients(const VerifyOptions& options);
SuiteResult verify_controller(const VerifyOptions& options);

}  // namespace rllab::harness
