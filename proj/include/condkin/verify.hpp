#pragma once

#include <string>
#include <vector>

#include "condkin/config.hpp"

namespace condkin {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

// Sine-product closed forms vs the reduced resonant formulas (1e-12) and the
// damped-quadrature oracle (1e-4); dispersion identities.
VerifyReport verify_identities(unsigned seed);

// Per-step number monotonicity, energy + overflow constancy and flux-ledger
// signs on a canned run.
VerifyReport verify_conservation(unsigned seed, int threads);

// phi_alpha monotonicity and the step-vs-assembled-rate bookkeeping identity
// on a canned run.
VerifyReport verify_dissipation(unsigned seed, int threads);

// Randomized transport-kernel / barrier instances plus invalid-barrier
// rejection.
VerifyReport verify_supersolution(unsigned seed);

// Monte-Carlo estimate of the 3-D momentum-space weak form of the 3-wave
// operator (omega = |k|^2) against the reduced 1-D double integral, within
// 3 Monte-Carlo standard errors.
VerifyReport verify_oracle(unsigned seed, long n_samples = 10000000L);

VerifyReport verify_all(unsigned seed, int threads);

std::string verify_report_json(const VerifyReport& rep, const std::string& suite,
                               unsigned seed);

}  // namespace condkin
