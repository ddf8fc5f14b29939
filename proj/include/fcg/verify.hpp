#pragma once

// Computational checks of the main results at a fixed depth, as reports.

#include "fcg/group.hpp"
#include "fcg/report.hpp"

namespace fcg {

struct VerifyOptions {
  int jobs = 1;
  Caps caps;
  bool timing = false;
};

/// Count, dimension and structure of the nearly maximal groups; for d <= 4
/// the brute-force descent must find the same groups.
VerificationReport verify_main1(int depth, const VerifyOptions& opt = {});
/// Every nearly maximal group has additive portraits at levels d and d+1.
VerificationReport verify_main2(int depth, const VerifyOptions& opt = {});
/// Recursive heights against the filtration (all vectors for d <= 5) and the
/// heights of [a_0, a_{d-1}], [a_1, a_{d-1}].
VerificationReport verify_heights(int depth, const VerifyOptions& opt = {});
/// Growth formula against direct counts and materialized level quotients.
VerificationReport verify_growth(int depth, const VerifyOptions& opt = {});
/// alpha_k criterion against the filtration; V^(1), V^(2) descriptions.
VerificationReport verify_uniserial(int depth, const VerifyOptions& opt = {});
/// Split extension groups: dimensions 1 - i/2^{d-1} and split-strategy proofs;
/// for d >= 4 also the non-tfg family.
VerificationReport verify_non_tfg(int depth, const VerifyOptions& opt = {});
/// The "abc" and "abac" wreath calculations in every quotient up to depth.
VerificationReport verify_wreath(int depth, const VerifyOptions& opt = {});
/// Everything applicable at this depth, including the Grigorchuk checks at
/// d = 4 and the family report at d >= 5.
VerificationReport verify_all(int depth, const VerifyOptions& opt = {});

}  // namespace fcg
