#pragma once

#include <cstdint>
#include <vector>

#include "volterra/report.hpp"

namespace volterra {

/// Deterministic identity suites used by the `verify` command. Thresholds are
/// fixed; tol_scale loosens or tightens all of them at once.
std::vector<CheckRow> checks_identities(double tol_scale = 1.0);
std::vector<CheckRow> checks_kernels(double tol_scale = 1.0);
std::vector<CheckRow> checks_distributions(double tol_scale = 1.0, std::uint64_t seed = 1);
std::vector<CheckRow> checks_jump(double tol_scale = 1.0);

std::vector<CheckRow> checks_all(double tol_scale = 1.0, std::uint64_t seed = 1);

}  // namespace volterra
