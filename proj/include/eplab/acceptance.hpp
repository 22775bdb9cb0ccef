// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eplab {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    int threads = 2;
    std::uint64_t seed = 20260809;
    bool with_3d_smoke = true;
};

/// Run the full acceptance battery, printing one pass/fail line per
/// criterion to `log` as results land. Returns all results.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace eplab
