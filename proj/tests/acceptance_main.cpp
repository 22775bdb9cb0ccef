// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance battery: one pass/fail line per criterion; nonzero exit if any
// criterion fails.

#include <cstdlib>
#include <iostream>

#include "eplab/acceptance.hpp"

int main() {
    eplab::AcceptanceOptions opts;
    if (const char* env = std::getenv("EPLAB_THREADS")) {
        const int t = std::atoi(env);
        if (t >= 1) opts.threads = t;
    }
    auto results = eplab::run_acceptance(opts, std::cout);
    return eplab::all_passed(results) ? 0 : 1;
}
