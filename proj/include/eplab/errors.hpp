// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace eplab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Rejected input: invalid samples, symmetry violations, vacuum states, ...
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

/// Bad run configuration (schema violations, unknown keys, out-of-range values).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A solve blew up (NaN/Inf detected). Carries the iterate index and time.
class Divergence : public Error {
public:
    Divergence(const std::string& msg, int iterate, double time)
        : Error(msg), iterate_(iterate), time_(time) {}
    int iterate() const { return iterate_; }
    double time() const { return time_; }

private:
    int iterate_;
    double time_;
};

/// CFL refusal; carries the suggested admissible step.
class CflViolation : public Error {
public:
    CflViolation(const std::string& msg, double suggested_dt)
        : Error(msg), suggested_dt_(suggested_dt) {}
    double suggested_dt() const { return suggested_dt_; }

private:
    double suggested_dt_;
};

}  // namespace eplab
