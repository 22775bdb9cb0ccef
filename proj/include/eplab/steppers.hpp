// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>

#include "eplab/besov.hpp"

namespace eplab {

enum class Scheme { rk4_explicit, exponential_rk4 };

struct TimeStepper {
    double dt = 1e-3;
    Scheme scheme = Scheme::rk4_explicit;
    double t_end = 0.1;
    int snapshot_stride = 1;

    void validate() const {
        if (!(dt > 0.0) || !(t_end > 0.0)) throw ConfigError("stepper: dt and t_end must be positive");
        if (snapshot_stride < 1) throw ConfigError("stepper: snapshot_stride must be >= 1");
    }
    /// Number of steps; dt is adjusted to divide t_end exactly.
    int n_steps() const {
        validate();
        return std::max(1, static_cast<int>(std::llround(t_end / dt)));
    }
    double effective_dt() const { return t_end / n_steps(); }
};

/// A field of time: a constant, a snapshot series consumed through linear
/// interpolation (the solver contract), or an exact callable.
class TimeDependentField {
public:
    static TimeDependentField constant(RealField f) {
        TimeDependentField t;
        t.constant_ = std::make_shared<RealField>(std::move(f));
        return t;
    }
    static TimeDependentField from_series(TimeSeries ts) {
        ts.validate();
        TimeDependentField t;
        t.series_ = std::make_shared<TimeSeries>(std::move(ts));
        return t;
    }
    static TimeDependentField from_function(std::function<RealField(double)> fn) {
        TimeDependentField t;
        t.fn_ = std::move(fn);
        return t;
    }

    RealField at(double t) const {
        if (constant_) return *constant_;
        if (series_) return series_->sample(t);
        return fn_(t);
    }

    bool is_series() const { return static_cast<bool>(series_); }
    const TimeSeries* series() const { return series_.get(); }

private:
    std::shared_ptr<const RealField> constant_;
    std::shared_ptr<const TimeSeries> series_;
    std::function<RealField(double)> fn_;
};

}  // namespace eplab
