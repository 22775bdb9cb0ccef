// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "eplab/steppers.hpp"

namespace eplab {

/// RK4 time integration of d_t a + v.grad(a) = forcing with spectral
/// derivatives and band-limited products. Refuses steps violating
/// dt <= cfl_safety * h / max|v|.
TimeSeries solve_transport(const RealField& a0, const TimeDependentField& v,
                           const TimeDependentField& forcing, const TimeStepper& ts,
                           double cfl_safety = 0.5);

/// d_t theta - kappa_tilde Laplacian(theta) = forcing, integrated with the
/// exact diffusion factor exp(-kappa_tilde |k|^2 dt) and Simpson quadrature
/// of the forcing in the interaction picture (4th order for smooth forcing;
/// exact for zero forcing at any dt).
TimeSeries solve_heat(const RealField& theta0, double kappa_tilde,
                      const TimeDependentField& forcing, const TimeStepper& ts);

/// d_t E = -grad(Delta^{-1} div flux); quadrature in time, curl-free
/// preserving.
TimeSeries solve_e_evolution(const RealField& E0, const TimeDependentField& flux,
                             const TimeStepper& ts);

}  // namespace eplab
