// mudof - spatial degrees-of-freedom analysis for multiuser MIMO networks
// Copyright (C) 2026 the mudof authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mudof/net_model.hpp"
#include "mudof/schemes.hpp"

namespace mudof {

// Default estimation knobs; empirically enough for +-0.15 on the DoF table.
inline constexpr double kDefaultWindowLoDb = 40.0;
inline constexpr double kDefaultWindowHiDb = 60.0;
inline constexpr double kDefaultStepDb = 5.0;
inline constexpr int kDefaultTrials = 20;

/// Averaged sum rate per SNR grid point.
struct RateCurve {
    std::vector<RatePoint> points;  // ascending in snr_db
    int trials = 0;
    std::string scheme_id;
};

/// Least-squares DoF estimate with its standard error.
struct SlopeEstimate {
    double dof_hat = 0.0;
    double std_err = 0.0;
    double window_lo_db = 0.0;
    double window_hi_db = 0.0;
};

/// Sum rate of one scheme on one realization at the given total transmit
/// power. aux_seed supplies deterministic per-trial randomness beyond the
/// four channel matrices (e.g. the inter-transmitter sharing channel).
using SchemeFn =
    std::function<double(const ChannelRealization& ch, std::uint64_t aux_seed, double power)>;

/// Averages the scheme over `trials` independent channel draws per grid
/// point. Common random numbers: one realization per trial, reused across
/// the whole grid. Deterministic for a fixed seed. Scheme errors are
/// re-thrown with the trial and SNR point attached.
RateCurve sweep_rates(const SchemeFn& scheme, const std::string& scheme_id,
                      const AntennaConfig& config, const LinkGains& gains,
                      const SnrGrid& grid, int trials, std::uint64_t seed);

/// Ordinary least squares of sum_rate against log2(rho) over the window;
/// the slope is the DoF estimate. Needs at least 3 points in the window.
SlopeEstimate estimate_dof(const RateCurve& curve, double window_lo_db,
                           double window_hi_db);

}  // namespace mudof
