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

#include "mudof/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace mudof {

RateCurve sweep_rates(const SchemeFn& scheme, const std::string& scheme_id,
                      const AntennaConfig& config, const LinkGains& gains,
                      const SnrGrid& grid, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("sweep_rates needs trials >= 1.");
    if (grid.size() < 1) throw std::invalid_argument("sweep_rates needs a nonempty grid.");

    const std::vector<double> rho = grid.linear();
    std::vector<double> sums(grid.size(), 0.0);

    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        const ChannelRealization ch = sample_channel(config, gains, trial_seed);
        const std::uint64_t aux_seed = derive_seed(trial_seed, 0x617578);  // "aux"
        for (std::size_t p = 0; p < grid.size(); ++p) {
            try {
                sums[p] += scheme(ch, aux_seed, rho[p]);
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep_rates: scheme failed at trial " +
                                         std::to_string(t) + ", " +
                                         std::to_string(grid.points_db[p]) +
                                         " dB: " + e.what());
            }
        }
    }

    RateCurve curve;
    curve.trials = trials;
    curve.scheme_id = scheme_id;
    curve.points.reserve(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p)
        curve.points.push_back({grid.points_db[p], sums[p] / trials});
    return curve;
}

SlopeEstimate estimate_dof(const RateCurve& curve, double window_lo_db,
                           double window_hi_db) {
    std::vector<double> x, y;
    for (const RatePoint& pt : curve.points) {
        if (pt.snr_db >= window_lo_db - 1e-12 && pt.snr_db <= window_hi_db + 1e-12) {
            // Regress against log2(rho) so the slope is a DoF directly.
            x.push_back(pt.snr_db * (std::log2(10.0) / 10.0));
            y.push_back(pt.sum_rate);
        }
    }
    const std::size_t n = x.size();
    if (n < 3)
        throw std::invalid_argument("estimate_dof: slope window holds fewer than 3 points.");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("estimate_dof: degenerate window.");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        sse += r * r;
    }
    const double var = sse / static_cast<double>(n - 2);

    SlopeEstimate est;
    est.dof_hat = slope;
    est.std_err = std::sqrt(var / sxx);
    est.window_lo_db = window_lo_db;
    est.window_hi_db = window_hi_db;
    return est;
}

}  // namespace mudof
