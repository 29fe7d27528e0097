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

#include "mudof/net_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mudof {

bool AntennaConfig::canonical() const {
    return std::max(m1, n1) >= std::max(m2, n2);
}

void AntennaConfig::validate() const {
    if (m1 < 1 || n1 < 1 || m2 < 1 || n2 < 1)
        throw std::invalid_argument("Antenna counts must all be >= 1.");
}

std::string AntennaConfig::str() const {
    return std::to_string(m1) + "x" + std::to_string(n1) + "x" +
           std::to_string(m2) + "x" + std::to_string(n2);
}

void LinkGains::validate() const {
    if (!(g_h1 > 0.0) || !(g_h2 > 0.0) || !(g_z1 > 0.0) || !(g_z2 > 0.0))
        throw std::invalid_argument("Link gains must all be > 0.");
}

LinkGains LinkGains::uniform(double g) { return LinkGains{g, g, g, g}; }

std::vector<double> SnrGrid::linear() const {
    std::vector<double> rho(points_db.size());
    for (std::size_t i = 0; i < points_db.size(); ++i)
        rho[i] = std::pow(10.0, points_db[i] / 10.0);
    return rho;
}

double path_gain(double distance, double exponent) {
    if (!(distance > 0.0))
        throw std::invalid_argument("Distance must be > 0.");
    if (exponent < 0.0)
        throw std::invalid_argument("Path-loss exponent must be >= 0.");
    return std::pow(distance, -exponent / 2.0);
}

SnrGrid snr_grid(double lo_db, double hi_db, double step_db) {
    if (!(lo_db < hi_db))
        throw std::invalid_argument("SNR grid needs lo_db < hi_db.");
    if (!(step_db > 0.0))
        throw std::invalid_argument("SNR grid step must be > 0 dB.");
    SnrGrid grid;
    // Integer stepping keeps the grid free of accumulated rounding drift.
    const double span = hi_db - lo_db;
    const long count = static_cast<long>(std::floor(span / step_db + 1e-9));
    if (count < 1)
        throw std::invalid_argument("SNR grid step larger than the range.");
    grid.points_db.reserve(static_cast<std::size_t>(count) + 1);
    for (long k = 0; k <= count; ++k)
        grid.points_db.push_back(lo_db + static_cast<double>(k) * step_db);
    return grid;
}

double GaussianSource::unit_open() {
    // 53 random bits mapped to (0,1]; never 0, so log() below is safe.
    const std::uint64_t bits = rng_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double GaussianSource::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = unit_open();
    const double u2 = unit_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::complex<double> GaussianSource::cnormal() {
    const double u1 = unit_open();
    const double u2 = unit_open();
    const double r = std::sqrt(-std::log(u1));  // both parts N(0,1/2)
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

cxmat sample_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, double gain,
                             GaussianSource& src) {
    cxmat a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = gain * src.cnormal();
    return a;
}

bool full_rank(const cxmat& a, double rel_tol) {
    if (a.size() == 0) return false;
    Eigen::JacobiSVD<cxmat> svd(a);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) > rel_tol * sv(0);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 of base advanced by the index; well-mixed child streams.
    std::uint64_t x = base + (index + 1) * 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

ChannelRealization sample_channel(const AntennaConfig& config,
                                  const LinkGains& gains, std::uint64_t seed) {
    config.validate();
    GaussianSource src(seed);
    constexpr int kMaxRetries = 100;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        ChannelRealization ch;
        ch.h1 = sample_gaussian_matrix(config.n1, config.m1, gains.g_h1, src);
        ch.h2 = sample_gaussian_matrix(config.n2, config.m2, gains.g_h2, src);
        ch.z1 = sample_gaussian_matrix(config.n1, config.m2, gains.g_z1, src);
        ch.z2 = sample_gaussian_matrix(config.n2, config.m1, gains.g_z2, src);
        if (full_rank(ch.h1) && full_rank(ch.h2) && full_rank(ch.z1) &&
            full_rank(ch.z2))
            return ch;
    }
    throw std::runtime_error(
        "sample_channel: 100 consecutive rank-deficient draws; "
        "a link gain is degenerate.");
}

cxmat sample_full_rank_matrix(Eigen::Index rows, Eigen::Index cols, double gain,
                              std::uint64_t seed) {
    GaussianSource src(seed);
    constexpr int kMaxRetries = 100;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        cxmat a = sample_gaussian_matrix(rows, cols, gain, src);
        if (full_rank(a)) return a;
    }
    throw std::runtime_error(
        "sample_full_rank_matrix: 100 consecutive rank-deficient draws; "
        "the gain is degenerate.");
}

}  // namespace mudof
