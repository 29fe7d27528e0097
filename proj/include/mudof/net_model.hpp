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

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mudof {

using cxmat = Eigen::MatrixXcd;

// Relative tolerance below which the smallest singular value marks a matrix
// as rank deficient.
inline constexpr double kRankRelTol = 1e-9;

/// Antenna counts of a two-link network: (m1,n1) is transmitter/receiver 1,
/// (m2,n2) is transmitter/receiver 2.
struct AntennaConfig {
    int m1 = 1;
    int n1 = 1;
    int m2 = 1;
    int n2 = 1;

    /// True iff link 1 carries the most antennas on at least one of its ends.
    bool canonical() const;

    /// Throws std::invalid_argument unless all counts are >= 1.
    void validate() const;

    /// Compact form "m1xn1xm2xn2", safe for CSV fields.
    std::string str() const;

    bool operator==(const AntennaConfig&) const = default;
};

/// Amplitude scale factors, one per channel matrix. Entry variance of the
/// sampled matrix is the square of the gain.
struct LinkGains {
    double g_h1 = 1.0;
    double g_h2 = 1.0;
    double g_z1 = 1.0;
    double g_z2 = 1.0;

    void validate() const;
    static LinkGains uniform(double g);
};

/// One draw of the four channel matrices of the two-link network.
struct ChannelRealization {
    cxmat h1;  // T1 -> R1, n1 x m1
    cxmat h2;  // T2 -> R2, n2 x m2
    cxmat z1;  // T2 -> R1, n1 x m2
    cxmat z2;  // T1 -> R2, n2 x m1
};

/// Ascending SNR grid in dB.
struct SnrGrid {
    std::vector<double> points_db;

    std::size_t size() const { return points_db.size(); }
    /// Linear SNR per point, rho = 10^(dB/10).
    std::vector<double> linear() const;
};

/// Amplitude scale for a link of the given length: distance^(-exponent/2),
/// so received power scales as distance^(-exponent).
double path_gain(double distance, double exponent);

/// Inclusive arithmetic grid from lo_db to hi_db. Rejects lo_db >= hi_db.
SnrGrid snr_grid(double lo_db, double hi_db, double step_db);

/// Deterministic standard-normal / circularly-symmetric-complex-Gaussian
/// source. Box-Muller on top of mt19937_64, so streams are reproducible
/// across platforms and standard libraries.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    /// N(0,1)
    double normal();
    /// CN(0,1): real and imaginary parts are independent N(0,1/2).
    std::complex<double> cnormal();

  private:
    double unit_open();  // uniform on (0,1]
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// rows x cols matrix of i.i.d. CN(0, gain^2) entries, filled row-major.
cxmat sample_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, double gain,
                             GaussianSource& src);

/// True iff the smallest singular value exceeds rel_tol times the largest.
bool full_rank(const cxmat& a, double rel_tol = kRankRelTol);

/// Independent child seed for Monte Carlo trial `index` of stream `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Draws the four channel matrices with i.i.d. CN(0, gain^2) entries.
/// Deterministic for fixed (config, gains, seed). Rank-deficient draws are
/// resampled; after 100 consecutive failures (a degenerate gain, e.g. 0)
/// throws std::runtime_error.
ChannelRealization sample_channel(const AntennaConfig& config,
                                  const LinkGains& gains, std::uint64_t seed);

/// Single full-rank CN(0, gain^2) matrix with the same retry policy as
/// sample_channel; used for auxiliary links such as the inter-transmitter
/// sharing channel.
cxmat sample_full_rank_matrix(Eigen::Index rows, Eigen::Index cols, double gain,
                              std::uint64_t seed);

}  // namespace mudof
