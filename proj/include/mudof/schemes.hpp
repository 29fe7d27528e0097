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

#include <vector>

#include "mudof/net_model.hpp"

namespace mudof {

// Residual cross-link interference above this fraction of per-stream signal
// power means the zero-forcing construction is broken.
inline constexpr double kInterferenceTol = 1e-6;

// Orthonormality slack for direction sets (Gram matrix vs identity).
inline constexpr double kOrthoTol = 1e-9;

/// Parallel channels left after zero forcing: stream i sees unit signal gain
/// and noise variance noise_scales[i] relative to the unit receiver noise.
struct ParallelChannels {
    std::vector<double> noise_scales;

    int stream_count() const { return static_cast<int>(noise_scales.size()); }
};

/// Sum rate in bits/channel-use with the total power split equally over the
/// streams: sum_i log2(1 + (P/k) / lambda_i).
double rate_parallel(const ParallelChannels& pc, double total_power);

/// Point-to-point SVD rate with equal power per stream; optional water
/// filling (off by default, the slope is the same either way).
double rate_ptp(const cxmat& h, double total_power, bool waterfill = false);

/// Multiple access sum rate: every user rotates into its own singular basis,
/// the joint receiver zero-forces the stacked effective channel with a
/// pseudo-inverse, streams are decoded separately (noise correlation across
/// streams is ignored). Keeps min(sum M_k, N) streams, earlier users first.
double rate_mac_zf(const std::vector<cxmat>& h_users, double total_power);

/// Broadcast sum rate: the common transmitter precodes with the
/// pseudo-inverse of the stacked receive matrix; precoder column norms are
/// absorbed into the per-stream SNR so the total transmit power is P.
double rate_bc_zf(const std::vector<cxmat>& h_users, double total_power);

/// Which side of the interference construction applies after
/// canonicalization: transmitter 1 dominates (m1 >= n1) or receiver 1 does.
enum class IntSchemeCase { wide_tx, tall_rx };

/// How link 1 picks among its equally valid interference-free candidates.
/// Both meet the same stream-count bounds: `fixed_order` walks the singular
/// basis in its natural order, `own_gain_ranked` lets the privileged link
/// prefer the candidates with the strongest own-link gain (the "dedicate
/// full power to the own link" reading of the non-cooperative scheme).
/// Link 2 always takes its leftovers in basis order.
enum class IntDirectionPolicy { fixed_order, own_gain_ranked };

/// The transmit directions and receive combiners of the interference-channel
/// zero-forcing construction.
struct EffectiveLinks {
    cxmat t1_dirs;   // m1 x r1_streams, orthonormal columns
    cxmat t2_dirs;   // m2 x r2_streams, orthonormal columns
    cxmat r1_comb;   // unitary rows applied to R1's outputs
    cxmat r2_comb;   // unitary rows applied to R2's outputs
    int r1_streams = 0;
    int r2_streams = 0;
    IntSchemeCase case_tag = IntSchemeCase::wide_tx;
};

/// Builds the two-link zero-forcing scheme for a canonical config:
/// cross-channel singular bases expose inputs/outputs that are invisible to
/// the other link, link 1 claims its full min(m1,n1) streams preferring
/// invisible directions, link 2 runs on whatever stays untouched. Stream
/// counts reproduce the two terms of the inner bound. Direct channels must
/// be full rank; cross channels may be rank deficient (a missing cross path
/// simply enlarges the invisible sets).
EffectiveLinks build_int_scheme(const ChannelRealization& ch,
                                const AntennaConfig& config,
                                IntDirectionPolicy policy = IntDirectionPolicy::fixed_order);

struct IntRateDiagnostics {
    double rate_link1 = 0.0;
    double rate_link2 = 0.0;
    // Worst residual cross-link interference power relative to the
    // per-stream signal power; ~1e-15 for a sound construction.
    double max_interference_ratio = 0.0;
};

/// Sum rate of the constructed scheme; each transmitter splits its own power
/// equally over its active streams. Throws if the residual interference
/// exceeds kInterferenceTol, which would mean the construction is broken.
double rate_int_zf(const ChannelRealization& ch, const EffectiveLinks& links,
                   double total_power_per_tx, IntRateDiagnostics* diag = nullptr);

/// Noise degradation of the genie-aided MAC bound:
///   K' = I - Z (Z^H Z)^-1 Z^H + alpha Z Z^H,
///   alpha = min(1/smax^2(Z), 1/smax^2(H_other)).
/// K' is Hermitian with eigenvalues in [0, 1].
struct GenieNoise {
    double alpha = 0.0;
    cxmat kprime;
};

/// Requires rows(z1) >= cols(z1) (the theorem hypothesis N1 >= M2) and z1
/// full column rank.
GenieNoise genie_noise(const cxmat& z1, const cxmat& h2);

enum class GenieSide { receiver1, receiver2, automatic };

/// The receiver the automatic rule settles on: the applicable side with the
/// larger antenna count, ties to receiver 1. Throws when neither N1 >= M2
/// nor N2 >= M1 holds.
GenieSide pick_genie_side(const AntennaConfig& config);

/// Genie MAC sum rate at the chosen receiver with modified noise K' and
/// equal-power inputs: log2 det(I + K'^-1 (H P/M H^H + Z P/M Z^H)).
/// Near-singular K' is handled by flooring its eigenvalues at 1e-12.
double rate_int_genie_outer(const ChannelRealization& ch,
                            const AntennaConfig& config,
                            double total_power_per_tx,
                            GenieSide side = GenieSide::automatic);

/// Two-phase cooperation throughput: full-duplex exchange over tt_channel at
/// power P (rate C_s), then joint broadcast from the combined 2m antennas at
/// power 2P (rate C_t); the time accounting gives 2 / (1/C_s + 2/C_t).
double rate_share_and_transmit(const ChannelRealization& ch,
                               const cxmat& tt_channel,
                               double total_power_per_tx);

/// One averaged operating point of a scheme.
struct RatePoint {
    double snr_db = 0.0;
    double sum_rate = 0.0;
};

}  // namespace mudof
