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

#include "mudof/schemes.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mudof/dof_formulas.hpp"

namespace mudof {

namespace {

using Eigen::ComputeFullU;
using Eigen::ComputeFullV;
using Eigen::Index;

double log2_1p(double x) { return std::log2(1.0 + x); }

int numerical_rank(const Eigen::VectorXd& sv) {
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > kRankRelTol * sv(0)) ++r;
    return r;
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Noise variances of a pseudo-inverse receiver on a tall or square matrix
// with full column rank: diag((G^H G)^-1).
std::vector<double> zf_noise_scales(const cxmat& g) {
    const cxmat gram = g.adjoint() * g;
    const cxmat inv = gram.inverse();
    std::vector<double> lambda(static_cast<std::size_t>(g.cols()));
    for (Index i = 0; i < g.cols(); ++i) lambda[static_cast<std::size_t>(i)] = inv(i, i).real();
    return lambda;
}

std::vector<double> row_norms_sq(const cxmat& a) {
    std::vector<double> out(static_cast<std::size_t>(a.rows()));
    for (Index i = 0; i < a.rows(); ++i) out[static_cast<std::size_t>(i)] = a.row(i).squaredNorm();
    return out;
}

double waterfill_rate(const Eigen::VectorXd& sv, double total_power) {
    // sv descending; channel power gains g_i = sv_i^2.
    const int r = static_cast<int>(sv.size());
    double inv_gain_prefix = 0.0;
    std::vector<double> inv_gain(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) inv_gain[static_cast<std::size_t>(i)] = 1.0 / (sv(i) * sv(i));
    int active = r;
    double level = 0.0;
    while (active > 0) {
        inv_gain_prefix = std::accumulate(inv_gain.begin(), inv_gain.begin() + active, 0.0);
        level = (total_power + inv_gain_prefix) / active;
        if (level > inv_gain[static_cast<std::size_t>(active - 1)]) break;
        --active;
    }
    double rate = 0.0;
    for (int i = 0; i < active; ++i) rate += std::log2(level / inv_gain[static_cast<std::size_t>(i)]);
    return rate;
}

}  // namespace

double rate_parallel(const ParallelChannels& pc, double total_power) {
    if (!(total_power > 0.0)) throw std::invalid_argument("Total power must be > 0.");
    if (pc.noise_scales.empty()) return 0.0;
    const double per_stream = total_power / static_cast<double>(pc.stream_count());
    double rate = 0.0;
    for (double lambda : pc.noise_scales) {
        if (!(lambda > 0.0))
            throw std::invalid_argument("Per-stream noise variances must be > 0.");
        rate += log2_1p(per_stream / lambda);
    }
    return rate;
}

double rate_ptp(const cxmat& h, double total_power, bool waterfill) {
    require(h.size() > 0, "Empty channel matrix.");
    if (!(total_power > 0.0)) throw std::invalid_argument("Total power must be > 0.");
    Eigen::JacobiSVD<cxmat> svd(h);
    const Eigen::VectorXd sv = svd.singularValues();
    const int r = static_cast<int>(std::min(h.rows(), h.cols()));
    if (numerical_rank(sv) < r)
        throw std::invalid_argument("rate_ptp: channel matrix is rank deficient.");
    if (waterfill) return waterfill_rate(sv.head(r), total_power);
    const double per_stream = total_power / r;
    double rate = 0.0;
    for (int i = 0; i < r; ++i) rate += log2_1p(per_stream * sv(i) * sv(i));
    return rate;
}

double rate_mac_zf(const std::vector<cxmat>& h_users, double total_power) {
    require(!h_users.empty(), "rate_mac_zf needs at least one user.");
    const Index n = h_users.front().rows();
    Index m_total = 0;
    for (const cxmat& h : h_users) {
        require(h.rows() == n, "All user channels must share the receiver dimension.");
        require(h.cols() >= 1, "Empty user channel.");
        m_total += h.cols();
    }

    // Each user rotates into its singular basis; the effective stacked
    // channel keeps only nonzero-gain columns (U_k Lambda_k per user).
    cxmat stacked(n, m_total);
    Index col = 0;
    for (const cxmat& h : h_users) {
        Eigen::JacobiSVD<cxmat> svd(h, ComputeFullU | ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        const int rk = numerical_rank(sv);
        if (rk < std::min(h.rows(), h.cols()))
            throw std::invalid_argument("rate_mac_zf: a user channel is rank deficient.");
        for (int i = 0; i < rk; ++i) stacked.col(col++) = svd.matrixU().col(i) * sv(i);
    }
    const Index streams = std::min(col, n);
    const cxmat effective = stacked.leftCols(streams);
    if (!full_rank(effective))
        throw std::invalid_argument("rate_mac_zf: stacked channel rank collapse.");
    return rate_parallel(ParallelChannels{zf_noise_scales(effective)}, total_power);
}

double rate_bc_zf(const std::vector<cxmat>& h_users, double total_power) {
    require(!h_users.empty(), "rate_bc_zf needs at least one user.");
    const Index m = h_users.front().cols();
    Index n_total = 0;
    for (const cxmat& h : h_users) {
        require(h.cols() == m, "All user channels must share the transmitter dimension.");
        require(h.rows() >= 1, "Empty user channel.");
        n_total += h.rows();
    }
    const Index streams = std::min(m, n_total);

    // When the receive side is larger than the transmit array, each user
    // keeps its leading antennas until the stream budget is spent.
    cxmat sel(streams, m);
    Index row = 0;
    for (const cxmat& h : h_users) {
        const Index take = std::min(h.rows(), streams - row);
        if (take > 0) sel.middleRows(row, take) = h.topRows(take);
        row += take;
        if (row == streams) break;
    }
    if (!full_rank(sel))
        throw std::invalid_argument("rate_bc_zf: stacked receive matrix rank collapse.");

    // W = pinv(sel); column norms of W are the diagonal of (S S^H)^-1 and
    // act as per-stream noise scales once total power is fixed at P.
    const cxmat gram = sel * sel.adjoint();
    const cxmat inv = gram.inverse();
    std::vector<double> lambda(static_cast<std::size_t>(streams));
    for (Index i = 0; i < streams; ++i) lambda[static_cast<std::size_t>(i)] = inv(i, i).real();
    return rate_parallel(ParallelChannels{std::move(lambda)}, total_power);
}

namespace {

// Reorders candidate indices by descending own-link gain; `gain_of` maps a
// candidate to its squared channel norm. Ties keep the original order.
std::vector<Index> rank_by_gain(std::vector<Index> candidates,
                                const std::function<double(Index)>& gain_of) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](Index a, Index b) { return gain_of(a) > gain_of(b); });
    return candidates;
}

std::vector<Index> iota_range(Index from, Index to) {
    std::vector<Index> v;
    for (Index j = from; j < to; ++j) v.push_back(j);
    return v;
}

}  // namespace

EffectiveLinks build_int_scheme(const ChannelRealization& ch,
                                const AntennaConfig& config,
                                IntDirectionPolicy policy) {
    config.validate();
    if (!config.canonical())
        throw std::invalid_argument(
            "build_int_scheme needs a canonical config; call canonicalize first.");
    const Index m1 = config.m1, n1 = config.n1, m2 = config.m2, n2 = config.n2;
    require(ch.h1.rows() == n1 && ch.h1.cols() == m1, "h1 dimensions do not match the config.");
    require(ch.h2.rows() == n2 && ch.h2.cols() == m2, "h2 dimensions do not match the config.");
    require(ch.z1.rows() == n1 && ch.z1.cols() == m2, "z1 dimensions do not match the config.");
    require(ch.z2.rows() == n2 && ch.z2.cols() == m1, "z2 dimensions do not match the config.");
    if (!full_rank(ch.h1) || !full_rank(ch.h2))
        throw std::invalid_argument("build_int_scheme: a direct channel is rank deficient.");

    Eigen::JacobiSVD<cxmat> svd_z2(ch.z2, ComputeFullU | ComputeFullV);
    Eigen::JacobiSVD<cxmat> svd_z1(ch.z1, ComputeFullU | ComputeFullV);
    const int r2x = numerical_rank(svd_z2.singularValues());  // rank of T1 -> R2
    const int r1x = numerical_rank(svd_z1.singularValues());  // rank of T2 -> R1
    const cxmat& v2 = svd_z2.matrixV();  // m1 x m1, T1's effective inputs
    const cxmat& u2 = svd_z2.matrixU();  // n2 x n2, R2's effective outputs
    const cxmat& v1 = svd_z1.matrixV();  // m2 x m2, T2's effective inputs
    const cxmat& u1 = svd_z1.matrixU();  // n1 x n1, R1's effective outputs

    EffectiveLinks links;
    const bool ranked = policy == IntDirectionPolicy::own_gain_ranked;

    if (m1 >= n1) {
        links.case_tag = IntSchemeCase::wide_tx;
        // T1 sends its full min(m1,n1) = n1 streams, preferring input
        // directions in the null space of z2 (invisible to R2).
        const Index invisible1 = m1 - r2x;
        const Index inv_used = std::min<Index>(n1, invisible1);
        const Index vis_used = n1 - inv_used;  // each pollutes one R2 output

        std::vector<Index> inv1 = iota_range(r2x, m1);
        if (ranked)
            inv1 = rank_by_gain(std::move(inv1), [&](Index j) {
                return (ch.h1 * v2.col(j)).squaredNorm();
            });
        cxmat t1(m1, n1);
        for (Index k = 0; k < inv_used; ++k) t1.col(k) = v2.col(inv1[static_cast<std::size_t>(k)]);
        for (Index k = 0; k < vis_used; ++k)  // weakest visible gains first
            t1.col(inv_used + k) = v2.col(r2x - 1 - k);
        links.t1_dirs = std::move(t1);
        links.r1_streams = static_cast<int>(n1);
        links.r1_comb = cxmat::Identity(n1, n1);

        // R2 keeps the effective outputs link 1 never touches; T2 talks
        // through inputs invisible to R1.
        std::vector<Index> untouched;
        for (Index j = 0; j < n2; ++j)
            if (j < r2x - vis_used || j >= r2x) untouched.push_back(j);
        cxmat r2c(static_cast<Index>(untouched.size()), n2);
        for (std::size_t k = 0; k < untouched.size(); ++k)
            r2c.row(static_cast<Index>(k)) = u2.col(untouched[k]).adjoint();
        links.r2_comb = std::move(r2c);

        // Link 2 takes its leftovers in plain basis order under both
        // policies; only the privileged link gets the ranked choice.
        const Index invisible2 = m2 - r1x;
        const Index r2s = std::min<Index>(invisible2, static_cast<Index>(untouched.size()));
        links.t2_dirs = v1.middleCols(r1x, r2s);
        links.r2_streams = static_cast<int>(r2s);
    } else {
        links.case_tag = IntSchemeCase::tall_rx;
        // Dual construction: R1 listens on m1 effective outputs, preferring
        // the ones the cross channel z1 never reaches.
        const Index invisible1 = n1 - r1x;
        const Index inv_used = std::min<Index>(m1, invisible1);
        const Index conn_used = m1 - inv_used;  // each blocks one T2 input

        std::vector<Index> inv_out = iota_range(r1x, n1);
        if (ranked)
            inv_out = rank_by_gain(std::move(inv_out), [&](Index j) {
                return (u1.col(j).adjoint() * ch.h1).squaredNorm();
            });
        std::vector<Index> selected(inv_out.begin(), inv_out.begin() + inv_used);
        for (Index k = 0; k < conn_used; ++k) selected.push_back(r1x - 1 - k);
        cxmat r1c(m1, n1);
        for (std::size_t k = 0; k < selected.size(); ++k)
            r1c.row(static_cast<Index>(k)) = u1.col(selected[k]).adjoint();
        links.r1_comb = std::move(r1c);
        links.t1_dirs = v2;  // T1 uses its whole input space
        links.r1_streams = static_cast<int>(m1);

        // R2's free effective outputs: T1 occupies everything z2 reaches.
        const Index free_out = n2 - r2x;
        cxmat r2c(free_out, n2);
        for (Index k = 0; k < free_out; ++k) r2c.row(k) = u2.col(r2x + k).adjoint();
        links.r2_comb = std::move(r2c);

        // T2's usable effective inputs: null-space inputs first, then
        // connected inputs whose R1-side output stayed unselected.
        std::vector<Index> usable = iota_range(r1x, m2);
        for (Index j = 0; j < r1x - conn_used; ++j) usable.push_back(j);
        const Index r2s =
            std::min<Index>(static_cast<Index>(usable.size()), free_out);
        cxmat t2(m2, r2s);
        for (Index k = 0; k < r2s; ++k) t2.col(k) = v1.col(usable[static_cast<std::size_t>(k)]);
        links.t2_dirs = std::move(t2);
        links.r2_streams = static_cast<int>(r2s);
    }
    return links;
}

double rate_int_zf(const ChannelRealization& ch, const EffectiveLinks& links,
                   double total_power_per_tx, IntRateDiagnostics* diag) {
    if (!(total_power_per_tx > 0.0))
        throw std::invalid_argument("Total power must be > 0.");
    const int r1 = links.r1_streams;
    const int r2 = links.r2_streams;

    const cxmat g1 = links.r1_comb * ch.h1 * links.t1_dirs;  // r1 x r1
    if (!full_rank(g1))
        throw std::runtime_error("rate_int_zf: link 1 effective channel is rank deficient.");
    const cxmat f1 = g1.inverse() * links.r1_comb;
    const double rate1 =
        rate_parallel(ParallelChannels{row_norms_sq(f1)}, total_power_per_tx);

    double rate2 = 0.0;
    double worst_ratio = 0.0;
    if (r2 > 0) {
        const cxmat g2 = links.r2_comb * ch.h2 * links.t2_dirs;
        if (!full_rank(g2))
            throw std::runtime_error("rate_int_zf: link 2 effective channel is rank deficient.");
        const cxmat f2 = (g2.adjoint() * g2).inverse() * g2.adjoint() * links.r2_comb;
        rate2 = rate_parallel(ParallelChannels{row_norms_sq(f2)}, total_power_per_tx);

        // Residual cross-link leakage per stream, relative to the unit
        // signal gain the zero-forced streams have by construction.
        const cxmat leak1 = f1 * ch.z1 * links.t2_dirs;  // r1 x r2
        const cxmat leak2 = f2 * ch.z2 * links.t1_dirs;  // r2 x r1
        for (double v : row_norms_sq(leak1))
            worst_ratio = std::max(worst_ratio, v * static_cast<double>(r1) / r2);
        for (double v : row_norms_sq(leak2))
            worst_ratio = std::max(worst_ratio, v * static_cast<double>(r2) / r1);
        if (worst_ratio > kInterferenceTol)
            throw std::runtime_error(
                "rate_int_zf: residual cross-link interference above tolerance; "
                "the construction is broken.");
    }

    if (diag) {
        diag->rate_link1 = rate1;
        diag->rate_link2 = rate2;
        diag->max_interference_ratio = worst_ratio;
    }
    return rate1 + rate2;
}

GenieNoise genie_noise(const cxmat& z1, const cxmat& h2) {
    require(z1.size() > 0 && h2.size() > 0, "Empty channel matrix.");
    if (z1.rows() < z1.cols())
        throw std::invalid_argument(
            "genie_noise: theorem hypothesis violated, needs as many receive "
            "antennas as the interferer has transmit antennas.");
    Eigen::JacobiSVD<cxmat> svd_z(z1, ComputeFullU | ComputeFullV);
    const Eigen::VectorXd sv = svd_z.singularValues();
    if (numerical_rank(sv) < z1.cols())
        throw std::invalid_argument("genie_noise: Z^H Z is singular.");
    Eigen::JacobiSVD<cxmat> svd_h(h2);
    const double smax_z = sv(0);
    const double smax_h = svd_h.singularValues()(0);
    require(smax_h > 0.0, "genie_noise: zero direct channel.");

    GenieNoise gn;
    gn.alpha = std::min(1.0 / (smax_z * smax_z), 1.0 / (smax_h * smax_h));
    const Index n = z1.rows();
    // Column-space projector of z1 through its thin left singular basis.
    const cxmat u_col = svd_z.matrixU().leftCols(z1.cols());
    cxmat k = cxmat::Identity(n, n) - u_col * u_col.adjoint() +
              gn.alpha * (z1 * z1.adjoint());
    gn.kprime = 0.5 * (k + k.adjoint());
    return gn;
}

GenieSide pick_genie_side(const AntennaConfig& config) {
    config.validate();
    const bool r1_ok = config.n1 >= config.m2;
    const bool r2_ok = config.n2 >= config.m1;
    if (!r1_ok && !r2_ok)
        throw std::invalid_argument(
            "Genie bound inapplicable for " + config.str() +
            ": needs N1 >= M2 (got " + std::to_string(config.n1) + " < " +
            std::to_string(config.m2) + ") or N2 >= M1 (got " +
            std::to_string(config.n2) + " < " + std::to_string(config.m1) + ").");
    if (r1_ok && r2_ok)
        return config.n1 >= config.n2 ? GenieSide::receiver1 : GenieSide::receiver2;
    return r1_ok ? GenieSide::receiver1 : GenieSide::receiver2;
}

double rate_int_genie_outer(const ChannelRealization& ch,
                            const AntennaConfig& config,
                            double total_power_per_tx, GenieSide side) {
    if (!(total_power_per_tx > 0.0))
        throw std::invalid_argument("Total power must be > 0.");
    if (side == GenieSide::automatic) side = pick_genie_side(config);

    cxmat own, cross;
    int m_own = 0, m_cross = 0;
    if (side == GenieSide::receiver1) {
        if (config.n1 < config.m2)
            throw std::invalid_argument("Genie bound at receiver 1 needs N1 >= M2.");
        own = ch.h1;
        cross = ch.z1;
        m_own = config.m1;
        m_cross = config.m2;
    } else {
        if (config.n2 < config.m1)
            throw std::invalid_argument("Genie bound at receiver 2 needs N2 >= M1.");
        own = ch.h2;
        cross = ch.z2;
        m_own = config.m2;
        m_cross = config.m1;
    }

    const cxmat& direct_other = (side == GenieSide::receiver1) ? ch.h2 : ch.h1;
    const GenieNoise gn = genie_noise(cross, direct_other);

    const Index n = own.rows();
    const cxmat signal = own * (total_power_per_tx / m_own) * own.adjoint() +
                         cross * (total_power_per_tx / m_cross) * cross.adjoint();

    // K' is positive definite in exact arithmetic (eigenvalues are 1 on the
    // complement of col(Z) and alpha*sigma_i^2 > 0 inside it); floor tiny
    // eigenvalues at 1e-12 so near-degenerate draws stay computable.
    Eigen::SelfAdjointEigenSolver<cxmat> es(gn.kprime);
    constexpr double kEigFloor = 1e-12;
    Eigen::VectorXd d = es.eigenvalues();
    for (Index i = 0; i < d.size(); ++i) d(i) = 1.0 / std::sqrt(std::max(d(i), kEigFloor));
    const cxmat whiten = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();

    cxmat m = cxmat::Identity(n, n) + whiten * signal * whiten.adjoint();
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<cxmat> esm(m);
    double rate = 0.0;
    for (Index i = 0; i < n; ++i) rate += std::log2(std::max(esm.eigenvalues()(i), 1.0));
    return rate;
}

double rate_share_and_transmit(const ChannelRealization& ch,
                               const cxmat& tt_channel,
                               double total_power_per_tx) {
    const Index m = ch.h1.cols();
    const Index n = ch.h1.rows();
    require(ch.h2.rows() == n && ch.h2.cols() == m &&
                ch.z1.rows() == n && ch.z1.cols() == m &&
                ch.z2.rows() == n && ch.z2.cols() == m,
            "rate_share_and_transmit needs a symmetric (m,n),(m,n) network.");
    require(tt_channel.rows() == m && tt_channel.cols() == m,
            "Inter-transmitter channel must be m x m.");
    if (!full_rank(tt_channel))
        throw std::invalid_argument("rate_share_and_transmit: sharing channel is rank deficient.");

    const double c_share = rate_ptp(tt_channel, total_power_per_tx);

    // Combined transmitter [T1 | T2] broadcasting to both receivers.
    cxmat user1(n, 2 * m), user2(n, 2 * m);
    user1 << ch.h1, ch.z1;
    user2 << ch.z2, ch.h2;
    const double c_transmit = rate_bc_zf({user1, user2}, 2.0 * total_power_per_tx);

    return 2.0 / (1.0 / c_share + 2.0 / c_transmit);
}

}  // namespace mudof
