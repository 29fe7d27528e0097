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

#include <optional>
#include <string>

#include "mudof/net_model.hpp"

namespace mudof {

/// Exact reduced fraction; the share-and-transmit DoF is generally not an
/// integer. Everything in this module is exact arithmetic, no floating point.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);  // reduces, throws on d == 0

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;  // "8/5", or "2" when den == 1

    bool operator==(const Rational&) const = default;
};

/// Inner/outer DoF bounds; `exact` is set iff they coincide.
struct DofBounds {
    int inner = 0;
    int outer = 0;
    std::optional<int> exact;
};

/// Antenna counts at source, relay and destination.
struct RelayConfig {
    int ms = 1;
    int mr = 1;
    int md = 1;

    void validate() const;
    std::string str() const;  // "msxmrxmd"
};

/// Point-to-point MIMO link: min(m, n).
int dof_ptp(int m, int n);

/// Two-user multiple access channel: min(m1 + m2, n).
int dof_mac(int m1, int m2, int n);

/// Two-user broadcast channel: min(m, n1 + n2).
int dof_bc(int m, int n1, int n2);

struct CanonicalConfig {
    AntennaConfig config;
    bool swapped = false;
};

/// Relabels the links so link 1 has the most antennas on one of its ends.
/// Ties keep the user-supplied order. DoF results are label invariant.
CanonicalConfig canonicalize(const AntennaConfig& config);

/// Achievable DoF of the interference channel. Requires a canonical config:
///   min(M1,N1) + min(M2-N1,N2)+ [M1>N1] + min(M2,N2-M1)+ [M1<N1].
int dof_int_inner(const AntennaConfig& config);

/// Genie-aided upper bound, minimum over every applicable condition:
/// min(M1+M2, N1+N2) always; min(M1+M2, N1) when N1 >= M2; min(M1+M2, N2)
/// when N2 >= M1; and the same two conditions on the reciprocal network,
/// min(N1+N2, M1) when M1 >= N2 and min(N1+N2, M2) when M2 >= N1. Accepts
/// any link ordering and is invariant under it.
int dof_int_outer(const AntennaConfig& config);

/// Inner and outer bounds together; exact is set when they agree.
DofBounds dof_int_resolve(const AntennaConfig& config);

/// Achievable DoF of the X channel (both transmitters talk to both
/// receivers): the most capable embedded MAC or BC.
int dof_x_lower(const AntennaConfig& config);

/// Z channel (no T1->R2 path). Same bounds as the interference channel via
/// the genie correspondence; exposed separately to keep that reading visible.
DofBounds dof_z(const AntennaConfig& config);

/// Relay cut-set bound min[min(ms, mr+md), min(ms+mr, md)]. Evaluates both
/// that form and its simplification min(ms, md) and checks they agree.
int dof_relay_upper(const RelayConfig& r);

/// Share-and-transmit composite DoF for the symmetric (m,n),(m,n) network:
/// 2 / (1/DOF_share + 2/DOF_transmit) with DOF_share = m and DOF_transmit =
/// min(2m, 2n); reduces to 2*m*min(m,n) / (m + min(m,n)), which equals m
/// whenever m <= n.
Rational dof_share_transmit(int m, int n);

/// A configuration whose interference-channel DoF the two bounds pin down.
struct DofIntExactCase {
    AntennaConfig config;
    int dof = 0;
};

/// The eight reference configurations where inner and outer bounds meet.
const std::vector<DofIntExactCase>& dof_int_exact_cases();

}  // namespace mudof
