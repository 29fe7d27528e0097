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

#include "mudof/dof_formulas.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mudof {

namespace {

int positive_part(int x) { return std::max(0, x); }

void check_count(int c, const char* name) {
    if (c < 1)
        throw std::invalid_argument(std::string(name) + " must be >= 1.");
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational with zero denominator.");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

void RelayConfig::validate() const {
    if (ms < 1 || mr < 1 || md < 1)
        throw std::invalid_argument("Relay antenna counts must all be >= 1.");
}

std::string RelayConfig::str() const {
    return std::to_string(ms) + "x" + std::to_string(mr) + "x" + std::to_string(md);
}

int dof_ptp(int m, int n) {
    check_count(m, "m");
    check_count(n, "n");
    return std::min(m, n);
}

int dof_mac(int m1, int m2, int n) {
    check_count(m1, "m1");
    check_count(m2, "m2");
    check_count(n, "n");
    return std::min(m1 + m2, n);
}

int dof_bc(int m, int n1, int n2) {
    check_count(m, "m");
    check_count(n1, "n1");
    check_count(n2, "n2");
    return std::min(m, n1 + n2);
}

CanonicalConfig canonicalize(const AntennaConfig& config) {
    config.validate();
    if (std::max(config.m2, config.n2) > std::max(config.m1, config.n1))
        return {AntennaConfig{config.m2, config.n2, config.m1, config.n1}, true};
    return {config, false};
}

int dof_int_inner(const AntennaConfig& config) {
    config.validate();
    if (!config.canonical())
        throw std::invalid_argument(
            "dof_int_inner needs a canonical config (link 1 carries the most "
            "antennas); call canonicalize first.");
    const int m1 = config.m1, n1 = config.n1, m2 = config.m2, n2 = config.n2;
    int dof = std::min(m1, n1);
    if (m1 > n1) dof += positive_part(std::min(m2 - n1, n2));
    if (m1 < n1) dof += positive_part(std::min(m2, n2 - m1));
    return dof;
}

int dof_int_outer(const AntennaConfig& config) {
    config.validate();
    const int msum = config.m1 + config.m2;
    const int nsum = config.n1 + config.n2;
    int outer = std::min(msum, nsum);
    // Genie bounds at either receiver, plus the same argument run on the
    // reciprocal network (all transmit/receive roles exchanged); each is
    // individually valid, so their minimum is.
    if (config.n1 >= config.m2) outer = std::min(outer, std::min(msum, config.n1));
    if (config.n2 >= config.m1) outer = std::min(outer, std::min(msum, config.n2));
    if (config.m1 >= config.n2) outer = std::min(outer, std::min(nsum, config.m1));
    if (config.m2 >= config.n1) outer = std::min(outer, std::min(nsum, config.m2));
    return outer;
}

DofBounds dof_int_resolve(const AntennaConfig& config) {
    DofBounds b;
    b.inner = dof_int_inner(canonicalize(config).config);
    b.outer = dof_int_outer(config);
    if (b.inner == b.outer) b.exact = b.inner;
    return b;
}

int dof_x_lower(const AntennaConfig& config) {
    config.validate();
    const int via_mac = std::min(config.m1 + config.m2, std::max(config.n1, config.n2));
    const int via_bc = std::min(std::max(config.m1, config.m2), config.n1 + config.n2);
    return std::max(via_bc, via_mac);
}

DofBounds dof_z(const AntennaConfig& config) {
    // The genie outer bound turns the interference channel into exactly this
    // Z channel, so the bounds carry over unchanged.
    return dof_int_resolve(config);
}

int dof_relay_upper(const RelayConfig& r) {
    r.validate();
    const int cutset = std::min(std::min(r.ms, r.mr + r.md), std::min(r.ms + r.mr, r.md));
    const int direct = std::min(r.ms, r.md);
    if (cutset != direct)
        throw std::logic_error("Relay bound forms disagree; this cannot happen.");
    return cutset;
}

Rational dof_share_transmit(int m, int n) {
    check_count(m, "m");
    check_count(n, "n");
    const int dof_share = m;                 // m x m inter-transmitter link
    const int dof_transmit = std::min(2 * m, 2 * n);  // 2m-antenna broadcast
    // 2 / (1/dof_share + 2/dof_transmit), kept exact.
    return Rational(2LL * dof_share * dof_transmit,
                    dof_transmit + 2LL * dof_share);
}

const std::vector<DofIntExactCase>& dof_int_exact_cases() {
    static const std::vector<DofIntExactCase> cases = {
        {{1, 1, 1, 1}, 1}, {{1, 2, 1, 2}, 2}, {{2, 1, 2, 1}, 2},
        {{1, 2, 2, 1}, 1}, {{3, 2, 2, 3}, 2}, {{2, 3, 2, 3}, 3},
        {{2, 3, 1, 3}, 3}, {{2, 2, 3, 2}, 2}};
    return cases;
}

}  // namespace mudof
