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

#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "mudof/dof_formulas.hpp"
#include "mudof/estimator.hpp"

namespace mudof {

// cmd_table flags a row when the Monte Carlo estimate strays further than
// this from the exact DoF.
inline constexpr double kTableTol = 0.15;

/// Everything needed to rerun an experiment; a Scenario plus the artifact
/// version pins every output byte. Unset fields fall back to per-command
/// defaults at run time.
struct Scenario {
    std::string kind;    // bounds | table | estimate | coop | relay | xz
    std::string config;  // comma-separated counts, meaning depends on command
    std::string scheme;  // estimate only
    std::optional<int> trials;
    std::optional<double> snr_lo_db;
    std::optional<double> snr_hi_db;
    std::optional<double> snr_step_db;
    std::optional<std::uint64_t> seed;
    std::optional<double> gamma;
    std::optional<double> d_tt;  // inter-transmitter distance (coop)
    std::optional<double> d_tr;  // transmitter-receiver distance (coop)
    std::string out_path;        // empty -> stdout
    std::string plot_script;     // optional gnuplot companion (coop)
};

/// One CSV line of any experiment output.
struct ResultRow {
    std::string scenario;
    std::string config;
    std::string scheme;
    double snr_db = 0.0;
    double sum_rate = 0.0;
    double dof_inner = 0.0;
    double dof_outer = 0.0;
    std::optional<double> dof_exact;  // set iff inner == outer
    std::optional<double> dof_hat;
    std::optional<double> std_err;
    std::uint64_t seed = 0;
};

/// "scenario,config,scheme,snr_db,sum_rate,dof_inner,dof_outer,dof_exact,dof_hat,stderr,seed"
std::string csv_header();
std::string csv_row(const ResultRow& row);
/// Shortest decimal form with 6 significant digits.
std::string format_sig(double x);

/// Splits "a,b,c" into integers; throws with `what` in the message when the
/// count or syntax is off.
std::vector<int> parse_counts(const std::string& text, std::size_t expected,
                              const std::string& what);

/// Line-oriented `key = value` scenario file; '#' starts a comment. Keys
/// match the CLI flags (config, scheme, trials, snr-lo, snr-hi, snr-step,
/// seed, gamma, d-tt, d-tr, out, plot-script). A key that was already given
/// on the command line is a conflict and throws.
void apply_scenario_file(Scenario& scenario, const std::string& path,
                         const std::set<std::string>& cli_given);

// Commands. Each writes its report/CSV to `out` and returns the process
// exit code: 0 on success (all embedded tolerance checks passing), 1 when a
// tolerance check fails. Invalid inputs throw std::invalid_argument.
int cmd_bounds(const Scenario& scenario, std::ostream& out);
int cmd_table(const Scenario& scenario, std::ostream& out);
int cmd_estimate(const Scenario& scenario, std::ostream& out);
int cmd_coop(const Scenario& scenario, std::ostream& out);
int cmd_relay(const Scenario& scenario, std::ostream& out);
int cmd_xz(const Scenario& scenario, std::ostream& out);

/// Opens scenario.out_path (or stdout), dispatches on scenario.kind, maps
/// thrown errors to exit code 2 with a message on stderr.
int run_scenario(const Scenario& scenario);

}  // namespace mudof
