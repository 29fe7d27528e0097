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

#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "mudof/runner.hpp"

namespace {

struct FlagBindings {
    std::string config;
    std::string scheme;
    int trials = 0;
    double snr_lo = 0.0, snr_hi = 0.0, snr_step = 0.0;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    double d_tt = 0.0, d_tr = 0.0;
    std::string out;
    std::string scenario_file;
    std::string plot_script;
};

// Shared flags; per-command extras are added by the caller.
void add_common_flags(CLI::App* cmd, FlagBindings* b) {
    cmd->add_option("--trials", b->trials, "Monte Carlo channel draws per SNR point (default 20)");
    cmd->add_option("--snr-lo", b->snr_lo, "Grid start in dB");
    cmd->add_option("--snr-hi", b->snr_hi, "Grid end in dB");
    cmd->add_option("--snr-step", b->snr_step, "Grid step in dB (default 5)");
    cmd->add_option("--seed", b->seed, "Base RNG seed (default 1)");
    cmd->add_option("--gamma", b->gamma, "Path-loss exponent (default 2)");
    cmd->add_option("--out", b->out, "Write the report/CSV here instead of stdout");
    cmd->add_option("--scenario", b->scenario_file, "key = value scenario file");
}

// Collects the flags the user actually set, then overlays the scenario file;
// a key present in both places is an error so every run stays auditable.
mudof::Scenario build_scenario(const std::string& kind, CLI::App* cmd,
                               const FlagBindings& b) {
    mudof::Scenario s;
    s.kind = kind;
    std::set<std::string> given;
    auto getc = [&](const char* name) { return cmd->count(name) > 0; };

    if (getc("config") || !b.config.empty()) {
        s.config = b.config;
        if (getc("config")) given.insert("config");
    }
    if (cmd->get_option_no_throw("--scheme") && getc("--scheme")) {
        s.scheme = b.scheme;
        given.insert("scheme");
    }
    if (getc("--trials")) { s.trials = b.trials; given.insert("trials"); }
    if (getc("--snr-lo")) { s.snr_lo_db = b.snr_lo; given.insert("snr-lo"); }
    if (getc("--snr-hi")) { s.snr_hi_db = b.snr_hi; given.insert("snr-hi"); }
    if (getc("--snr-step")) { s.snr_step_db = b.snr_step; given.insert("snr-step"); }
    if (getc("--seed")) { s.seed = b.seed; given.insert("seed"); }
    if (getc("--gamma")) { s.gamma = b.gamma; given.insert("gamma"); }
    if (cmd->get_option_no_throw("--d-tt") && getc("--d-tt")) {
        s.d_tt = b.d_tt;
        given.insert("d-tt");
    }
    if (cmd->get_option_no_throw("--d-tr") && getc("--d-tr")) {
        s.d_tr = b.d_tr;
        given.insert("d-tr");
    }
    if (getc("--out")) { s.out_path = b.out; given.insert("out"); }
    if (cmd->get_option_no_throw("--plot-script") && getc("--plot-script")) {
        s.plot_script = b.plot_script;
        given.insert("plot-script");
    }

    if (!b.scenario_file.empty())
        mudof::apply_scenario_file(s, b.scenario_file, given);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial degrees-of-freedom bounds, zero-forcing schemes and "
                 "Monte Carlo slope estimates for two-link MIMO networks"};
    app.require_subcommand(1);

    FlagBindings b;

    CLI::App* bounds = app.add_subcommand(
        "bounds", "Closed-form interference-channel bounds for m1,n1,m2,n2");
    bounds->add_option("config", b.config, "Antenna counts m1,n1,m2,n2");
    add_common_flags(bounds, &b);

    CLI::App* table = app.add_subcommand(
        "table", "Reference DoF table with Monte Carlo slope checks (CSV)");
    add_common_flags(table, &b);
    table->add_option("config", b.config)->group("");  // only via scenario files

    CLI::App* estimate = app.add_subcommand(
        "estimate", "Rate sweep and DoF slope fit for one scheme (CSV)");
    estimate->add_option("config", b.config,
                         "Counts; shape depends on the scheme (see --scheme)");
    estimate->add_option("--scheme", b.scheme,
                         "ptp (m,n) | mac-zf (m1,m2,n) | bc-zf (m,n1,n2) | "
                         "int-zf (m1,n1,m2,n2) | int-genie (m1,n1,m2,n2) | "
                         "share-transmit (m,n)");
    add_common_flags(estimate, &b);

    CLI::App* coop = app.add_subcommand(
        "coop", "Transmit-only vs share-and-transmit sweep (CSV)");
    coop->add_option("config", b.config, "Symmetric network m,n (default 4,1)");
    coop->add_option("--d-tt", b.d_tt, "Distance between the transmitters (default 1)");
    coop->add_option("--d-tr", b.d_tr, "Distance transmitter to receiver (default 1)");
    coop->add_option("--plot-script", b.plot_script, "Also write a gnuplot script here");
    add_common_flags(coop, &b);

    CLI::App* relay = app.add_subcommand(
        "relay", "Relay channel DoF upper bound for ms,mr,md");
    relay->add_option("config", b.config, "Antenna counts ms,mr,md");
    add_common_flags(relay, &b);

    CLI::App* xz = app.add_subcommand(
        "xz", "X-channel lower bound and Z-channel bounds for m1,n1,m2,n2");
    xz->add_option("config", b.config, "Antenna counts m1,n1,m2,n2");
    add_common_flags(xz, &b);

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    try {
        return mudof::run_scenario(build_scenario(sub->get_name(), sub, b));
    } catch (const std::exception& e) {
        std::cerr << "mudof: " << e.what() << "\n";
        return 2;
    }
}
