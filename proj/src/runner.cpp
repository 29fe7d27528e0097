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

#include "mudof/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mudof {

namespace {

struct ResolvedParams {
    int trials = kDefaultTrials;
    double lo = kDefaultWindowLoDb;
    double hi = kDefaultWindowHiDb;
    double step = kDefaultStepDb;
    std::uint64_t seed = 1;
    double gamma = 2.0;
    double d_tt = 1.0;
    double d_tr = 1.0;
};

ResolvedParams resolve(const Scenario& s, double default_lo, double default_hi) {
    ResolvedParams p;
    p.trials = s.trials.value_or(kDefaultTrials);
    p.lo = s.snr_lo_db.value_or(default_lo);
    p.hi = s.snr_hi_db.value_or(default_hi);
    p.step = s.snr_step_db.value_or(kDefaultStepDb);
    p.seed = s.seed.value_or(1);
    p.gamma = s.gamma.value_or(2.0);
    p.d_tt = s.d_tt.value_or(1.0);
    p.d_tr = s.d_tr.value_or(1.0);
    if (p.trials < 1) throw std::invalid_argument("trials must be >= 1.");
    return p;
}

void emit_grid_meta(std::ostream& out, const ResolvedParams& p,
                    double win_lo, double win_hi) {
    out << "# trials = " << p.trials << "\n";
    out << "# snr_grid_db = " << format_sig(p.lo) << ":" << format_sig(p.step)
        << ":" << format_sig(p.hi) << "\n";
    out << "# slope_window_db = " << format_sig(win_lo) << ":"
        << format_sig(win_hi) << "\n";
    out << "# gamma = " << format_sig(p.gamma) << "\n";
    out << "# seed = " << p.seed << "\n";
}

AntennaConfig config4(const std::string& text, const std::string& what) {
    const std::vector<int> v = parse_counts(text, 4, what);
    AntennaConfig c{v[0], v[1], v[2], v[3]};
    c.validate();
    return c;
}

std::string tuple_str(const AntennaConfig& c) {
    std::ostringstream os;
    os << "(" << c.m1 << "," << c.n1 << "),(" << c.m2 << "," << c.n2 << ")";
    return os.str();
}

void print_bounds_line(std::ostream& out, const char* label, const DofBounds& b) {
    out << label << " inner = " << b.inner << ", outer = " << b.outer;
    if (b.exact)
        out << ", exact = " << *b.exact << "\n";
    else
        out << ", exact undetermined: DoF in [" << b.inner << ", " << b.outer << "]\n";
}

// Everything cmd_estimate needs for one scheme label.
struct EstimateSetup {
    AntennaConfig sample_config;
    LinkGains gains;
    SchemeFn fn;
    double dof_inner = 0.0;
    double dof_outer = 0.0;
    std::optional<double> dof_exact;
    std::string config_str;  // the user's counts, x-joined for CSV fields
    std::string note;        // extra metadata line
};

std::string xjoin(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(v[i]);
    }
    return s;
}

SchemeFn make_int_zf_fn(const AntennaConfig& canonical,
                        IntDirectionPolicy policy) {
    return [canonical, policy](const ChannelRealization& ch, std::uint64_t,
                               double power) {
        return rate_int_zf(ch, build_int_scheme(ch, canonical, policy), power);
    };
}

SchemeFn make_share_fn(int m, double tt_gain) {
    return [m, tt_gain](const ChannelRealization& ch, std::uint64_t aux_seed,
                        double power) {
        const cxmat tt = sample_full_rank_matrix(m, m, tt_gain, aux_seed);
        return rate_share_and_transmit(ch, tt, power);
    };
}

EstimateSetup make_estimate_setup(const std::string& scheme,
                                  const std::string& config_text,
                                  const ResolvedParams& p) {
    EstimateSetup su;
    su.gains = LinkGains::uniform(path_gain(p.d_tr, p.gamma));

    if (scheme == "ptp") {
        const auto v = parse_counts(config_text, 2, "ptp config m,n");
        su.config_str = xjoin(v);
        su.sample_config = AntennaConfig{v[0], v[1], 1, 1};
        su.fn = [](const ChannelRealization& ch, std::uint64_t, double power) {
            return rate_ptp(ch.h1, power);
        };
        su.dof_inner = su.dof_outer = dof_ptp(v[0], v[1]);
    } else if (scheme == "mac-zf") {
        const auto v = parse_counts(config_text, 3, "mac-zf config m1,m2,n");
        su.config_str = xjoin(v);
        su.sample_config = AntennaConfig{v[0], v[2], v[1], v[2]};
        su.fn = [](const ChannelRealization& ch, std::uint64_t, double power) {
            return rate_mac_zf({ch.h1, ch.z1}, power);
        };
        su.dof_inner = su.dof_outer = dof_mac(v[0], v[1], v[2]);
    } else if (scheme == "bc-zf") {
        const auto v = parse_counts(config_text, 3, "bc-zf config m,n1,n2");
        su.config_str = xjoin(v);
        su.sample_config = AntennaConfig{v[0], v[1], 1, v[2]};
        su.fn = [](const ChannelRealization& ch, std::uint64_t, double power) {
            return rate_bc_zf({ch.h1, ch.z2}, power);
        };
        su.dof_inner = su.dof_outer = dof_bc(v[0], v[1], v[2]);
    } else if (scheme == "int-zf") {
        const AntennaConfig c = config4(config_text, "int-zf config m1,n1,m2,n2");
        const AntennaConfig canon = canonicalize(c).config;
        su.config_str = c.str();
        su.sample_config = canon;
        su.fn = make_int_zf_fn(canon, IntDirectionPolicy::fixed_order);
        const DofBounds b = dof_int_resolve(c);
        su.dof_inner = b.inner;
        su.dof_outer = b.outer;
        if (b.exact) su.dof_exact = *b.exact;
        return su;
    } else if (scheme == "int-genie") {
        const AntennaConfig c = config4(config_text, "int-genie config m1,n1,m2,n2");
        const GenieSide side = pick_genie_side(c);  // throws when inapplicable
        su.config_str = c.str();
        su.sample_config = c;
        su.fn = [c, side](const ChannelRealization& ch, std::uint64_t, double power) {
            return rate_int_genie_outer(ch, c, power, side);
        };
        const DofBounds b = dof_int_resolve(c);
        su.dof_inner = b.inner;
        su.dof_outer = b.outer;
        if (b.exact) su.dof_exact = *b.exact;
        su.note = std::string("genie_side = ") +
                  (side == GenieSide::receiver1 ? "receiver1" : "receiver2");
        return su;
    } else if (scheme == "share-transmit") {
        const auto v = parse_counts(config_text, 2, "share-transmit config m,n");
        su.config_str = xjoin(v);
        su.sample_config = AntennaConfig{v[0], v[1], v[0], v[1]};
        su.fn = make_share_fn(v[0], path_gain(p.d_tt, p.gamma));
        const double dof = dof_share_transmit(v[0], v[1]).value();
        su.dof_inner = su.dof_outer = dof;
        su.dof_exact = dof;
        return su;
    } else {
        throw std::invalid_argument(
            "Unknown scheme '" + scheme +
            "'; expected one of ptp, mac-zf, bc-zf, int-zf, int-genie, share-transmit.");
    }
    su.dof_exact = su.dof_inner;
    return su;
}

ResultRow base_row(const std::string& scenario, const std::string& config,
                   const EstimateSetup& su, std::uint64_t seed) {
    ResultRow row;
    row.scenario = scenario;
    row.config = config;
    row.dof_inner = su.dof_inner;
    row.dof_outer = su.dof_outer;
    row.dof_exact = su.dof_exact;
    row.seed = seed;
    return row;
}

void emit_curve_rows(std::ostream& out, const RateCurve& curve,
                     const SlopeEstimate& est, ResultRow row,
                     const std::string& scheme_label) {
    row.scheme = scheme_label;
    for (const RatePoint& pt : curve.points) {
        row.snr_db = pt.snr_db;
        row.sum_rate = pt.sum_rate;
        out << csv_row(row) << "\n";
    }
    row.scheme = scheme_label + ":slope";
    row.snr_db = curve.points.back().snr_db;
    row.sum_rate = curve.points.back().sum_rate;
    row.dof_hat = est.dof_hat;
    row.std_err = est.std_err;
    out << csv_row(row) << "\n";
}

}  // namespace

std::string format_sig(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string csv_header() {
    return "scenario,config,scheme,snr_db,sum_rate,dof_inner,dof_outer,"
           "dof_exact,dof_hat,stderr,seed";
}

std::string csv_row(const ResultRow& row) {
    auto opt = [](const std::optional<double>& v) {
        return v ? format_sig(*v) : std::string();
    };
    std::ostringstream os;
    os << row.scenario << "," << row.config << "," << row.scheme << ","
       << format_sig(row.snr_db) << "," << format_sig(row.sum_rate) << ","
       << format_sig(row.dof_inner) << "," << format_sig(row.dof_outer) << ","
       << opt(row.dof_exact) << "," << opt(row.dof_hat) << ","
       << opt(row.std_err) << "," << row.seed;
    return os.str();
}

std::vector<int> parse_counts(const std::string& text, std::size_t expected,
                              const std::string& what) {
    if (text.empty() || text.front() == ',' || text.back() == ',')
        throw std::invalid_argument("Malformed " + what + ": '" + text + "'.");
    std::vector<int> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(token, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
        if (pos != token.size() || token.empty())
            throw std::invalid_argument("Malformed " + what + ": '" + text + "'.");
        out.push_back(value);
    }
    if (out.size() != expected)
        throw std::invalid_argument("Expected " + std::to_string(expected) +
                                    " comma-separated counts for " + what +
                                    ", got '" + text + "'.");
    return out;
}

void apply_scenario_file(Scenario& scenario, const std::string& path,
                         const std::set<std::string>& cli_given) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("Cannot open scenario file: " + path);

    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        return s.substr(b, e - b + 1);
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("Scenario file line " + std::to_string(lineno) +
                                        ": expected 'key = value'.");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (cli_given.count(key))
            throw std::invalid_argument("Scenario file key '" + key +
                                        "' conflicts with a command-line flag; "
                                        "give each value exactly once.");
        try {
            if (key == "config") scenario.config = value;
            else if (key == "scheme") scenario.scheme = value;
            else if (key == "trials") scenario.trials = std::stoi(value);
            else if (key == "snr-lo") scenario.snr_lo_db = std::stod(value);
            else if (key == "snr-hi") scenario.snr_hi_db = std::stod(value);
            else if (key == "snr-step") scenario.snr_step_db = std::stod(value);
            else if (key == "seed") scenario.seed = std::stoull(value);
            else if (key == "gamma") scenario.gamma = std::stod(value);
            else if (key == "d-tt") scenario.d_tt = std::stod(value);
            else if (key == "d-tr") scenario.d_tr = std::stod(value);
            else if (key == "out") scenario.out_path = value;
            else if (key == "plot-script") scenario.plot_script = value;
            else
                throw std::invalid_argument("Unknown scenario key '" + key + "'.");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("Scenario file line " + std::to_string(lineno) +
                                        ": bad value for '" + key + "'.");
        }
    }
}

int cmd_bounds(const Scenario& scenario, std::ostream& out) {
    const AntennaConfig c = config4(scenario.config, "config m1,n1,m2,n2");
    out << "config (M1,N1),(M2,N2) = " << tuple_str(c) << "\n";
    print_bounds_line(out, "interference:", dof_int_resolve(c));
    out << "x-channel:    achievable >= " << dof_x_lower(c) << "\n";
    print_bounds_line(out, "z-channel:   ", dof_z(c));
    return 0;
}

int cmd_table(const Scenario& scenario, std::ostream& out) {
    if (!scenario.config.empty())
        throw std::invalid_argument("table takes no config; it runs the fixed case list.");
    const ResolvedParams p = resolve(scenario, kDefaultWindowLoDb, kDefaultWindowHiDb);
    const SnrGrid grid = snr_grid(p.lo, p.hi, p.step);

    out << "# mudof table\n";
    out << "# tolerance = " << format_sig(kTableTol) << "\n";
    emit_grid_meta(out, p, p.lo, p.hi);
    out << csv_header() << "\n";

    bool all_ok = true;
    std::uint64_t row_idx = 0;
    for (const DofIntExactCase& c : dof_int_exact_cases()) {
        const DofBounds b = dof_int_resolve(c.config);
        const AntennaConfig canon = canonicalize(c.config).config;
        const RateCurve curve = sweep_rates(
            make_int_zf_fn(canon, IntDirectionPolicy::fixed_order), "int-zf",
            canon, LinkGains{}, grid, p.trials, derive_seed(p.seed, row_idx));
        const SlopeEstimate est = estimate_dof(curve, p.lo, p.hi);

        ResultRow row;
        row.scenario = "table";
        row.config = c.config.str();
        row.scheme = "int-zf:slope";
        row.snr_db = curve.points.back().snr_db;
        row.sum_rate = curve.points.back().sum_rate;
        row.dof_inner = b.inner;
        row.dof_outer = b.outer;
        if (b.exact) row.dof_exact = *b.exact;
        row.dof_hat = est.dof_hat;
        row.std_err = est.std_err;
        row.seed = p.seed;
        out << csv_row(row) << "\n";

        if (!b.exact || std::abs(est.dof_hat - *b.exact) > kTableTol) all_ok = false;
        ++row_idx;
    }
    return all_ok ? 0 : 1;
}

int cmd_estimate(const Scenario& scenario, std::ostream& out) {
    if (scenario.scheme.empty())
        throw std::invalid_argument(
            "estimate needs a scheme label "
            "(ptp, mac-zf, bc-zf, int-zf, int-genie, share-transmit).");
    const ResolvedParams p = resolve(scenario, kDefaultWindowLoDb, kDefaultWindowHiDb);
    const EstimateSetup su = make_estimate_setup(scenario.scheme, scenario.config, p);
    const SnrGrid grid = snr_grid(p.lo, p.hi, p.step);

    out << "# mudof estimate\n";
    out << "# config = " << scenario.config << "\n";
    out << "# scheme = " << scenario.scheme << "\n";
    if (!su.note.empty()) out << "# " << su.note << "\n";
    emit_grid_meta(out, p, p.lo, p.hi);

    const RateCurve curve = sweep_rates(su.fn, scenario.scheme, su.sample_config,
                                        su.gains, grid, p.trials, p.seed);
    const SlopeEstimate est = estimate_dof(curve, p.lo, p.hi);

    out << csv_header() << "\n";
    emit_curve_rows(out, curve, est,
                    base_row("estimate", su.config_str, su, p.seed),
                    scenario.scheme);
    return 0;
}

int cmd_coop(const Scenario& scenario, std::ostream& out) {
    const std::string config_text = scenario.config.empty() ? "4,1" : scenario.config;
    const auto v = parse_counts(config_text, 2, "coop config m,n");
    const int m = v[0], n = v[1];
    const ResolvedParams p = resolve(scenario, 0.0, 40.0);
    if (!(p.d_tt > 0.0) || !(p.d_tr > 0.0))
        throw std::invalid_argument("Distances must be > 0.");

    const AntennaConfig cfg{m, n, m, n};
    cfg.validate();
    const LinkGains gains = LinkGains::uniform(path_gain(p.d_tr, p.gamma));
    const double tt_gain = path_gain(p.d_tt, p.gamma);

    // Transmit only: each node zero-forces the other receiver and beamforms
    // to its own inside the interference-free subspace, full power on its
    // own link.
    const SchemeFn tx_only = make_int_zf_fn(cfg, IntDirectionPolicy::own_gain_ranked);
    const SchemeFn share = make_share_fn(m, tt_gain);

    const SnrGrid grid = snr_grid(p.lo, p.hi, p.step);
    const RateCurve tx_curve =
        sweep_rates(tx_only, "transmit-only", cfg, gains, grid, p.trials, p.seed);
    const RateCurve sh_curve =
        sweep_rates(share, "share-transmit", cfg, gains, grid, p.trials, p.seed);

    // Slopes come from a dedicated high-SNR window so the fit reflects the
    // asymptote rather than the plotted range.
    const SnrGrid slope_grid =
        snr_grid(kDefaultWindowLoDb, kDefaultWindowHiDb, kDefaultStepDb);
    const RateCurve tx_slope_curve = sweep_rates(tx_only, "transmit-only", cfg,
                                                 gains, slope_grid, p.trials, p.seed);
    const RateCurve sh_slope_curve =
        sweep_rates(share, "share-transmit", cfg, gains, slope_grid, p.trials, p.seed);
    const SlopeEstimate tx_est =
        estimate_dof(tx_slope_curve, kDefaultWindowLoDb, kDefaultWindowHiDb);
    const SlopeEstimate sh_est =
        estimate_dof(sh_slope_curve, kDefaultWindowLoDb, kDefaultWindowHiDb);

    out << "# mudof coop\n";
    out << "# config = " << m << "," << n << " (symmetric)\n";
    out << "# d_tt = " << format_sig(p.d_tt) << "\n";
    out << "# d_tr = " << format_sig(p.d_tr) << "\n";
    emit_grid_meta(out, p, kDefaultWindowLoDb, kDefaultWindowHiDb);

    const DofBounds b = dof_int_resolve(cfg);
    EstimateSetup tx_su;
    tx_su.dof_inner = b.inner;
    tx_su.dof_outer = b.outer;
    if (b.exact) tx_su.dof_exact = *b.exact;
    EstimateSetup sh_su;
    const double sh_dof = dof_share_transmit(m, n).value();
    sh_su.dof_inner = sh_su.dof_outer = sh_dof;
    sh_su.dof_exact = sh_dof;

    out << csv_header() << "\n";
    emit_curve_rows(out, tx_curve, tx_est,
                    base_row("coop", cfg.str(), tx_su, p.seed), "transmit-only");
    emit_curve_rows(out, sh_curve, sh_est,
                    base_row("coop", cfg.str(), sh_su, p.seed), "share-transmit");

    if (!scenario.plot_script.empty()) {
        std::ofstream gp(scenario.plot_script);
        if (!gp)
            throw std::invalid_argument("Cannot write plot script: " + scenario.plot_script);
        const std::string data = scenario.out_path.empty() ? "coop.csv" : scenario.out_path;
        gp << "# gnuplot companion for the coop sweep\n"
           << "set datafile separator ','\n"
           << "set key left top\n"
           << "set xlabel 'transmit power [dB]'\n"
           << "set ylabel 'sum rate [bits/channel use]'\n"
           << "# every ::1 skips the CSV header row\n"
           << "plot '" << data << "' using 4:(strcol(3) eq 'transmit-only' ? $5 : 1/0) "
              "every ::1 with linespoints title 'transmit only', \\\n"
           << "     '" << data << "' using 4:(strcol(3) eq 'share-transmit' ? $5 : 1/0) "
              "every ::1 with linespoints title 'share and transmit'\n";
    }
    return 0;
}

int cmd_relay(const Scenario& scenario, std::ostream& out) {
    const auto v = parse_counts(scenario.config, 3, "relay config ms,mr,md");
    const RelayConfig r{v[0], v[1], v[2]};
    const int bound = dof_relay_upper(r);
    out << "relay (Ms,Mr,Md) = (" << r.ms << "," << r.mr << "," << r.md << ")\n";
    out << "cut-set bound min[min(Ms,Mr+Md), min(Ms+Mr,Md)] = " << bound << "\n";
    out << "equals the relay-free PTP value min(Ms,Md) = " << bound << "\n";
    return 0;
}

int cmd_xz(const Scenario& scenario, std::ostream& out) {
    const AntennaConfig c = config4(scenario.config, "config m1,n1,m2,n2");
    out << "config (M1,N1),(M2,N2) = " << tuple_str(c) << "\n";
    out << "x-channel:    achievable >= " << dof_x_lower(c) << "\n";
    print_bounds_line(out, "z-channel:   ", dof_z(c));
    return 0;
}

int run_scenario(const Scenario& scenario) {
    try {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!scenario.out_path.empty()) {
            file.open(scenario.out_path);
            if (!file)
                throw std::invalid_argument("Cannot open output file: " + scenario.out_path);
            out = &file;
        }
        if (scenario.kind == "bounds") return cmd_bounds(scenario, *out);
        if (scenario.kind == "table") return cmd_table(scenario, *out);
        if (scenario.kind == "estimate") return cmd_estimate(scenario, *out);
        if (scenario.kind == "coop") return cmd_coop(scenario, *out);
        if (scenario.kind == "relay") return cmd_relay(scenario, *out);
        if (scenario.kind == "xz") return cmd_xz(scenario, *out);
        throw std::invalid_argument("Unknown command '" + scenario.kind + "'.");
    } catch (const std::exception& e) {
        std::cerr << "mudof: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace mudof
