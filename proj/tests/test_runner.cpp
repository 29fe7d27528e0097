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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mudof/runner.hpp"

using namespace mudof;

namespace {

std::string run_cmd(int (*cmd)(const Scenario&, std::ostream&), Scenario s,
                    int expected_code = 0) {
    std::ostringstream out;
    CHECK(cmd(s, out) == expected_code);
    return out.str();
}

Scenario quick(const std::string& kind, const std::string& config) {
    Scenario s;
    s.kind = kind;
    s.config = config;
    s.trials = 3;
    return s;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("significant-digit formatting") {
    CHECK(format_sig(40.0) == "40");
    CHECK(format_sig(39.863137) == "39.8631");
    CHECK(format_sig(0.15) == "0.15");
    CHECK(format_sig(1.6) == "1.6");
    CHECK(format_sig(123456789.0) == "1.23457e+08");
}

TEST_CASE("csv schema") {
    CHECK(csv_header() ==
          "scenario,config,scheme,snr_db,sum_rate,dof_inner,dof_outer,dof_exact,"
          "dof_hat,stderr,seed");

    ResultRow row;
    row.scenario = "estimate";
    row.config = "2x3x2x3";
    row.scheme = "int-zf";
    row.snr_db = 40.0;
    row.sum_rate = 39.863137;
    row.dof_inner = 3;
    row.dof_outer = 3;
    row.seed = 1;
    CHECK(csv_row(row) == "estimate,2x3x2x3,int-zf,40,39.8631,3,3,,,,1");
    row.dof_exact = 3.0;
    row.dof_hat = 2.98765432;
    row.std_err = 0.0123456;
    CHECK(csv_row(row) == "estimate,2x3x2x3,int-zf,40,39.8631,3,3,3,2.98765,0.0123456,1");
}

TEST_CASE("config parsing") {
    CHECK(parse_counts("2,3,2,3", 4, "config") == std::vector<int>{2, 3, 2, 3});
    CHECK_THROWS_AS(parse_counts("2,3,2", 4, "config"), std::invalid_argument);
    CHECK_THROWS_AS(parse_counts("2,x,2,3", 4, "config"), std::invalid_argument);
    CHECK_THROWS_AS(parse_counts("", 4, "config"), std::invalid_argument);
    CHECK_THROWS_AS(parse_counts("2,3,2,3,", 4, "config"), std::invalid_argument);
}

TEST_CASE("bounds command") {
    std::string out = run_cmd(cmd_bounds, quick("bounds", "1,1,1,1"));
    CHECK(out.find("interference: inner = 1, outer = 1, exact = 1") != std::string::npos);

    out = run_cmd(cmd_bounds, quick("bounds", "2,2,3,2"));
    CHECK(out.find("exact = 2") != std::string::npos);

    out = run_cmd(cmd_bounds, quick("bounds", "5,1,5,1"));
    CHECK(out.find("inner = 2, outer = 2, exact = 2") != std::string::npos);

    std::ostringstream sink;
    const Scenario short_config = quick("bounds", "5,1");
    CHECK_THROWS_AS(cmd_bounds(short_config, sink), std::invalid_argument);
}

TEST_CASE("relay and xz commands") {
    std::string out = run_cmd(cmd_relay, quick("relay", "2,3,2"));
    CHECK(out.find("= 2") != std::string::npos);

    out = run_cmd(cmd_xz, quick("xz", "1,2,1,2"));
    CHECK(out.find("x-channel:    achievable >= 2") != std::string::npos);
    CHECK(out.find("exact = 2") != std::string::npos);
}

TEST_CASE("estimate command emits curve rows plus one slope row") {
    Scenario s = quick("estimate", "2,3,2,3");
    s.scheme = "int-zf";
    s.trials = 2;
    const std::string out = run_cmd(cmd_estimate, s);
    const auto lines = lines_of(out);

    std::size_t header_at = 0;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (lines[i] == csv_header()) header_at = i;
    REQUIRE(header_at > 0);
    // 5 grid points at the 40:5:60 default plus the slope summary.
    CHECK(lines.size() - header_at - 1 == 6);
    CHECK(lines.back().find("int-zf:slope") != std::string::npos);
    CHECK(lines[header_at + 1].find("estimate,2x3x2x3,int-zf,40,") == 0);

    // Identical scenario, identical bytes.
    CHECK(run_cmd(cmd_estimate, s) == out);
}

TEST_CASE("estimate validates scheme and config shapes") {
    Scenario s = quick("estimate", "2,3,2,3");
    std::ostringstream sink;
    s.scheme = "bogus";
    CHECK_THROWS_AS(cmd_estimate(s, sink), std::invalid_argument);
    s.scheme = "ptp";  // ptp wants m,n
    CHECK_THROWS_AS(cmd_estimate(s, sink), std::invalid_argument);
    s.scheme = "int-genie";
    s.config = "2,1,2,1";  // theorem applies on neither side
    CHECK_THROWS_WITH_AS(cmd_estimate(s, sink),
                         doctest::Contains("needs N1 >= M2"), std::invalid_argument);
}

TEST_CASE("estimate command covers every scheme label") {
    for (const auto& [scheme, config] :
         std::vector<std::pair<std::string, std::string>>{
             {"ptp", "2,2"}, {"mac-zf", "1,1,2"}, {"bc-zf", "2,1,1"},
             {"int-zf", "2,3,2,3"}, {"int-genie", "2,3,2,3"},
             {"share-transmit", "2,1"}}) {
        Scenario s = quick("estimate", config);
        s.scheme = scheme;
        s.trials = 2;
        s.snr_lo_db = 40.0;
        s.snr_hi_db = 50.0;
        const std::string out = run_cmd(cmd_estimate, s);
        CHECK(out.find(scheme + ":slope") != std::string::npos);
        if (scheme == "int-genie")
            CHECK(out.find("# genie_side = receiver1") != std::string::npos);
        if (scheme == "mac-zf")  // config column echoes the scheme's shape
            CHECK(out.find("estimate,1x1x2,mac-zf,") != std::string::npos);
    }
}

TEST_CASE("table command checks every reference row") {
    Scenario s;
    s.kind = "table";
    s.trials = 6;
    const std::string out = run_cmd(cmd_table, s);
    const auto lines = lines_of(out);
    int rows = 0;
    for (const auto& line : lines)
        if (line.rfind("table,", 0) == 0) ++rows;
    CHECK(rows == 8);
    CHECK(out.find("# tolerance = 0.15") != std::string::npos);

    Scenario with_config = s;
    with_config.config = "1,1,1,1";
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_table(with_config, sink), std::invalid_argument);
}

TEST_CASE("table verdicts are stable across seeds at default trials") {
    auto hats = [](std::uint64_t seed) {
        Scenario s;
        s.kind = "table";
        s.seed = seed;
        std::ostringstream out;
        CHECK(cmd_table(s, out) == 0);  // pass/fail stays stable
        std::vector<double> v;
        for (const auto& line : lines_of(out.str())) {
            if (line.rfind("table,", 0) != 0) continue;
            std::istringstream ls(line);
            std::string tok;
            for (int i = 0; i <= 8; ++i) std::getline(ls, tok, ',');
            v.push_back(std::stod(tok));
        }
        return v;
    };
    const std::vector<double> a = hats(1);
    const std::vector<double> b = hats(99);
    REQUIRE(a.size() == 8);
    REQUIRE(b.size() == 8);
    CHECK(a != b);  // the estimates themselves move with the seed
}

TEST_CASE("coop command emits both schemes and their slopes") {
    Scenario s;
    s.kind = "coop";
    s.trials = 2;
    s.snr_lo_db = 0.0;
    s.snr_hi_db = 10.0;
    s.snr_step_db = 5.0;
    const std::string out = run_cmd(cmd_coop, s);
    CHECK(out.find("transmit-only:slope") != std::string::npos);
    CHECK(out.find("share-transmit:slope") != std::string::npos);
    CHECK(out.find("# d_tt = 1") != std::string::npos);
    CHECK(out.find("coop,4x1x4x1,transmit-only,0,") != std::string::npos);
    CHECK(run_cmd(cmd_coop, s) == out);
}

TEST_CASE("scenario files merge without overriding flags") {
    const std::string path = "runner_scenario_test.tmp";
    {
        std::ofstream f(path);
        f << "# sweep configuration\n"
          << "config = 2,3,2,3\n"
          << "trials = 4   # comment after value\n"
          << "snr-lo = 35\n";
    }

    Scenario s;
    s.kind = "estimate";
    apply_scenario_file(s, path, {});
    CHECK(s.config == "2,3,2,3");
    CHECK(s.trials == 4);
    CHECK(s.snr_lo_db == 35.0);

    Scenario conflicted;
    CHECK_THROWS_WITH_AS(apply_scenario_file(conflicted, path, {"trials"}),
                         doctest::Contains("conflicts"), std::invalid_argument);

    {
        std::ofstream f(path);
        f << "nonsense = 1\n";
    }
    Scenario bad;
    CHECK_THROWS_AS(apply_scenario_file(bad, path, {}), std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("run_scenario writes files and reports bad input") {
    Scenario s = quick("bounds", "2,3,2,3");
    s.out_path = "runner_bounds_test.tmp";
    CHECK(run_scenario(s) == 0);
    std::ifstream in(s.out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("exact = 3") != std::string::npos);
    std::remove(s.out_path.c_str());

    Scenario bad = quick("bounds", "not,a,config,here");
    CHECK(run_scenario(bad) == 2);
    bad.kind = "unknown";
    CHECK(run_scenario(bad) == 2);
}
