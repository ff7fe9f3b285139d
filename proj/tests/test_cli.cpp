/**
 * Copyright 2026 The ngsvs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#ifndef NGSVS_CLI_PATH
#error "NGSVS_CLI_PATH must point at the built CLI binary"
#endif

namespace {

using json = nlohmann::json;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(NGSVS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), output};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        rows.push_back(fields);
    }
    return rows;
}

}  // namespace

TEST_CASE("point command") {
    SUBCASE("reference comparison point as json") {
        const RunResult r =
            run_cli("point --op ps --order 2 --lambda 0.27 --T 0.9 --format json");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(std::abs(j["d_ng"].get<double>() - 0.11896066956956958) < 1e-10);
        CHECK(std::abs(j["probability"].get<double>() - 0.00045690212032064047) < 1e-12);
        CHECK(std::abs(j["var_svs_db"].get<double>() - 2.4) < 0.01);
    }
    SUBCASE("transparent catalysis returns the input variance") {
        const RunResult r =
            run_cli("point --op pc --order 1 --lambda 0.4 --T 1.0 --format json");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        const double svs = (1 - 0.4) / (2 * (1 + 0.4));
        CHECK(std::abs(j["var_q"].get<double>() - svs) < 1e-12);
        CHECK(std::abs(j["probability"].get<double>() - 1.0) < 1e-12);
    }
    SUBCASE("zero-probability herald is graceful") {
        const RunResult r =
            run_cli("point --op ps --order 2 --lambda 0 --T 0.5 --format json");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(j["probability"].get<double>() == 0.0);
        CHECK(j["d_ng"].get<double>() == 0.0);
        CHECK(j.contains("note"));
    }
    SUBCASE("domain violations exit 1 naming the bound") {
        CHECK(run_cli("point --op ps --order 2 --lambda 1.2 --T 0.5").exit_code == 1);
        CHECK(run_cli("point --op ps --order 2 --lambda 0.5 --T 1.5").exit_code == 1);
        CHECK(run_cli("point --op xx --order 2 --lambda 0.5 --T 0.5").exit_code == 1);
        CHECK(run_cli("point --op ps --order 9 --lambda 0.5 --T 0.5").exit_code == 1);
    }
}

TEST_CASE("table1 command") {
    SUBCASE("matches the reference matrix and exits 0") {
        const RunResult r = run_cli("table1 --format json");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.stdout_text);
        CHECK(j["entries"].size() == 12);
        CHECK(j["matches_reference"].get<bool>());

        auto entry = [&](const std::string& op, int order) -> bool {
            for (const auto& e : j["entries"]) {
                if (e["op"] == op && e["order"] == order) return e["distillable"].get<bool>();
            }
            FAIL("missing entry");
            return false;
        };
        CHECK_FALSE(entry("ps", 1));
        CHECK(entry("ps", 2));
        CHECK_FALSE(entry("ps", 3));
        CHECK(entry("ps", 4));
        for (int n = 1; n <= 4; ++n) CHECK_FALSE(entry("pa", n));
        CHECK_FALSE(entry("pc", 1));
        CHECK(entry("pc", 2));
        CHECK(entry("pc", 3));
        CHECK(entry("pc", 4));
    }
    SUBCASE("robust to a looser threshold") {
        const RunResult r = run_cli("table1 --epsilon 1e-3 --format json");
        CHECK(r.exit_code == 0);
        CHECK(json::parse(r.stdout_text)["matches_reference"].get<bool>());
    }
}

TEST_CASE("table2 command") {
    // The computed optima reproduce the reference (lambda, T, variance,
    // enhancement) columns; the r_max and probability columns are the
    // physical values and sit a factor 2^((m+n)/2) above the reference, so
    // the command flags them and exits 2.
    const RunResult r = run_cli("table2 --format json");
    CHECK(r.exit_code == 2);
    const json j = json::parse(r.stdout_text);
    REQUIRE(j["rows"].size() == 2);

    const json& ps = j["rows"][0];
    CHECK(std::abs(ps["lambda_opt"].get<double>() - 0.38) < 0.02);
    CHECK(std::abs(ps["t_opt"].get<double>() - 0.55) < 0.03);
    CHECK(std::abs(ps["var_svs"].get<double>() - 0.23) < 0.01);
    CHECK(std::abs(ps["d_ng"].get<double>() - 0.05) < 0.01);
    CHECK(std::abs(ps["r_max"].get<double>() - 0.0007225349134221893) < 1e-8);
    CHECK(std::abs(ps["probability"].get<double>() - 0.01576276481403908) < 1e-6);
    {
        const auto flags = ps["out_of_tolerance"].get<std::vector<std::string>>();
        CHECK(flags == std::vector<std::string>{"r_max", "probability"});
    }

    const json& pc = j["rows"][1];
    CHECK(std::abs(pc["lambda_opt"].get<double>() - 0.22) < 0.02);
    CHECK(std::abs(pc["t_opt"].get<double>() - 0.13) < 0.03);
    CHECK(std::abs(pc["var_svs"].get<double>() - 0.32) < 0.01);
    CHECK(std::abs(pc["d_ng"].get<double>() - 0.12) < 0.01);
    CHECK(std::abs(pc["r_max"].get<double>() - 0.0023494725271456136) < 1e-8);
    {
        const auto flags = pc["out_of_tolerance"].get<std::vector<std::string>>();
        CHECK(flags == std::vector<std::string>{"r_max", "probability"});
    }
}

TEST_CASE("sweep command") {
    SUBCASE("line sweep row count and csv round trip") {
        const std::string path = "/tmp/ngsvs_test_sweep.csv";
        const RunResult r = run_cli("sweep --kind d_and_p_vs_t --ops ps:2 --grid 100 "
                                    "--lambda 0.38 --out " + path);
        CHECK(r.exit_code == 0);
        const auto rows = parse_csv(path);
        REQUIRE(rows.size() == 101);  // header + 100 data rows
        CHECK(rows[0][0] == "op");

        // recompute r_product from the parsed d_ng and probability columns
        for (size_t i = 1; i < rows.size(); ++i) {
            const double d = std::stod(rows[i][5]);
            const double p = std::stod(rows[i][6]);
            const double rp = std::stod(rows[i][7]);
            CHECK(std::abs(rp - d * p) <= 1e-12 * std::max(1.0, std::abs(rp)));
        }
        std::remove(path.c_str());
    }
    SUBCASE("multiple operations concatenate") {
        const std::string path = "/tmp/ngsvs_test_sweep2.csv";
        const RunResult r = run_cli("sweep --kind var_vs_lambda --ops ps:2,pc:2 --grid 12 "
                                    "--out " + path);
        CHECK(r.exit_code == 0);
        const auto rows = parse_csv(path);
        REQUIRE(rows.size() == 25);  // header + 2 * 12

        // catalysis dominates subtraction at small lambda
        CHECK(rows[1][0] == "ps");
        CHECK(rows[13][0] == "pc");
        const double var_ps = std::stod(rows[2][4]);
        const double var_pc = std::stod(rows[14][4]);
        CHECK(var_pc < var_ps);
        std::remove(path.c_str());
    }
    SUBCASE("r_product contour peaks near the reference optimum") {
        const std::string path = "/tmp/ngsvs_test_sweep3.csv";
        const RunResult r =
            run_cli("sweep --kind r_contour --ops ps:2 --grid 30 --out " + path);
        CHECK(r.exit_code == 0);
        const auto rows = parse_csv(path);
        REQUIRE(rows.size() == 901);
        double best = -1, best_l = 0, best_t = 0;
        for (size_t i = 1; i < rows.size(); ++i) {
            const double rp = std::stod(rows[i][7]);
            if (rp > best) {
                best = rp;
                best_l = std::stod(rows[i][2]);
                best_t = std::stod(rows[i][3]);
            }
        }
        CHECK(std::abs(best_l - 0.38) < 0.05);
        CHECK(std::abs(best_t - 0.55) < 0.05);
        std::remove(path.c_str());
    }
}

TEST_CASE("oracle-check command") {
    SUBCASE("transparent catalysis is exact") {
        const RunResult r = run_cli("oracle-check --mn 1,1 --T 1 --lambda 0.4");
        CHECK(r.exit_code == 0);
    }
    SUBCASE("restricted grid agrees") {
        const RunResult r = run_cli("oracle-check --mn 2,2 --lambda 0.5");
        CHECK(r.exit_code == 0);
        CHECK(r.stdout_text.find("TOLERANCE BREACH") == std::string::npos);
    }
    SUBCASE("undersized cutoff warns about the tail") {
        const RunResult r = run_cli("oracle-check --mn 0,2 --lambda 0.7 --T 0.5 --cutoff 16");
        CHECK(r.stdout_text.find("unconverged") != std::string::npos);
    }
}
