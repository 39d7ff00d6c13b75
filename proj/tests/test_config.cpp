// SPDX-License-Identifier: Apache-2.0
//
// arisbf - sum-rate beamforming for active-RIS-aided multiuser MISO links
// Copyright (C) 2026 The arisbf authors
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

#include "arisbf/config.hpp"

#include <catch_amalgamated.hpp>

using namespace arisbf;
using Catch::Matchers::WithinRel;

TEST_CASE("parses units, lists and comments") {
    const ScenarioConfig c = parse_config_string(R"(
        # comment line
        N = 2
        M = 8      # trailing comment
        K = 2
        P_budget = 30 dBm
        P_bs = 9dBW
        P_sw = 2 mW
        P_dc = 0.004 W
        sigma_k_sq = -90 dBm, -85 dBm
        kappa_r = 0.01, 0.02
        rician_bs_ris = 10 dB
        rician_ris_user = 3
        ris_pos = 70, 5.5, 10
        split_rule = fraction:0.7
        seed = 18446744073709551615
    )");
    CHECK(c.N == 2);
    CHECK(c.M == 8);
    CHECK_THAT(c.P_budget, WithinRel(1.0, 1e-14));
    CHECK_THAT(c.P_bs, WithinRel(dbw_to_watt(9.0), 1e-14));
    CHECK_THAT(c.P_sw, WithinRel(2e-3, 1e-14));
    CHECK_THAT(c.P_dc, WithinRel(4e-3, 1e-14));
    REQUIRE(c.sigma_k_sq.size() == 2);
    CHECK_THAT(c.sigma_k_sq[1], WithinRel(dbm_to_watt(-85.0), 1e-14));
    CHECK(c.kappa_r == std::vector<double>{0.01, 0.02});
    CHECK_THAT(c.rician_K.bs_ris, WithinRel(10.0, 1e-14));
    CHECK(c.rician_K.ris_user == 3.0);
    CHECK(c.ris_pos == Point3{70.0, 5.5, 10.0});
    CHECK(c.split_rule.kind == SplitRule::Kind::Fraction);
    CHECK(c.split_rule.fraction() == 0.7);
    CHECK(c.seed == 18446744073709551615ULL);
}

TEST_CASE("kappa sets both impairment levels") {
    const ScenarioConfig c = parse_config_string("kappa = 0.0025\n");
    CHECK(c.kappa_t == 0.0025);
    CHECK(c.kappa_r == std::vector<double>{0.0025});
}

TEST_CASE("empty document gives the defaults") {
    const ScenarioConfig c = parse_config_string("");
    const ScenarioConfig d;
    CHECK(to_config_string(c) == to_config_string(d));
}

TEST_CASE("round trip through the text form") {
    ScenarioConfig c;
    c.M = 9;
    c.kappa_r = {0.001, 0.002, 0.003};
    c.sigma_k_sq = {1e-11, 2e-11, 3e-11};
    c.split_rule.kind = SplitRule::Kind::Fraction;
    c.split_rule.transmit_fraction = 0.3;
    c.user_center = {90.5, -1.25, 1.5};
    const std::string text = to_config_string(c);
    const ScenarioConfig back = parse_config_string(text);
    CHECK(to_config_string(back) == text);
    CHECK(back.kappa_r == c.kappa_r);
    CHECK(back.P_budget == c.P_budget);
}

TEST_CASE("rejects malformed documents") {
    CHECK_THROWS_AS(parse_config_string("bogus = 1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_string("P_budget = 20\n"), InvalidInput);       // unit missing
    CHECK_THROWS_AS(parse_config_string("P_budget = 20 dBx\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_string("M = 2.5\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_string("M 16\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_string("bs_pos = 1, 2\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_string("split_rule = half\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_string("kappa_t = 1.5\n"), InvalidInput);  // fails validation
    CHECK_THROWS_AS(load_config("/nonexistent/arisbf.cfg"), InvalidInput);
}
