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

#ifndef ARISBF_CONFIG_HPP
#define ARISBF_CONFIG_HPP

#include "arisbf/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// Flat "key = value [unit]" documents, one entry per line, '#' starts a
// comment. The key list is in configs/default.cfg and the README.

namespace arisbf {

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_number(const std::string& key, std::string_view tok) {
    const std::string t = trim(tok);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw InvalidInput("config: '" + key + "' expects a number, got '" + t + "'");
    return v;
}

/// Splits "12.5 dBm" into number and unit.
inline std::pair<double, std::string> number_with_unit(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    const auto sp = v.find_first_of(" \t");
    if (sp == std::string::npos) {
        // glued suffix such as "20dBm"
        std::size_t i = v.size();
        while (i > 0 && std::isalpha(static_cast<unsigned char>(v[i - 1]))) --i;
        if (i == v.size() || i == 0 || v[i - 1] == 'e' || v[i - 1] == 'E') return {parse_number(key, v), ""};
        return {parse_number(key, v.substr(0, i)), v.substr(i)};
    }
    return {parse_number(key, v.substr(0, sp)), trim(v.substr(sp))};
}

inline double parse_power(const std::string& key, const std::string& value) {
    const auto [x, unit] = number_with_unit(key, value);
    if (unit == "dBm") return dbm_to_watt(x);
    if (unit == "dBW") return dbw_to_watt(x);
    if (unit == "W") return x;
    if (unit == "mW") return 1e-3 * x;
    throw InvalidInput("config: '" + key + "' needs a power unit (dBm, dBW, W, mW), got '" + unit + "'");
}

/// Rician factors: "dB" suffix or a bare linear value.
inline double parse_ratio(const std::string& key, const std::string& value) {
    const auto [x, unit] = number_with_unit(key, value);
    if (unit.empty()) return x;
    if (unit == "dB") return db_to_linear(x);
    throw InvalidInput("config: '" + key + "' accepts dB or a linear value, got '" + unit + "'");
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

inline Point3 parse_point(const std::string& key, const std::string& value) {
    const auto parts = split_list(value);
    if (parts.size() != 3) throw InvalidInput("config: '" + key + "' expects x,y,z");
    return {parse_number(key, parts[0]), parse_number(key, parts[1]), parse_number(key, parts[2])};
}

inline int parse_count(const std::string& key, const std::string& value) {
    const double x = parse_number(key, value);
    if (x != std::floor(x) || x < 0 || x > 1e6) throw InvalidInput("config: '" + key + "' expects a count");
    return static_cast<int>(x);
}

}  // namespace detail

/// Applies one entry. Unknown keys are an error so typos do not pass silently.
inline void set_config_value(ScenarioConfig& c, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "N") c.N = parse_count(key, value);
    else if (key == "M") c.M = parse_count(key, value);
    else if (key == "K") c.K = parse_count(key, value);
    else if (key == "bs_pos") c.bs_pos = parse_point(key, value);
    else if (key == "ris_pos") c.ris_pos = parse_point(key, value);
    else if (key == "user_center") c.user_center = parse_point(key, value);
    else if (key == "user_radius") c.user_radius = parse_number(key, value);
    else if (key == "rician_bs_ris") c.rician_K.bs_ris = parse_ratio(key, value);
    else if (key == "rician_ris_user") c.rician_K.ris_user = parse_ratio(key, value);
    else if (key == "rician_bs_user") c.rician_K.bs_user = parse_ratio(key, value);
    else if (key == "pathloss_c0_db") c.pathloss.c0_db = parse_number(key, value);
    else if (key == "pathloss_exp_bs_ris") c.pathloss.exp_bs_ris = parse_number(key, value);
    else if (key == "pathloss_exp_ris_user") c.pathloss.exp_ris_user = parse_number(key, value);
    else if (key == "pathloss_exp_bs_user") c.pathloss.exp_bs_user = parse_number(key, value);
    else if (key == "sigma_d_sq") c.sigma_d_sq = parse_power(key, value);
    else if (key == "sigma_k_sq") {
        c.sigma_k_sq.clear();
        for (const auto& p : split_list(value)) c.sigma_k_sq.push_back(parse_power(key, p));
    } else if (key == "kappa_t") c.kappa_t = parse_number(key, value);
    else if (key == "kappa_r") {
        c.kappa_r.clear();
        for (const auto& p : split_list(value)) c.kappa_r.push_back(parse_number(key, p));
    } else if (key == "kappa") {
        c.kappa_t = parse_number(key, value);
        c.kappa_r = {c.kappa_t};
    } else if (key == "xi_T") c.xi_T = parse_number(key, value);
    else if (key == "xi_A") c.xi_A = parse_number(key, value);
    else if (key == "P_sw") c.P_sw = parse_power(key, value);
    else if (key == "P_dc") c.P_dc = parse_power(key, value);
    else if (key == "P_bs") c.P_bs = parse_power(key, value);
    else if (key == "P_budget") c.P_budget = parse_power(key, value);
    else if (key == "split_rule") {
        const std::string v = trim(value);
        if (v == "even") {
            c.split_rule = {};
        } else if (v.rfind("fraction:", 0) == 0) {
            c.split_rule.kind = SplitRule::Kind::Fraction;
            c.split_rule.transmit_fraction = parse_number(key, v.substr(9));
        } else {
            throw InvalidInput("config: split_rule must be 'even' or 'fraction:<x>'");
        }
    } else if (key == "seed") {
        const std::string v = trim(value);
        std::uint64_t s = 0;
        const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
        if (ec != std::errc() || p != v.data() + v.size() || v.empty()) throw InvalidInput("config: bad seed");
        c.seed = s;
    } else {
        throw InvalidInput("config: unknown key '" + key + "'");
    }
}

inline ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
        set_config_value(c, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
    }
    validate(c);
    return c;
}

inline ScenarioConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file '" + path + "'");
    return parse_config(in);
}

/// Writes every field back in the same format; parse_config(to_config_string(c)) == c.
inline std::string to_config_string(const ScenarioConfig& c) {
    std::ostringstream os;
    os.precision(17);
    auto pt = [&](const Point3& p) { os << p[0] << ',' << p[1] << ',' << p[2] << '\n'; };
    auto list = [&](const std::vector<double>& v, const char* unit) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i] << unit;
        os << '\n';
    };
    os << "N = " << c.N << "\nM = " << c.M << "\nK = " << c.K << '\n';
    os << "bs_pos = "; pt(c.bs_pos);
    os << "ris_pos = "; pt(c.ris_pos);
    os << "user_center = "; pt(c.user_center);
    os << "user_radius = " << c.user_radius << '\n';
    os << "rician_bs_ris = " << c.rician_K.bs_ris << "\nrician_ris_user = " << c.rician_K.ris_user
       << "\nrician_bs_user = " << c.rician_K.bs_user << '\n';
    os << "pathloss_c0_db = " << c.pathloss.c0_db << "\npathloss_exp_bs_ris = " << c.pathloss.exp_bs_ris
       << "\npathloss_exp_ris_user = " << c.pathloss.exp_ris_user << "\npathloss_exp_bs_user = "
       << c.pathloss.exp_bs_user << '\n';
    os << "sigma_d_sq = " << c.sigma_d_sq << " W\n";
    os << "sigma_k_sq = "; list(c.sigma_k_sq, " W");
    os << "kappa_t = " << c.kappa_t << '\n';
    os << "kappa_r = "; list(c.kappa_r, "");
    os << "xi_T = " << c.xi_T << "\nxi_A = " << c.xi_A << '\n';
    os << "P_sw = " << c.P_sw << " W\nP_dc = " << c.P_dc << " W\nP_bs = " << c.P_bs << " W\nP_budget = " << c.P_budget
       << " W\n";
    if (c.split_rule.kind == SplitRule::Kind::Even) os << "split_rule = even\n";
    else os << "split_rule = fraction:" << c.split_rule.transmit_fraction << '\n';
    os << "seed = " << c.seed << '\n';
    return os.str();
}

}  // namespace arisbf

#endif
