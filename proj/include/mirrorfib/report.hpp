#pragma once

// Check/Report structures shared by all CLI commands. The JSON rendering is
// the machine interface:
//   {"command": str, "pass": bool,
//    "checks": [{"name": str, "pass": bool, "witness": object}], "version": str}
// Witness values use exact "p/q" strings for rationals and 17-significant-
// digit decimal strings for floats, so identical runs serialize identically.
// No timestamps or timings appear in reports.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "mirrorfib/matrix.hpp"
#include "mirrorfib/rational.hpp"
#include "mirrorfib/version.hpp"

namespace mirrorfib::report {

using ordered_json = nlohmann::ordered_json;

inline std::string jfloat(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string jrat(const Rat& v) { return rat_str(v); }

inline ordered_json jvec(const std::vector<Rat>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(jrat(x));
    return a;
}

inline ordered_json jvec(const std::vector<std::size_t>& v) {
    ordered_json a = ordered_json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

inline ordered_json jmat(const QMat& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(jrat(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

struct Check {
    std::string name;
    bool pass = false;
    ordered_json witness = ordered_json::object();
};

struct Report {
    std::string command;
    std::vector<Check> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    ordered_json to_json() const {
        ordered_json j;
        j["command"] = command;
        j["pass"] = pass();
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            cj["witness"] = c.witness;
            arr.push_back(std::move(cj));
        }
        j["checks"] = std::move(arr);
        j["version"] = version_string;
        return j;
    }

    std::string human() const {
        std::string out = "command: " + command + " (version " + version_string + ")\n";
        for (const auto& c : checks) {
            out += std::string("  [") + (c.pass ? "PASS" : "FAIL") + "] " + c.name;
            if (!c.witness.empty()) out += "  " + c.witness.dump();
            out += "\n";
        }
        out += pass() ? "overall: PASS\n" : "overall: FAIL\n";
        return out;
    }
};

}  // namespace mirrorfib::report
