#pragma once

// JSON loaders for the input file formats:
//   matrix          {"rows": r, "cols": c, "entries": [["p/q", ...], ...]}
//   matrices file   {"matrices": [matrix, ...]} or a bare array of matrices
//   K3 model file   {"label": str, "gram": [[int, ...], ...]}
//   CY3 datum file  {"label": str, "rank": r,
//                    "cubic": [{"i": int, "j": int, "k": int, "value": int}, ...],
//                    "c2": [int, ...]}
// Cubic entries are 0-based and symmetrized on load; duplicates carrying
// conflicting values are rejected. Numeric fields accept either JSON integers
// or exact "p/q" strings. Malformed input throws std::invalid_argument /
// std::runtime_error; the CLI maps those to exit code 2.

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "mirrorfib/cy3_model.hpp"
#include "mirrorfib/k3_lattice.hpp"
#include "mirrorfib/matrix.hpp"
#include "mirrorfib/rational.hpp"

namespace mirrorfib::io {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline Rat rat_from_json(const json& v) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return rat_parse(v.get<std::string>());
    throw std::invalid_argument("expected an integer or a \"p/q\" string, got " + v.dump());
}

inline QMat matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON needs fields rows, cols, entries");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw std::invalid_argument("matrix rows/cols must be integers");
    long rows = j["rows"].get<long>(), cols = j["cols"].get<long>();
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix rows/cols must be non-negative");
    const json& e = j["entries"];
    if (!e.is_array() || e.size() != static_cast<std::size_t>(rows))
        throw std::invalid_argument("matrix entries must be an array of " + std::to_string(rows) +
                                    " rows");
    QMat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!e[r].is_array() || e[r].size() != static_cast<std::size_t>(cols))
            throw std::invalid_argument("matrix row " + std::to_string(r) + " must have " +
                                        std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rat_from_json(e[r][c]);
    }
    return m;
}

inline std::vector<QMat> matrices_from_json(const json& j) {
    const json* arr = nullptr;
    if (j.is_array()) {
        arr = &j;
    } else if (j.is_object() && j.contains("matrices") && j["matrices"].is_array()) {
        arr = &j["matrices"];
    } else {
        throw std::invalid_argument(
            "matrices file must be an array of matrices or {\"matrices\": [...]}");
    }
    std::vector<QMat> out;
    for (const auto& m : *arr) out.push_back(matrix_from_json(m));
    return out;
}

inline k3::Model k3_from_json(const json& j) {
    if (!j.is_object() || !j.contains("gram"))
        throw std::invalid_argument("K3 model file needs a \"gram\" field");
    const json& g = j["gram"];
    if (!g.is_array()) throw std::invalid_argument("K3 gram must be an array of rows");
    std::size_t t = g.size();
    QMat gram(t, t);
    for (std::size_t r = 0; r < t; ++r) {
        if (!g[r].is_array() || g[r].size() != t)
            throw std::invalid_argument("K3 gram must be square");
        for (std::size_t c = 0; c < t; ++c) gram.at(r, c) = rat_from_json(g[r][c]);
    }
    std::string label = j.value("label", std::string());
    return k3::Model(std::move(gram), std::move(label));
}

inline cy3::Datum cy3_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rank"))
        throw std::invalid_argument("CY3 datum file needs a \"rank\" field");
    if (!j["rank"].is_number_integer() || j["rank"].get<long>() <= 0)
        throw std::invalid_argument("CY3 rank must be a positive integer");
    std::size_t r = j["rank"].get<std::size_t>();
    cy3::Datum d(r, j.value("label", std::string()));

    if (!j.contains("cubic") || !j["cubic"].is_array())
        throw std::invalid_argument("CY3 datum needs a \"cubic\" array");
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rat> seen;
    for (const auto& entry : j["cubic"]) {
        if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
            !entry.contains("k") || !entry.contains("value"))
            throw std::invalid_argument("cubic entries need fields i, j, k, value");
        long ii = entry["i"].get<long>(), jj = entry["j"].get<long>(), kk = entry["k"].get<long>();
        if (ii < 0 || jj < 0 || kk < 0 || ii >= static_cast<long>(r) ||
            jj >= static_cast<long>(r) || kk >= static_cast<long>(r))
            throw std::invalid_argument("cubic index out of range for rank " + std::to_string(r));
        Rat v = rat_from_json(entry["value"]);
        std::size_t s[3] = {static_cast<std::size_t>(ii), static_cast<std::size_t>(jj),
                            static_cast<std::size_t>(kk)};
        std::sort(s, s + 3);
        auto key = std::make_tuple(s[0], s[1], s[2]);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second != v)
                throw std::invalid_argument(
                    "inconsistent duplicate cubic entry at (" + std::to_string(s[0]) + "," +
                    std::to_string(s[1]) + "," + std::to_string(s[2]) + ")");
        } else {
            seen.emplace(key, v);
        }
        d.set_c(s[0], s[1], s[2], v);
    }

    if (!j.contains("c2") || !j["c2"].is_array() || j["c2"].size() != r)
        throw std::invalid_argument("CY3 datum needs a \"c2\" array of length rank");
    std::vector<Rat> c2;
    for (const auto& v : j["c2"]) c2.push_back(rat_from_json(v));
    d.set_c2(std::move(c2));
    return d;
}

}  // namespace mirrorfib::io
