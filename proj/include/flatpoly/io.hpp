#pragma once

// JSON interchange ({"terms":[{"exp":..,"re":..,"im":..}]}), CSV formatting
// with lossless 17-significant-digit doubles, and atomic file writes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatpoly/errors.hpp"
#include "flatpoly/poly.hpp"

namespace flatpoly {

/// Lossless, locale-independent double formatting for CSV output.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json poly_to_json(const TrigPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        terms.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
    }
    return nlohmann::json{{"terms", terms}};
}

inline TrigPoly poly_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw DomainError(Errc::EmptyPolynomial, R"(polynomial JSON needs a "terms" array)");
    std::vector<std::pair<std::int64_t, cplx>> terms;
    for (const auto& t : j["terms"]) {
        const std::int64_t e = t.at("exp").get<std::int64_t>();
        terms.emplace_back(e, cplx{t.at("re").get<double>(), t.at("im").get<double>()});
    }
    return TrigPoly::from_terms(terms);
}

/// Accepts either one polynomial object or an array of them.
inline std::vector<TrigPoly> polys_from_json(const nlohmann::json& j) {
    std::vector<TrigPoly> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(poly_from_json(item));
    } else {
        out.push_back(poly_from_json(j));
    }
    return out;
}

struct LineColumn {
    std::size_t line = 1;
    std::size_t column = 1;
};

inline LineColumn line_column_of(const std::string& text, std::size_t byte_offset) {
    LineColumn lc;
    for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++lc.line;
            lc.column = 1;
        } else {
            ++lc.column;
        }
    }
    return lc;
}

/// Parses JSON text, rethrowing parse failures with line/column attached.
inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const LineColumn lc = line_column_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw std::invalid_argument("JSON parse error at line " + std::to_string(lc.line) +
                                    ", column " + std::to_string(lc.column) + ": " + e.what());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes via a temporary file + rename so readers never observe a partial
/// file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline TrigPoly load_poly(const std::filesystem::path& path) {
    return poly_from_json(parse_json_text(read_file(path)));
}

inline std::vector<TrigPoly> load_polys(const std::filesystem::path& path) {
    return polys_from_json(parse_json_text(read_file(path)));
}

inline void save_poly(const std::filesystem::path& path, const TrigPoly& p) {
    write_file_atomic(path, poly_to_json(p).dump(2) + "\n");
}

}  // namespace flatpoly
