#pragma once

// Loading point sequences from builtin generators and from files.
//
// A sequence spec is either `name[:param[:param]]` for a generator or a
// path ending in .jsonl / .csv.  Generators cover the standard test
// families; files carry one point per line.  Duplicate points are merged
// and counted rather than rejected.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sequence.hpp"
#include "verdict.hpp"

namespace tkl {

struct LoadStats {
    std::size_t read = 0;
    std::size_t merged_duplicates = 0;
};

namespace detail {

inline double parse_num(const std::string& s, const std::string& what, int line = 0) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        if (line > 0)
            throw Error(Errc::FormatError, "bad number in " + what, line, 1);
        throw Error(Errc::FormatError, "bad number in " + what + ": '" + s + "'");
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

inline PointSequence finish_sequence(std::vector<cx> pts, std::string source, LoadStats* stats) {
    LoadStats local;
    local.read = pts.size();
    for (const cx& p : pts) {
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
            throw Error(Errc::FormatError, "non-finite point in " + source);
        if (p.imag() < 0.0)
            throw Error(Errc::FormatError, "point below the real line in " + source);
    }
    std::sort(pts.begin(), pts.end(), PointSequence::point_less);
    std::vector<cx> uniq;
    uniq.reserve(pts.size());
    for (const cx& p : pts) {
        if (!uniq.empty() && uniq.back() == p)
            ++local.merged_duplicates;
        else
            uniq.push_back(p);
    }
    if (uniq.empty()) throw Error(Errc::EmptyWindow, "no points in " + source);

    PointSequence seq;
    bool real = true;
    for (const cx& p : uniq) real = real && p.imag() == 0.0;
    seq.domain = real ? PointSequence::Domain::Real : PointSequence::Domain::UpperHalfPlane;
    seq.points = std::move(uniq);
    double lo = seq.points.front().real(), hi = lo;
    for (const cx& p : seq.points) {
        lo = std::min(lo, p.real());
        hi = std::max(hi, p.real());
    }
    seq.window = std::make_pair(lo, hi);
    seq.source = std::move(source);
    if (stats) *stats = local;
    return seq;
}

inline std::vector<cx> generate_sequence(const std::string& name,
                                         const std::vector<std::string>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw Error(Errc::FormatError, "generator '" + name + "' expects " +
                                               std::to_string(n) + " parameter(s)");
    };
    auto int_param = [&](std::size_t i) {
        const double v = parse_num(params[i], "generator parameter");
        if (!(v >= 1.0) || v != std::floor(v) || v > 1e8)
            throw Error(Errc::FormatError, "generator '" + name + "' needs a positive integer");
        return static_cast<long>(v);
    };

    std::vector<cx> pts;
    if (name == "worked-example") {
        want(1);
        const long N = int_param(0);
        for (long n = -N; n <= N; ++n) {
            if (n == 0) continue;
            pts.emplace_back(static_cast<double>(n), std::pow(2.0, -std::abs(n)));
        }
    } else if (name == "integers") {
        want(1);
        const long N = int_param(0);
        for (long n = -N; n <= N; ++n)
            if (n != 0) pts.emplace_back(static_cast<double>(n), 0.0);
    } else if (name == "even-integers") {
        want(1);
        const long N = int_param(0);
        for (long n = -N; n <= N; ++n)
            if (n != 0 && n % 2 == 0) pts.emplace_back(static_cast<double>(n), 0.0);
    } else if (name == "lattice") {
        want(2);
        const double d = parse_num(params[0], "lattice spacing");
        if (!(d > 0.0)) throw Error(Errc::FormatError, "lattice spacing must be positive");
        const long N = int_param(1);
        for (long n = -N; n <= N; ++n)
            if (n != 0) pts.emplace_back(static_cast<double>(n) * d, 0.0);
    } else if (name == "lacunary") {
        want(1);
        const long N = int_param(0);
        for (long k = 0; k <= N && k < 1020; ++k) pts.emplace_back(std::pow(2.0, k), 0.0);
    } else if (name == "squares") {
        want(1);
        const long N = int_param(0);
        for (long k = 1; k <= N; ++k)
            pts.emplace_back(static_cast<double>(k) * static_cast<double>(k), 0.0);
    } else {
        throw Error(Errc::FormatError, "unknown sequence generator '" + name + "'");
    }
    return pts;
}

inline std::vector<cx> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::vector<cx> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::FormatError, std::string("bad JSON: ") + e.what(), lineno, 1);
        }
        if (!j.is_object() || !j.contains("re") || !j["re"].is_number() ||
            (j.contains("im") && !j["im"].is_number()))
            throw Error(Errc::FormatError, "expected {\"re\": x, \"im\": y}", lineno, 1);
        pts.emplace_back(j["re"].get<double>(), j.value("im", 0.0));
    }
    return pts;
}

inline std::vector<cx> read_csv_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::vector<cx> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto cols = split(t, ',');
        if (cols.size() > 2) throw Error(Errc::FormatError, "expected re[,im]", lineno, 1);
        const double re = parse_num(trim(cols[0]), "point", lineno);
        const double im = cols.size() == 2 ? parse_num(trim(cols[1]), "point", lineno) : 0.0;
        pts.emplace_back(re, im);
    }
    return pts;
}

} // namespace detail

// Load a point sequence from a generator spec (`name:params`) or a data
// file (.jsonl with {"re":..,"im":..} lines, .csv with `re[,im]` rows).
inline PointSequence load_sequence(const std::string& spec, LoadStats* stats = nullptr) {
    if (detail::ends_with(spec, ".jsonl"))
        return detail::finish_sequence(detail::read_jsonl(spec), spec, stats);
    if (detail::ends_with(spec, ".csv"))
        return detail::finish_sequence(detail::read_csv_points(spec), spec, stats);
    const auto parts = detail::split(spec, ':');
    const std::vector<std::string> params(parts.begin() + 1, parts.end());
    return detail::finish_sequence(detail::generate_sequence(parts[0], params), spec, stats);
}

// Load boundary log-modulus samples from a CSV file with `x,logmod` rows.
inline std::vector<std::pair<double, double>> load_log_modulus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto cols = detail::split(t, ',');
        if (cols.size() != 2) throw Error(Errc::FormatError, "expected x,logmod", lineno, 1);
        samples.emplace_back(detail::parse_num(detail::trim(cols[0]), "sample", lineno),
                             detail::parse_num(detail::trim(cols[1]), "sample", lineno));
    }
    if (samples.empty()) throw Error(Errc::FormatError, "no samples in " + path);
    return samples;
}

} // namespace tkl
