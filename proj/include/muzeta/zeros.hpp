// zeros.hpp
//
// Ordered tables of positive ordinates gamma of the critical-line zeta zeros:
// an embedded 500-entry table, a text-file loader, and a self-contained root
// finder that isolates the n-th sign change of Hardy's Z above t = 10 and
// bisects.
//
// Zero file format: UTF-8 text, one ordinate per line as a decimal literal.
// Lines starting with '#' are comments; an optional first comment
// "# digits=<k>" declares the number of correct significant digits.
// Ordinates must be strictly increasing and start at the first zeta zero
// (guard: first entry in (14.0, 14.2), which rejects tables of zeros of
// other L-functions).

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "muzeta/errors.hpp"
#include "muzeta/special.hpp"

namespace muzeta {

enum class ZeroSource { embedded, computed, file };

struct ZeroTable {
    std::vector<double> ordinates;  // strictly increasing, gamma_1 first
    ZeroSource source = ZeroSource::embedded;
    std::string path;               // set when source == file
    int precision_digits = 9;
};

namespace detail {
#include "muzeta/zeros_data.inc"
}  // namespace detail

inline constexpr int kEmbeddedZeroCount = 500;
inline constexpr int kEmbeddedZeroDigits = 12;
inline constexpr int kFindZeroMaxIndex = 1000;

// Riemann-von Mangoldt main term (T/2pi) log(T/2pi) - T/2pi + 7/8.
inline double zero_count_main_term(double T) {
    const double x = T / (2.0 * detail::kPi);
    return x * std::log(x) - x + 7.0 / 8.0;
}

// Invariant checks shared by every table constructor.  `where` names the
// source for error messages; line_of maps an index to a 1-based input line
// (identity when the table never came from a file).
inline void validate_zero_table(const std::vector<double>& g,
                                const std::string& where,
                                const std::vector<long>* lines = nullptr) {
    auto line_of = [&](std::size_t i) {
        return lines ? (*lines)[i] : static_cast<long>(i + 1);
    };
    if (g.empty()) throw data_error(where + ": empty zero table");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i]) || g[i] <= 0.0)
            throw data_error(where + ": ordinate " + std::to_string(g[i]) +
                             " at line " + std::to_string(line_of(i)) +
                             " is not a positive real");
        if (i > 0) {
            const double gap = g[i] - g[i - 1];
            if (gap <= 0.0)
                throw data_error(where + ": ordinates must be strictly increasing; line " +
                                 std::to_string(line_of(i)) + " has " +
                                 std::to_string(g[i]) + " after " +
                                 std::to_string(g[i - 1]));
            if (gap <= 1e-4)
                throw data_error(where + ": gap " + std::to_string(gap) + " at line " +
                                 std::to_string(line_of(i)) +
                                 " is below the 1e-4 minimum for this range");
        }
    }
    if (!(g.front() > 14.0 && g.front() < 14.2))
        throw data_error(where + ": first ordinate " + std::to_string(g.front()) +
                         " is not in (14.0, 14.2); not a zeta zero table");
}

inline ZeroTable load_embedded(int count) {
    if (count < 1 || count > kEmbeddedZeroCount)
        throw capacity_error("load_embedded: count must be in [1, " +
                             std::to_string(kEmbeddedZeroCount) + "], got " +
                             std::to_string(count));
    ZeroTable t;
    t.ordinates.assign(detail::kZeroOrdinates.begin(),
                       detail::kZeroOrdinates.begin() + count);
    t.source = ZeroSource::embedded;
    t.precision_digits = kEmbeddedZeroDigits;
    validate_zero_table(t.ordinates, "load_embedded");
    return t;
}

// ---------------------------------------------------------------------------
// Text-file loader / writer.
// ---------------------------------------------------------------------------
inline ZeroTable parse_zero_table(std::istream& in, const std::string& name) {
    ZeroTable t;
    t.source = ZeroSource::file;
    t.path = name;
    std::vector<long> lines;
    std::string line;
    long lineno = 0;
    bool saw_value = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') {
            if (!saw_value) {
                const std::size_t d = line.find("digits=");
                if (d != std::string::npos) {
                    const int digits = std::atoi(line.c_str() + d + 7);
                    if (digits > 0) t.precision_digits = digits;
                }
            }
            continue;
        }
        const char* start = line.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start)
            throw format_error(name + ": not a decimal literal: '" + line + "'", lineno);
        while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
        if (*end != '\0')
            throw format_error(name + ": trailing characters after ordinate: '" +
                               line + "'", lineno);
        t.ordinates.push_back(v);
        lines.push_back(lineno);
        saw_value = true;
    }
    validate_zero_table(t.ordinates, name, &lines);
    return t;
}

inline ZeroTable load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("load_file: cannot open '" + path + "'");
    return parse_zero_table(in, path);
}

inline void serialize_zero_table(const ZeroTable& t, std::ostream& out) {
    out << "# digits=" << t.precision_digits << "\n";
    char buf[64];
    for (double g : t.ordinates) {
        std::snprintf(buf, sizeof(buf), "%.*g", t.precision_digits, g);
        out << buf << "\n";
    }
}

// ---------------------------------------------------------------------------
// Root finding.  Hardy's Z is real on the line and flips sign at each zero,
// so brackets come from a fine scan and bisection does the rest.
// ---------------------------------------------------------------------------
namespace detail {

// Scan step: a small fraction of the mean zero gap 2*pi / log(t/2pi).  The
// closest pair below the 1000th zero is wider than 0.35, so /24 leaves a
// generous safety factor.
inline long double scan_step(long double t) {
    const long double mean_gap = 2.0L * kPiL / std::log(t / (2.0L * kPiL));
    return mean_gap / 24.0L;
}

struct Bracket {
    long double lo, hi;  // Z changes sign across [lo, hi]
};

// Collect sign-change brackets for the first `count` zeros above t = 10.
inline std::vector<Bracket> scan_brackets(int count) {
    std::vector<Bracket> brackets;
    brackets.reserve(static_cast<std::size_t>(count));
    long double t = 10.0L;
    long double z_prev = hardy_z_ld(t);
    // iteration guard: ~16 evaluations per mean gap, plus slack
    const long iter_cap = 600L * count + 4000L;
    for (long iter = 0; iter < iter_cap; ++iter) {
        const long double step = scan_step(t);
        const long double t_next = t + step;
        const long double z_next = hardy_z_ld(t_next);
        if ((z_prev <= 0.0L) != (z_next <= 0.0L)) {
            brackets.push_back({t, t_next});
            if (static_cast<int>(brackets.size()) == count) return brackets;
        }
        t = t_next;
        z_prev = z_next;
    }
    throw convergence_error(
        "scan_brackets: found only " + std::to_string(brackets.size()) + " of " +
        std::to_string(count) + " sign changes below t = " +
        std::to_string(static_cast<double>(t)));
}

inline long double bisect_bracket(Bracket b, long double tol, int max_iter = 200) {
    long double z_lo = hardy_z_ld(b.lo);
    for (int i = 0; i < max_iter; ++i) {
        const long double mid = 0.5L * (b.lo + b.hi);
        if (b.hi - b.lo <= tol) return mid;
        const long double z_mid = hardy_z_ld(mid);
        if (z_mid == 0.0L) return mid;
        if ((z_lo <= 0.0L) != (z_mid <= 0.0L)) {
            b.hi = mid;
        } else {
            b.lo = mid;
            z_lo = z_mid;
        }
    }
    throw convergence_error("bisect_bracket: interval [" +
                            std::to_string(static_cast<double>(b.lo)) + ", " +
                            std::to_string(static_cast<double>(b.hi)) +
                            "] not within tolerance after 200 iterations");
}

}  // namespace detail

// Compute the first `count` ordinates by scanning and bisection.  One scan
// serves all of them, so this is the right call for bulk work.
inline std::vector<double> find_zeros(int count, double tolerance = 1e-9) {
    if (count < 1 || count > kFindZeroMaxIndex)
        throw precondition_error("find_zeros: count must be in [1, " +
                                 std::to_string(kFindZeroMaxIndex) + "], got " +
                                 std::to_string(count));
    if (!(tolerance >= 1e-10))
        throw precondition_error("find_zeros: tolerance must be >= 1e-10");
    const auto brackets = detail::scan_brackets(count);
    std::vector<double> out;
    out.reserve(brackets.size());
    for (const auto& b : brackets)
        out.push_back(static_cast<double>(
            detail::bisect_bracket(b, static_cast<long double>(tolerance) * 0.5L)));
    return out;
}

inline double find_zero(int n, double tolerance = 1e-9) {
    if (n < 1 || n > kFindZeroMaxIndex)
        throw precondition_error("find_zero: n must be in [1, " +
                                 std::to_string(kFindZeroMaxIndex) + "], got " +
                                 std::to_string(n));
    if (!(tolerance >= 1e-10))
        throw precondition_error("find_zero: tolerance must be >= 1e-10");
    return find_zeros(n, tolerance).back();
}

inline ZeroTable compute_table(int count, double tolerance = 1e-9) {
    ZeroTable t;
    t.ordinates = find_zeros(count, tolerance);
    t.source = ZeroSource::computed;
    t.precision_digits = static_cast<int>(
        std::min(12.0, std::floor(std::log10(1000.0 / tolerance))));
    validate_zero_table(t.ordinates, "compute_table");
    return t;
}

}  // namespace muzeta
