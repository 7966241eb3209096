// figures.hpp
//
// Grid evaluation of sqrt(b) F(b) over a b range by both routes (direct
// Mobius series and zero sum plus corrections) and its CSV serialization.
// Used by the figure subcommand and by the determinism checks.

#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "muzeta/csv.hpp"
#include "muzeta/mobius.hpp"
#include "muzeta/ramanujan.hpp"

namespace muzeta {

struct FigurePoint {
    double b = 0.0;
    double sqrtb_zerosum = 0.0;  // sqrt(b) * (zero sum + corrections)
    double sqrtb_direct = 0.0;   // sqrt(b) * F(b) by the direct series
    double residual = 0.0;
};

inline std::vector<FigurePoint> figure_grid(double b_min, double b_max, int samples,
                                            const std::vector<Coefficient>& coeffs,
                                            int K, const MobiusSieve& sieve,
                                            double tol = 1e-9) {
    if (!(b_min > 0.0) || !(b_min < b_max))
        throw precondition_error("figure_grid: need 0 < b_min < b_max");
    if (samples < 2) throw precondition_error("figure_grid: need samples >= 2");
    std::vector<FigurePoint> out(static_cast<std::size_t>(samples));
    const double log_lo = std::log(b_min);
    const double log_hi = std::log(b_max);
    for (int i = 0; i < samples; ++i) {
        const double b = i == 0 ? b_min
                         : i == samples - 1
                             ? b_max
                             : std::exp(log_lo + (log_hi - log_lo) * i / (samples - 1.0));
        const double tol_b = std::max(tol, f_direct_min_tol(b, sieve));
        FigurePoint& p = out[static_cast<std::size_t>(i)];
        p.b = b;
        const double rt = std::sqrt(b);
        p.sqrtb_zerosum = rt * (zero_sum(b, coeffs) + correction_sum(b, K).value);
        p.sqrtb_direct = rt * f_direct(b, sieve, tol_b);
        p.residual = std::abs(p.sqrtb_direct - p.sqrtb_zerosum) / rt;
    }
    return out;
}

inline void write_figure_csv(std::ostream& os, const std::vector<FigurePoint>& pts,
                             const std::vector<std::pair<std::string, std::string>>& meta) {
    CsvWriter w(os);
    for (const auto& [k, v] : meta) w.meta(k, v);
    w.header("b,sqrtb_F_zerosum,sqrtb_F_direct,residual");
    for (const auto& p : pts) {
        w.row_begin();
        w.field(p.b);
        w.field(p.sqrtb_zerosum);
        w.field(p.sqrtb_direct);
        w.field(p.residual);
        w.row_end();
    }
}

}  // namespace muzeta
