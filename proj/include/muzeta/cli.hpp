// cli.hpp
//
// Command-line surface.  Subcommands (stable API): coeffs, radii, figure,
// moment, density, riesz, wmh, zeros, check.  Every CSV output starts with
// '#'-prefixed metadata lines echoing the configuration, then a mandatory
// header line; numbers are printed with 17 significant digits so identical
// configurations give byte-identical files.
//
// Exit codes: 0 success, 1 check failure, 2 configuration error.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "muzeta/acceptance.hpp"
#include "muzeta/annulus.hpp"
#include "muzeta/csv.hpp"
#include "muzeta/figures.hpp"
#include "muzeta/mobius.hpp"
#include "muzeta/ramanujan.hpp"
#include "muzeta/zeros.hpp"

namespace muzeta {
namespace cli {

struct RunConfig {
    std::string zeros_arg;          // integer -> embedded/computed count, else file path
    bool compute = false;           // resolve integer counts with the root finder
    std::int64_t sieve_limit = 0;   // 0 = choose per command
    int K = 50;                     // correction series depth
    int terms = 0;                  // zero terms used in sums; 0 = all loaded
    std::string out_path;           // empty = stdout
    double tol = 1e-9;              // direct-series tolerance
};

namespace detail_cli {

inline bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

inline ZeroTable resolve_zeros(const RunConfig& cfg, int default_count) {
    if (cfg.zeros_arg.empty())
        return load_embedded(default_count);
    if (is_integer(cfg.zeros_arg)) {
        const int n = std::atoi(cfg.zeros_arg.c_str());
        return cfg.compute ? compute_table(n, std::max(cfg.tol, 1e-10)) : load_embedded(n);
    }
    return load_file(cfg.zeros_arg);
}

inline std::string zeros_echo(const RunConfig& cfg, const ZeroTable& t) {
    std::string kind = t.source == ZeroSource::embedded ? "embedded"
                       : t.source == ZeroSource::computed ? "computed"
                                                          : ("file:" + t.path);
    return kind + ":" + std::to_string(t.ordinates.size());
}

// Output sink: stdout by default, a file when --out is given.
class Sink {
  public:
    Sink(const RunConfig& cfg, std::ostream& fallback) {
        if (!cfg.out_path.empty()) {
            file_ = std::make_unique<std::ofstream>(cfg.out_path);
            if (!*file_) throw data_error("cannot open output file '" + cfg.out_path + "'");
        } else {
            plain_ = &fallback;
        }
    }
    std::ostream& stream() { return file_ ? *file_ : *plain_; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* plain_ = nullptr;
};

inline std::int64_t auto_sieve_limit(std::int64_t requested, std::int64_t needed) {
    if (requested > 0) return requested;
    return std::min<std::int64_t>(MobiusSieve::kMaxLimit,
                                  std::max<std::int64_t>(1000000, needed));
}

inline std::vector<Coefficient> used_coefficients(const ZeroTable& zeros, int terms) {
    auto ranked = rank_coefficients(coefficients_for(zeros, 1.0));
    if (terms > 0 && terms < static_cast<int>(ranked.size()))
        ranked.resize(static_cast<std::size_t>(terms));
    return ranked;
}

}  // namespace detail_cli

// --- coeffs ----------------------------------------------------------------
inline int cmd_coeffs(const RunConfig& cfg, int count, std::ostream& out) {
    const ZeroTable zeros = detail_cli::resolve_zeros(cfg, count);
    if (count > static_cast<int>(zeros.ordinates.size()))
        throw capacity_error("coeffs: requested " + std::to_string(count) +
                             " rows but only " + std::to_string(zeros.ordinates.size()) +
                             " zeros are loaded");
    detail_cli::Sink sink(cfg, out);
    CsvWriter w(sink.stream());
    w.meta("command", "coeffs");
    w.meta("zeros", detail_cli::zeros_echo(cfg, zeros));
    w.meta("count", std::to_string(count));
    w.header("n,gamma,abs_a");
    for (int i = 0; i < count; ++i) {
        const Coefficient c = coefficient(zeros.ordinates[static_cast<std::size_t>(i)], 1.0);
        w.row_begin();
        w.field(static_cast<long long>(i + 1));
        w.field(c.gamma);
        w.field(c.magnitude);
        w.row_end();
    }
    return 0;
}

// --- radii -------------------------------------------------------------------
inline int cmd_radii(const RunConfig& cfg, int count, std::ostream& out) {
    const ZeroTable zeros = detail_cli::resolve_zeros(
        cfg, std::min(count + 1, kEmbeddedZeroCount));
    if (count > static_cast<int>(zeros.ordinates.size()))
        throw capacity_error("radii: requested " + std::to_string(count) +
                             " coefficients but only " +
                             std::to_string(zeros.ordinates.size()) + " zeros are loaded");
    std::vector<Coefficient> coeffs;
    for (int i = 0; i < count; ++i)
        coeffs.push_back(coefficient(zeros.ordinates[static_cast<std::size_t>(i)], 1.0));
    coeffs = rank_coefficients(std::move(coeffs));
    // tail starts at the first excluded ordinate when the table knows it
    const double tail_from =
        count < static_cast<int>(zeros.ordinates.size())
            ? zeros.ordinates[static_cast<std::size_t>(count)]
            : zeros.ordinates.back();
    const AnnulusGeometry g = geometry(coeffs, coefficient_tail_bound(std::max(tail_from, 15.0)));
    const double A = second_moment_constant(coeffs);
    detail_cli::Sink sink(cfg, out);
    CsvWriter w(sink.stream());
    w.meta("command", "radii");
    w.meta("zeros", detail_cli::zeros_echo(cfg, zeros));
    w.meta("count", std::to_string(count));
    w.header("C,c,classification,A,n_used,truncation_tail_bound");
    w.row_begin();
    w.field(g.C);
    w.field(g.c);
    w.field(std::string(g.classification == RegionShape::annulus ? "annulus" : "disk"));
    w.field(A);
    w.field(static_cast<long long>(g.n_used));
    w.field(g.truncation_tail_bound);
    w.row_end();
    return 0;
}

// --- figure ------------------------------------------------------------------
inline int cmd_figure(const RunConfig& cfg, double b_min, double b_max, int samples,
                      std::ostream& out) {
    const ZeroTable zeros = detail_cli::resolve_zeros(cfg, 50);
    const auto coeffs = detail_cli::used_coefficients(zeros, cfg.terms);
    const std::int64_t needed = f_direct_cutoff(b_max, cfg.tol);
    MobiusSieve sieve(detail_cli::auto_sieve_limit(cfg.sieve_limit, needed));
    const auto pts = figure_grid(b_min, b_max, samples, coeffs, cfg.K, sieve, cfg.tol);
    detail_cli::Sink sink(cfg, out);
    write_figure_csv(sink.stream(), pts,
                     {{"command", "figure"},
                      {"zeros", detail_cli::zeros_echo(cfg, zeros)},
                      {"terms", std::to_string(coeffs.size())},
                      {"K", std::to_string(cfg.K)},
                      {"b_min", format_g17(b_min)},
                      {"b_max", format_g17(b_max)},
                      {"samples", std::to_string(samples)},
                      {"tol", format_g17(cfg.tol)},
                      {"sieve_limit", std::to_string(sieve.limit())}});
    return 0;
}

// --- moment ------------------------------------------------------------------
inline int cmd_moment(const RunConfig& cfg, double X, std::ostream& out) {
    const ZeroTable zeros = detail_cli::resolve_zeros(cfg, 50);
    const std::int64_t needed =
        static_cast<std::int64_t>(1581.2 * std::pow(X, 1.25)) + 1;
    MobiusSieve sieve(detail_cli::auto_sieve_limit(cfg.sieve_limit, needed));
    const SecondMomentReport rep = empirical_second_moment(X, zeros, sieve);
    detail_cli::Sink sink(cfg, out);
    CsvWriter w(sink.stream());
    w.meta("command", "moment");
    w.meta("zeros", detail_cli::zeros_echo(cfg, zeros));
    w.meta("X", format_g17(X));
    w.meta("sieve_limit", std::to_string(sieve.limit()));
    w.meta("fitted_slope", format_g17(rep.fitted_slope));
    w.meta("model_A", format_g17(rep.model_A));
    w.meta("slope_over_A", format_g17(rep.fitted_slope / rep.model_A));
    w.meta("evaluations", std::to_string(rep.evaluations));
    w.header("X,integral");
    for (std::size_t j = 0; j < rep.grid.size(); ++j) {
        w.row_begin();
        w.field(rep.grid[j]);
        w.field(rep.integrals[j]);
        w.row_end();
    }
    return 0;
}

// --- density -----------------------------------------------------------------
inline int cmd_density(const RunConfig& cfg, int points, bool compare, int samples,
                       double b_min, double b_max, std::ostream& out) {
    const ZeroTable zeros = detail_cli::resolve_zeros(cfg, 50);
    const auto ranked = detail_cli::used_coefficients(zeros, cfg.terms);
    const AnnulusGeometry g =
        geometry(ranked, coefficient_tail_bound(std::max(zeros.ordinates.back(), 15.0)));
    const DensitySpec spec = density_spec(g);
    const double A = second_moment_constant(ranked);
    detail_cli::Sink sink(cfg, out);
    CsvWriter w(sink.stream());
    w.meta("command", compare ? "density --compare" : "density");
    w.meta("zeros", detail_cli::zeros_echo(cfg, zeros));
    w.meta("terms", std::to_string(ranked.size()));
    if (!compare) {
        w.meta("summary", "C=" + format_g17(g.C) + " c=" + format_g17(g.c) +
                              " classification=" +
                              (g.classification == RegionShape::annulus ? "annulus" : "disk") +
                              " A=" + format_g17(A));
        w.header("x,p_model");
        for (int i = 0; i < points; ++i) {
            const double x = -g.C + 2.0 * g.C * i / (points - 1.0);
            w.row_begin();
            w.field(x);
            w.field(density(spec, x));
            w.row_end();
        }
        return 0;
    }
    const std::int64_t needed = f_direct_cutoff(std::min(b_max, 4000.0), 1e-9);
    MobiusSieve sieve(detail_cli::auto_sieve_limit(cfg.sieve_limit, needed));
    const DistributionReport rep =
        distribution_compare(b_min, b_max, samples, zeros, sieve, cfg.K);
    w.meta("summary", "C=" + format_g17(g.C) + " c=" + format_g17(g.c) +
                          " classification=" +
                          (g.classification == RegionShape::annulus ? "annulus" : "disk") +
                          " A=" + format_g17(A) + " KS=" + format_g17(rep.ks_distance));
    w.meta("observed_min", format_g17(rep.observed_min));
    w.meta("observed_max", format_g17(rep.observed_max));
    w.meta("correction_budget", format_g17(rep.correction_budget));
    w.meta("direct_checks", std::to_string(rep.direct_checks) + " max_diff " +
                                format_g17(rep.max_direct_diff));
    w.header("sample_b,sqrtb_F");
    for (std::size_t i = 0; i < rep.sample_b.size(); ++i) {
        w.row_begin();
        w.field(rep.sample_b[i]);
        w.field(rep.sample_value[i]);
        w.row_end();
    }
    return 0;
}

// --- riesz -------------------------------------------------------------------
inline int cmd_riesz(const RunConfig& cfg, double k, double x_min, double x_max,
                     int samples, std::ostream& out) {
    const ZeroTable zeros = detail_cli::resolve_zeros(cfg, 50);
    // direct-side cutoff at the largest x (k = 1) or from the raw tail bound
    std::int64_t needed = 0;
    double tol_eff = cfg.tol;
    if (k == 1.0) {
        needed = f_direct_cutoff(std::sqrt(x_max), tol_eff);
    } else {
        tol_eff = std::max(cfg.tol, 1e-8);
        needed = static_cast<std::int64_t>(std::pow(tol_eff * (k - 1.0), -1.0 / (k - 1.0))) + 1;
    }
    MobiusSieve sieve(detail_cli::auto_sieve_limit(cfg.sieve_limit, needed));
    if (k != 1.0) {
        // re-clamp to what this sieve supports
        const double limit = static_cast<double>(sieve.limit());
        tol_eff = std::max(tol_eff, std::pow(limit, 1.0 - k) / (k - 1.0) * (1 + 1e-9));
    }
    detail_cli::Sink sink(cfg, out);
    CsvWriter w(sink.stream());
    w.meta("command", "riesz");
    w.meta("zeros", detail_cli::zeros_echo(cfg, zeros));
    w.meta("k", format_g17(k));
    w.meta("tol", format_g17(tol_eff));
    w.meta("sieve_limit", std::to_string(sieve.limit()));
    w.header("x,P_direct,P_expansion,diff");
    for (int i = 0; i < samples; ++i) {
        const double x = samples == 1 ? x_min
                                      : std::exp(std::log(x_min) +
                                                 (std::log(x_max) - std::log(x_min)) * i /
                                                     (samples - 1.0));
        const double tol_x = k == 1.0
                                 ? std::max(tol_eff, f_direct_min_tol(std::sqrt(x), sieve))
                                 : tol_eff;
        const double direct = riesz_direct(k, x, sieve, tol_x);
        const double expansion = riesz_expansion(k, x, zeros, sieve);
        w.row_begin();
        w.field(x);
        w.field(direct);
        w.field(expansion);
        w.field(direct - expansion);
        w.row_end();
    }
    return 0;
}

// --- wmh ---------------------------------------------------------------------
inline int cmd_wmh(const RunConfig& cfg, double X, std::ostream& out) {
    MobiusSieve sieve(detail_cli::auto_sieve_limit(
        cfg.sieve_limit, static_cast<std::int64_t>(X) + 1));
    detail_cli::Sink sink(cfg, out);
    CsvWriter w(sink.stream());
    w.meta("command", "wmh");
    w.meta("X", format_g17(X));
    w.meta("sieve_limit", std::to_string(sieve.limit()));
    w.header("X,integral,ratio_to_logX");
    for (double x = 100.0; x <= X * (1 + 1e-12); x *= 10.0) {
        const double v = wmh_integral(x, sieve);
        w.row_begin();
        w.field(x);
        w.field(v);
        w.field(v / std::log(x));
        w.row_end();
    }
    return 0;
}

// --- zeros -------------------------------------------------------------------
inline int cmd_zeros(const RunConfig& cfg, int count, bool find, std::ostream& out) {
    ZeroTable t;
    if (!cfg.zeros_arg.empty() && !detail_cli::is_integer(cfg.zeros_arg)) {
        t = load_file(cfg.zeros_arg);
    } else {
        const int n = cfg.zeros_arg.empty() ? count : std::atoi(cfg.zeros_arg.c_str());
        t = (find || cfg.compute) ? compute_table(n, std::max(cfg.tol, 1e-10))
                                  : load_embedded(n);
    }
    detail_cli::Sink sink(cfg, out);
    serialize_zero_table(t, sink.stream());
    return 0;
}

// --- check ---------------------------------------------------------------------
inline int cmd_check(const RunConfig& cfg, bool quick, std::ostream& out) {
    if (!cfg.zeros_arg.empty()) {
        // validate the user-supplied source before running; corrupt data is a
        // configuration error, not a check failure
        const ZeroTable user = detail_cli::resolve_zeros(cfg, 50);
        out << "# user zero table validated: " << user.ordinates.size() << " ordinates\n";
    }
    AcceptanceOptions opt;
    opt.quick = quick;
    if (cfg.sieve_limit > 0) opt.sieve_limit = cfg.sieve_limit;
    const auto results = run_acceptance(opt);
    bool all_pass = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name;
        if (!r.detail.empty()) out << "  [" << r.detail << "]";
        out << "\n";
        all_pass = all_pass && r.pass;
    }
    out << (all_pass ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Argument wiring.
// ---------------------------------------------------------------------------
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numerical laboratory for the Mobius series F(b) and its zeta-zero expansion"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--zeros", cfg.zeros_arg,
                        "zero source: embedded count (integer) or file path");
        sub->add_flag("--compute", cfg.compute, "derive integer counts with the root finder");
        sub->add_option("--sieve-limit", cfg.sieve_limit, "Mobius sieve size (0 = auto)");
        sub->add_option("--K", cfg.K, "correction-series depth");
        sub->add_option("--terms", cfg.terms, "zero terms used in sums (0 = all loaded)");
        sub->add_option("--out", cfg.out_path, "write CSV to this path instead of stdout");
        sub->add_option("--tol", cfg.tol, "direct-series tolerance");
    };

    int count = 10;
    auto* sc_coeffs = app.add_subcommand("coeffs", "table of n, gamma_n, |a(gamma_n)|");
    sc_coeffs->add_option("--count", count, "number of rows");
    add_common(sc_coeffs);

    int radii_count = 10;
    auto* sc_radii = app.add_subcommand("radii", "annulus radii C, c, classification, A");
    sc_radii->add_option("--count", radii_count, "number of coefficients");
    add_common(sc_radii);

    int fig_range = 0;
    double b_min = 1.0, b_max = 10.0;
    int fig_samples = 500;
    auto* sc_fig = app.add_subcommand("figure", "sqrt(b) F(b) curve data by both routes");
    sc_fig->add_option("--range", fig_range, "preset range: 1 = [1,10], 2 = [100,1000], 3 = [1000,20000]")
        ->check(CLI::Range(1, 3));
    sc_fig->add_option("--bmin", b_min, "lower endpoint");
    sc_fig->add_option("--bmax", b_max, "upper endpoint");
    sc_fig->add_option("--samples", fig_samples, "grid size");
    add_common(sc_fig);

    double moment_X = 1e4;
    auto* sc_moment = app.add_subcommand("moment", "second moment of F against A log X");
    sc_moment->add_option("--X", moment_X, "upper integration endpoint");
    add_common(sc_moment);

    int dens_points = 501, dens_samples = 10000;
    bool dens_compare = false;
    double dens_bmin = 100.0, dens_bmax = 1e6;
    auto* sc_dens = app.add_subcommand("density", "limiting density of sqrt(b) F(b)");
    sc_dens->add_option("--points", dens_points, "model curve grid size");
    sc_dens->add_flag("--compare", dens_compare, "emit sampled sqrt(b) F(b) and the KS distance");
    sc_dens->add_option("--samples", dens_samples, "sample count for --compare");
    sc_dens->add_option("--bmin", dens_bmin, "sample range lower endpoint");
    sc_dens->add_option("--bmax", dens_bmax, "sample range upper endpoint");
    add_common(sc_dens);

    double riesz_k = 1.0, riesz_xmin = 10.0, riesz_xmax = 1000.0;
    int riesz_samples = 25;
    auto* sc_riesz = app.add_subcommand("riesz", "Riesz family P_k: direct series vs expansion");
    sc_riesz->add_option("--k", riesz_k, "family parameter (1 or >= 1.5)");
    sc_riesz->add_option("--xmin", riesz_xmin, "grid lower endpoint");
    sc_riesz->add_option("--xmax", riesz_xmax, "grid upper endpoint");
    sc_riesz->add_option("--samples", riesz_samples, "grid size");
    add_common(sc_riesz);

    double wmh_X = 1e6;
    auto* sc_wmh = app.add_subcommand("wmh", "integral of (M(x)/x)^2 against log X");
    sc_wmh->add_option("--X", wmh_X, "upper endpoint");
    add_common(sc_wmh);

    int zeros_count = 500;
    bool zeros_find = false;
    auto* sc_zeros = app.add_subcommand("zeros", "emit the zero table in the text format");
    sc_zeros->add_option("--count", zeros_count, "number of ordinates");
    sc_zeros->add_flag("--find", zeros_find, "recompute by bisection instead of the embedded table");
    add_common(sc_zeros);

    bool quick = false;
    auto* sc_check = app.add_subcommand("check", "run the verification suite");
    sc_check->add_flag("--quick", quick, "smaller grids (tolerances unchanged)");
    add_common(sc_check);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sc_coeffs->parsed()) return cmd_coeffs(cfg, count, out);
        if (sc_radii->parsed()) return cmd_radii(cfg, radii_count, out);
        if (sc_fig->parsed()) {
            if (fig_range == 2) { b_min = 100.0; b_max = 1000.0; }
            if (fig_range == 3) { b_min = 1000.0; b_max = 20000.0; }
            return cmd_figure(cfg, b_min, b_max, fig_samples, out);
        }
        if (sc_moment->parsed()) return cmd_moment(cfg, moment_X, out);
        if (sc_dens->parsed())
            return cmd_density(cfg, dens_points, dens_compare, dens_samples, dens_bmin,
                               dens_bmax, out);
        if (sc_riesz->parsed())
            return cmd_riesz(cfg, riesz_k, riesz_xmin, riesz_xmax, riesz_samples, out);
        if (sc_wmh->parsed()) return cmd_wmh(cfg, wmh_X, out);
        if (sc_zeros->parsed()) return cmd_zeros(cfg, zeros_count, zeros_find, out);
        if (sc_check->parsed()) return cmd_check(cfg, quick, out);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace cli
}  // namespace muzeta
