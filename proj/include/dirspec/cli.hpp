#pragma once

// Batch command-line front end.  Six subcommands over potential files with
// deterministic tabular output:
//
//   spectrum     eigenvalues by Galerkin or shooting
//   coeffs       cosine coefficients c_0..c_max
//   expand       expansion terms per mode
//   compare      solver vs expansion residuals
//   ambarzumyan  deviation test and zero/nonzero verdict
//   lemmas       bundled estimate checks
//
// Exit codes: 0 success, 1 verdict mismatch under --expect, 2 usage or input
// error.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dirspec/harness.hpp"
#include "dirspec/potential_io.hpp"
#include "dirspec/text.hpp"

namespace dirspec {

enum class ReportStyle { csv, summary };

inline std::string format_report(const ComparisonReport& rep, ReportStyle style) {
    return style == ReportStyle::csv ? to_csv(rep) : to_summary(rep);
}
inline std::string format_report(const DeviationReport& rep, ReportStyle style) {
    return style == ReportStyle::csv ? to_csv(rep) : to_summary(rep);
}
inline std::string format_report(const LemmaReport& rep, ReportStyle style) {
    return style == ReportStyle::csv ? to_csv(rep) : to_summary(rep);
}

struct RunConfig {
    std::string command;
    std::string potential_path;
    std::string out_path;  // empty -> standard output
    std::size_t n_modes = 8;
    std::size_t m_min = 8;   // compare/lemmas lower mode
    std::size_t m_max = 32;  // ambarzumyan
    int max_m = 16;          // coeffs
    std::size_t n_basis = 0;  // 0 -> max(256, 8*modes)
    std::size_t cutoff = 512;
    double tol = 0.0;  // 0 -> per-operation default
    std::string method = "galerkin";
    std::string format;  // empty -> per-command default
    std::string expect;  // "", "zero", "nonzero"
    bool dump_spec = false;
    bool allow_inadmissible = false;
};

namespace detail {

inline void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
    f.flush();
    if (!f.good()) throw std::runtime_error("failed writing output file: " + out_path);
}

inline ReportStyle resolve_style(const RunConfig& cfg) {
    if (cfg.format == "csv") return ReportStyle::csv;
    if (cfg.format == "summary") return ReportStyle::summary;
    // Per-command default: tabular commands emit CSV, verdict commands a summary.
    if (cfg.command == "ambarzumyan" || cfg.command == "lemmas") return ReportStyle::summary;
    return ReportStyle::csv;
}

inline std::string spectrum_text(const PotentialSpec& spec, const RunConfig& cfg,
                                 ReportStyle style) {
    std::vector<double> lambdas;
    std::vector<double> est_error;
    std::size_t n_basis = 0;
    if (cfg.method == "shooting") {
        for (std::size_t m = 1; m <= cfg.n_modes; ++m) {
            lambdas.push_back(solve_eigenvalue_shooting(spec, m));
        }
    } else {
        GalerkinOptions gopts;
        gopts.n_basis = cfg.n_basis != 0 ? cfg.n_basis : default_n_basis(cfg.n_modes);
        gopts.estimate_error = true;
        n_basis = gopts.n_basis;
        const Spectrum s = solve_spectrum_galerkin(spec, cfg.n_modes, gopts);
        lambdas = s.eigenvalues;
        est_error = s.est_error;
    }

    std::string out;
    if (style == ReportStyle::csv) {
        out = est_error.empty() ? "m,lambda\n" : "m,lambda,est_error\n";
        for (std::size_t m = 1; m <= lambdas.size(); ++m) {
            out += std::to_string(m) + "," + format_sci(lambdas[m - 1]);
            if (!est_error.empty()) out += "," + format_sci(est_error[m - 1]);
            out += "\n";
        }
    } else {
        out = "spectrum: " + make_potential_id(spec) + "\n";
        out += "  method " + cfg.method;
        if (n_basis != 0) out += ", basis " + std::to_string(n_basis);
        out += ", modes " + std::to_string(lambdas.size()) + "\n";
        for (std::size_t m = 1; m <= lambdas.size(); ++m) {
            out += "  m=" + std::to_string(m) + " lambda=" + format_sci(lambdas[m - 1]);
            if (!est_error.empty()) out += " est_error=" + format_sci(est_error[m - 1]);
            out += "\n";
        }
    }
    return out;
}

inline std::string coeffs_text(const PotentialSpec& spec, const RunConfig& cfg,
                               ReportStyle style) {
    const CosineCoeffs coeffs = cosine_coefficients(spec, cfg.max_m);
    std::string out;
    if (style == ReportStyle::csv) {
        out = "m,c_m\n";
        for (int m = 0; m <= coeffs.max_index; ++m) {
            out += std::to_string(m) + "," + format_sci(coeffs.c[static_cast<std::size_t>(m)]) +
                   "\n";
        }
    } else {
        out = "cosine coefficients: " + make_potential_id(spec) + "\n";
        out += "  exact beyond max index: " + std::string(coeffs.exact_beyond ? "yes" : "no") +
               "\n";
        for (int m = 0; m <= coeffs.max_index; ++m) {
            out += "  c_" + std::to_string(m) + " = " +
                   format_sci(coeffs.c[static_cast<std::size_t>(m)]) + "\n";
        }
    }
    return out;
}

inline std::string expand_text(const PotentialSpec& spec, const RunConfig& cfg,
                               ReportStyle style) {
    ExpansionOptions eopts;
    eopts.cutoff = std::max(cfg.cutoff, 2 * cfg.n_modes);
    const int max_index = static_cast<int>(eopts.cutoff);
    const CosineCoeffs coeffs = cosine_coefficients(spec, max_index);

    std::string out;
    if (style == ReportStyle::csv) {
        out = "m,base,c0,minus_c2m,a1,b1,a2,b2,lambda_seed,total,tail_bound\n";
    } else {
        out = "expansion terms: " + make_potential_id(spec) + "\n  cutoff " +
              std::to_string(eopts.cutoff) + "\n";
    }
    for (std::size_t m = 1; m <= cfg.n_modes; ++m) {
        const ExpansionTerms t = lemma1_expansion(m, coeffs, eopts);
        if (style == ReportStyle::csv) {
            out += std::to_string(t.m) + "," + format_sci(t.base) + "," + format_sci(t.c0) + "," +
                   format_sci(t.minus_c2m) + "," + format_sci(t.a1) + "," + format_sci(t.b1) +
                   "," + format_sci(t.a2) + "," + format_sci(t.b2) + "," +
                   format_sci(t.lambda_seed) + "," + format_sci(t.total) + "," +
                   format_sci(t.tail_bound) + "\n";
        } else {
            out += "  m=" + std::to_string(t.m) + " total=" + format_sci(t.total) +
                   " a1=" + format_sci(t.a1) + " b1=" + format_sci(t.b1) +
                   " a2=" + format_sci(t.a2) + " b2=" + format_sci(t.b2) +
                   " tail=" + format_sci(t.tail_bound) + "\n";
        }
    }
    return out;
}

}  // namespace detail

// Parse argv (program name first, as handed to main) and run one subcommand.
inline int parse_and_dispatch(const std::vector<std::string>& argv) {
    RunConfig cfg;
    CLI::App app{"Dirichlet spectral toolkit: sine-basis Galerkin and Prufer shooting "
                 "eigenvalues, eigenvalue expansion terms, and verification reports",
                 "dirspec"};
    app.require_subcommand(1);

    const auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--potential", cfg.potential_path, "potential spec file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", cfg.out_path, "output path (default: standard output)");
        sub->add_option("--format", cfg.format, "output style")
            ->check(CLI::IsMember({"csv", "summary"}));
        sub->add_flag("--dump-spec", cfg.dump_spec,
                      "echo the parsed potential spec and exit");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "lowest Dirichlet eigenvalues");
    add_common(spectrum);
    spectrum->add_option("--modes", cfg.n_modes, "number of modes (default 8)")
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--basis", cfg.n_basis, "Galerkin basis size (0 = auto)");
    spectrum->add_option("--method", cfg.method, "solver (default galerkin)")
        ->check(CLI::IsMember({"galerkin", "shooting"}));

    CLI::App* coeffs = app.add_subcommand("coeffs", "cosine coefficients");
    add_common(coeffs);
    coeffs->add_option("--max-m", cfg.max_m, "largest coefficient index (default 16)")
        ->check(CLI::NonNegativeNumber);

    CLI::App* expand = app.add_subcommand("expand", "eigenvalue expansion terms");
    add_common(expand);
    expand->add_option("--modes", cfg.n_modes, "number of modes (default 8)")
        ->check(CLI::PositiveNumber);
    expand->add_option("--cutoff", cfg.cutoff, "summation cutoff (default 512)")
        ->check(CLI::PositiveNumber);

    CLI::App* compare = app.add_subcommand("compare", "solver vs expansion residuals");
    add_common(compare);
    compare->add_option("--modes", cfg.n_modes, "largest mode (default 32)")
        ->check(CLI::PositiveNumber);
    compare->add_option("--m-min", cfg.m_min, "smallest mode (default 8)")
        ->check(CLI::PositiveNumber);
    compare->add_option("--basis", cfg.n_basis, "Galerkin basis size (0 = auto)");
    compare->add_option("--cutoff", cfg.cutoff, "summation cutoff (default 512)")
        ->check(CLI::PositiveNumber);
    compare->add_option("--tol", cfg.tol, "admissibility tolerance (0 = per-kind default)");
    compare->add_flag("--allow-inadmissible", cfg.allow_inadmissible,
                      "run even when the admissibility hypotheses fail");

    CLI::App* ambar = app.add_subcommand("ambarzumyan", "deviation test and verdict");
    add_common(ambar);
    ambar->add_option("--m-max", cfg.m_max, "largest mode (default 32)")
        ->check(CLI::PositiveNumber);
    ambar->add_option("--basis", cfg.n_basis, "Galerkin basis size (0 = auto)");
    ambar->add_option("--tol", cfg.tol,
                      "deviation threshold (0 = 1e-8 * (m_max pi)^2)");
    ambar->add_option("--expect", cfg.expect, "fail (exit 1) unless the verdict matches")
        ->check(CLI::IsMember({"zero", "nonzero"}));

    CLI::App* lemmas = app.add_subcommand("lemmas", "bundled estimate checks");
    add_common(lemmas);
    lemmas->add_option("--modes", cfg.n_modes, "largest mode (default 32)")
        ->check(CLI::PositiveNumber);
    lemmas->add_option("--m-min", cfg.m_min, "smallest mode (default 8)")
        ->check(CLI::PositiveNumber);
    lemmas->add_option("--basis", cfg.n_basis, "Galerkin basis size (0 = auto)");
    lemmas->add_option("--cutoff", cfg.cutoff, "summation cutoff (default 512)")
        ->check(CLI::PositiveNumber);
    lemmas->add_option("--tol", cfg.tol, "admissibility tolerance (0 = per-kind default)");
    lemmas->add_flag("--allow-inadmissible", cfg.allow_inadmissible,
                     "run even when the admissibility hypotheses fail");

    // compare/lemmas default to the 8..32 window; the tabular commands to 8 modes.
    compare->parse_complete_callback([&cfg, compare] {
        if (compare->count("--modes") == 0) cfg.n_modes = 32;
    });
    lemmas->parse_complete_callback([&cfg, lemmas] {
        if (lemmas->count("--modes") == 0) cfg.n_modes = 32;
    });

    try {
        std::vector<std::string> args;
        args.reserve(argv.empty() ? 0 : argv.size() - 1);
        for (std::size_t i = argv.size(); i > 1; --i) args.push_back(argv[i - 1]);
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().at(0)->get_name();

    try {
        const PotentialSpec spec = parse_potential_file(cfg.potential_path);
        if (cfg.dump_spec) {
            detail::write_output(cfg.out_path, dump_potential(spec));
            return 0;
        }
        const ReportStyle style = detail::resolve_style(cfg);

        if (cfg.command == "spectrum") {
            detail::write_output(cfg.out_path, detail::spectrum_text(spec, cfg, style));
        } else if (cfg.command == "coeffs") {
            detail::write_output(cfg.out_path, detail::coeffs_text(spec, cfg, style));
        } else if (cfg.command == "expand") {
            detail::write_output(cfg.out_path, detail::expand_text(spec, cfg, style));
        } else if (cfg.command == "compare") {
            CompareOptions opts;
            opts.n_basis = cfg.n_basis;
            opts.expansion.cutoff = cfg.cutoff;
            opts.allow_inadmissible = cfg.allow_inadmissible;
            opts.hypothesis_tol = cfg.tol;
            const ComparisonReport rep =
                compare_spectrum_vs_expansion(spec, cfg.m_min, cfg.n_modes, opts);
            detail::write_output(cfg.out_path, format_report(rep, style));
        } else if (cfg.command == "ambarzumyan") {
            const DeviationReport rep =
                ambarzumyan_deviation(spec, cfg.m_max, cfg.tol, cfg.n_basis);
            detail::write_output(cfg.out_path, format_report(rep, style));
            if (!cfg.expect.empty()) {
                const bool want_zero = cfg.expect == "zero";
                const bool got_zero = rep.verdict == Verdict::zero_potential;
                if (want_zero != got_zero) {
                    std::cerr << "expectation failed: verdict is " << to_string(rep.verdict)
                              << ", expected " << cfg.expect << "_potential\n";
                    return 1;
                }
            }
        } else if (cfg.command == "lemmas") {
            LemmaOptions opts;
            opts.n_basis = cfg.n_basis;
            opts.cutoff = cfg.cutoff;
            opts.allow_inadmissible = cfg.allow_inadmissible;
            opts.hypothesis_tol = cfg.tol;
            const LemmaReport rep = lemma_checks(spec, cfg.m_min, cfg.n_modes, opts);
            detail::write_output(cfg.out_path, format_report(rep, style));
        } else {
            std::cerr << "error: unknown command " << cfg.command << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace dirspec
