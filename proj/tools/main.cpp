// aperiodic -- command-line front end: generate weight sequences, inspect
// substitution rules, run the spectral engine, and run the verification
// suite. Output files are deterministic; see README for formats.
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aperiodic/io.hpp"
#include "aperiodic/recurrence.hpp"
#include "aperiodic/spectral.hpp"
#include "aperiodic/substitution.hpp"
#include "aperiodic/verify.hpp"

namespace {

using namespace aperiodic;

std::uint64_t resolve_term_cap(int order, std::optional<int> max_level_flag) {
    std::optional<int> max_level = max_level_flag;
    if (!max_level) {
        if (const char* env = std::getenv("APERIODIC_MAX_LEVEL")) {
            try {
                max_level = std::stoi(env);
            } catch (const std::exception&) {
                throw std::invalid_argument(
                    "APERIODIC_MAX_LEVEL must be an integer, got '" +
                    std::string(env) + "'");
            }
        }
    }
    if (!max_level)
        return kDefaultTermCap;
    if (*max_level < 0)
        throw std::invalid_argument("maximum level must be >= 0");
    return term_count(order, *max_level);
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    io::atomic_write(out_path, content);
}

/// The rule behind a construction spec: the composed sign rule for binary
/// programs, the order-n rule for the Fourier family.
SubstitutionRule rule_for(const ConstructionSpec& spec) {
    if (spec.family() == Family::binary)
        return rule_from_signs(spec.signs());
    return fourier_rule(spec.order());
}

int run_gen(const std::string& construction, int level, const std::string& format,
            const std::string& out_path, std::optional<int> max_level) {
    const ConstructionSpec spec = io::parse_construction(construction, level);
    const std::uint64_t cap = resolve_term_cap(spec.order(), max_level);
    const CoefficientSequence seq = coefficients(spec, cap);

    std::string content;
    if (format == "csv")
        content = io::sequence_csv(seq);
    else if (format == "json")
        content = io::sequence_json(seq, spec, construction).dump(2) + "\n";
    else
        throw std::invalid_argument("gen: unknown format '" + format + "'");
    emit(content, out_path);

    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    summary << "gen: " << seq.size() << " coefficients (order " << seq.order()
            << ", level " << spec.level() << ")"
            << (out_path.empty() ? "" : " -> " + out_path) << "\n";
    return 0;
}

int run_subst(const std::string& rule_text, const std::string& show,
              std::size_t length, const std::string& format,
              const std::string& out_path) {
    const ConstructionSpec spec = io::parse_construction(rule_text, 0);
    const SubstitutionRule rule = rule_for(spec);

    std::string content;
    if (show == "rule") {
        for (int base = 0; base < rule.alphabet().base_count; ++base)
            for (int bars = 0; bars < rule.alphabet().order; ++bars) {
                const Letter l{base, bars};
                content += format_letter(l) + " -> " +
                           format_word(rule.image(l)) + "\n";
            }
    } else if (show == "matrix") {
        const SubstitutionMatrix m = substitution_matrix(rule);
        content = "letter";
        for (int col = 0; col < m.size(); ++col)
            content += "," + format_letter(letter_from_index(col, rule.alphabet()));
        content += "\n";
        for (int row = 0; row < m.size(); ++row) {
            content += format_letter(letter_from_index(row, rule.alphabet()));
            for (int col = 0; col < m.size(); ++col)
                content += "," + std::to_string(m.at(row, col));
            content += "\n";
        }
    } else if (show == "eigenvalues") {
        const auto values = eigenvalues(substitution_matrix(rule));
        content = io::eigenvalues_json(values).dump(2) + "\n";
    } else if (show == "fixedpoint") {
        const Word prefix = fixed_point_prefix(rule, Letter{0, 0}, length);
        if (format == "csv")
            content = io::sequence_csv(factor_map(prefix));
        else
            content = format_word(prefix) + "\n";
    } else {
        throw std::invalid_argument("subst: unknown --show '" + show + "'");
    }
    emit(content, out_path);
    return 0;
}

int run_spectrum(const std::string& construction, const std::string& input_path,
                 int input_order, std::uint64_t n_terms, int grid_points,
                 std::size_t max_lag, const std::string& out_path,
                 const std::string& plot_dir, std::optional<int> max_level) {
    std::optional<ConstructionSpec> spec;
    std::optional<CoefficientSequence> seq;
    io::json input_block;

    if (!construction.empty()) {
        if (n_terms == 0)
            throw std::invalid_argument("spectrum: --N is required with --construction");
        ConstructionSpec base = io::parse_construction(construction, 0);
        int level = 0;
        while (term_count(base.order(), level) < n_terms)
            ++level;
        spec = base.with_level(level);
        const std::uint64_t cap = resolve_term_cap(base.order(), max_level);
        seq = coefficients(*spec, cap);
        input_block = io::json{{"construction", construction},
                               {"canonical", io::canonical_construction(*spec)},
                               {"order", spec->order()},
                               {"level", spec->level()}};
    } else if (!input_path.empty()) {
        if (input_order < 1)
            throw std::invalid_argument("spectrum: --order is required with --input");
        seq = io::read_sequence_csv_file(input_path, input_order);
        if (n_terms == 0)
            n_terms = seq->size();
        input_block = io::json{{"file", input_path}, {"order", input_order}};
    } else {
        throw std::invalid_argument("spectrum: need --construction or --input");
    }
    if (n_terms > seq->size())
        throw std::invalid_argument("spectrum: --N exceeds the sequence length");

    const UnitCircleGrid grid(grid_points);
    const std::size_t n = static_cast<std::size_t>(n_terms);
    if (max_lag >= n)
        max_lag = n - 1;

    const SpectralReport result = build_spectral_report(*seq, n, grid, max_lag);
    const io::json doc = io::spectral_report_json(result, input_block, grid_points,
                                                  max_lag);

    if (!out_path.empty())
        io::atomic_write(out_path, doc.dump(2) + "\n");
    else
        std::cout << doc.dump(2) + "\n";

    if (!plot_dir.empty())
        io::write_plot_data(result, grid_points, plot_dir);

    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    summary << "spectrum: N=" << n_terms << " sup="
            << io::format_double(result.sup_abs)
            << " C_N=" << io::format_double(result.root_n_constant)
            << (out_path.empty() ? "" : " -> " + out_path) << "\n";
    return 0;
}

int run_verify(const std::string& suite_name, const std::string& out_path) {
    Suite suite;
    if (suite_name == "default")
        suite = Suite::standard;
    else if (suite_name == "fast")
        suite = Suite::fast;
    else
        throw std::invalid_argument("verify: unknown suite '" + suite_name + "'");

    const VerificationReport report = run_suite(suite);
    const io::json doc = io::verification_report_json(report, suite_name);
    if (!out_path.empty())
        io::atomic_write(out_path, doc.dump(2) + "\n");

    int passed = 0;
    for (const CheckEntry& entry : report.checks) {
        std::cout << (entry.pass ? "[pass] " : "[FAIL] ") << entry.name;
        if (!entry.pass)
            std::cout << "  (measured " << io::format_double(entry.measured)
                      << ", bound " << io::format_double(entry.bound) << ")";
        std::cout << "\n";
        passed += entry.pass ? 1 : 0;
    }
    std::cout << "verify: " << passed << "/" << report.checks.size()
              << " checks passed\n";
    return report.overall_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"substitution sequences with flat spectra: generation, "
                 "substitution tools, spectral verification"};
    app.require_subcommand(1);

    std::string construction = "rs";
    int level = 3;
    std::string format = "csv";
    std::string out_path;
    std::optional<int> max_level;

    CLI::App* gen = app.add_subcommand(
        "gen", "Generate the weight sequence of a construction");
    gen->add_option("--construction", construction,
                    "rs | signs:+-... | fourier:n")->required();
    gen->add_option("--k", level, "recursion level")->required();
    gen->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    gen->add_option("--out", out_path, "output path (default stdout)");
    gen->add_option("--max-level", max_level,
                    "override the expansion cap (also APERIODIC_MAX_LEVEL)");

    std::string rule_text = "rs";
    std::string show = "rule";
    std::size_t fp_length = 32;
    std::string subst_format = "tokens";
    std::string subst_out;

    CLI::App* subst = app.add_subcommand(
        "subst", "Inspect a substitution rule");
    subst->add_option("--rule", rule_text, "rs | signs:+-... | fourier:n")
        ->required();
    subst->add_option("--show", show, "rule | matrix | eigenvalues | fixedpoint")
        ->check(CLI::IsMember({"rule", "matrix", "eigenvalues", "fixedpoint"}));
    subst->add_option("--length", fp_length, "fixed-point prefix length");
    subst->add_option("--format", subst_format,
                      "fixedpoint output: tokens | csv (weight rows)")
        ->check(CLI::IsMember({"tokens", "csv"}));
    subst->add_option("--out", subst_out, "output path (default stdout)");

    std::string spec_construction;
    std::string input_path;
    int input_order = 0;
    std::uint64_t n_terms = 0;
    int grid_points = 4096;
    std::size_t max_lag = 64;
    std::string report_path;
    std::string plot_dir;
    std::optional<int> spectrum_max_level;

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Sup profile, autocorrelation, periodogram, bound "
                    "verdicts (transform convention x_j = exp(+2*pi*i*j/M))");
    spectrum->add_option("--construction", spec_construction,
                         "rs | signs:+-... | fourier:n");
    spectrum->add_option("--input", input_path, "sequence CSV (from gen)");
    spectrum->add_option("--order", input_order, "weight order of --input");
    spectrum->add_option("--N", n_terms, "window length");
    spectrum->add_option("--grid", grid_points, "grid points on the circle");
    spectrum->add_option("--max-lag", max_lag, "autocorrelation lags");
    spectrum->add_option("--out", report_path, "report JSON path");
    spectrum->add_option("--emit-plot-data", plot_dir,
                         "directory for periodogram.dat, autocorr.dat, supnorm.dat");
    spectrum->add_option("--max-level", spectrum_max_level,
                         "override the expansion cap (also APERIODIC_MAX_LEVEL)");

    std::string suite_name = "default";
    std::string verify_out;

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--suite", suite_name, "default | fast")
        ->check(CLI::IsMember({"default", "fast"}));
    verify->add_option("--out", verify_out, "report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed())
            return run_gen(construction, level, format, out_path, max_level);
        if (subst->parsed())
            return run_subst(rule_text, show, fp_length, subst_format, subst_out);
        if (spectrum->parsed())
            return run_spectrum(spec_construction, input_path, input_order,
                                n_terms, grid_points, max_lag, report_path,
                                plot_dir, spectrum_max_level);
        if (verify->parsed())
            return run_verify(suite_name, verify_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
