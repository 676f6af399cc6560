// verify.hpp -- executable checks binding the recurrence, substitution, and
// spectral modules to the facts they are supposed to satisfy, collected into
// a machine-readable report. Checks are deterministic and independent of one
// another.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "aperiodic/alphabet.hpp"
#include "aperiodic/recurrence.hpp"
#include "aperiodic/spectral.hpp"
#include "aperiodic/substitution.hpp"

namespace aperiodic {

struct CheckEntry {
    std::string name;
    std::string anchor;  // the fact being checked, self-contained
    std::string kind;    // "exact", "numeric", or "evidence" (prefix-based)
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckEntry> checks;

    bool overall_pass() const {
        for (const CheckEntry& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

namespace detail {

inline std::string format_signs(const SignProgram& program) {
    std::string out;
    for (int s : program.pattern())
        out += s == 1 ? '+' : '-';
    return out;
}

inline double spectrum_distance(std::vector<std::complex<double>> computed,
                                std::vector<std::complex<double>> expected) {
    if (computed.size() != expected.size())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& e : expected) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < computed.size(); ++i) {
            const double d = std::abs(computed[i] - e);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        worst = std::max(worst, best_dist);
        computed.erase(computed.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

inline std::string spectrum_text(const std::vector<std::complex<double>>& values) {
    std::ostringstream out;
    out.precision(12);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out << ", ";
        out << values[i].real();
        if (values[i].imag() != 0.0)
            out << (values[i].imag() > 0 ? "+" : "") << values[i].imag() << "i";
    }
    return out.str();
}

} // namespace detail

/// Coefficients from the recurrence against the factor map of the fixed
/// point of the composed rule, compared residue by residue at every level
/// p, 2p, ..., k*p.
inline CheckEntry check_correspondence(const SignProgram& program, int repetitions,
                                       std::uint64_t term_cap = kDefaultTermCap) {
    CheckEntry entry;
    entry.name = "correspondence signs:" + detail::format_signs(program);
    entry.anchor = "recurrence coefficients == weight image of the substitution "
                   "fixed point, for periodic sign programs";
    entry.kind = "exact";

    const SubstitutionRule rule = rule_from_signs(program);
    std::uint64_t mismatches = 0;
    std::uint64_t compared = 0;
    for (int rep = 1; rep <= repetitions; ++rep) {
        const int level = program.period() * rep;
        const CoefficientSequence from_recurrence =
            coefficients(ConstructionSpec::binary(program, level), term_cap);
        const CoefficientSequence from_fixed_point = factor_map(
            fixed_point_prefix(rule, Letter{0, 0}, from_recurrence.size()));
        for (std::size_t i = 0; i < from_recurrence.size(); ++i)
            if (from_recurrence.exponent(i) != from_fixed_point.exponent(i))
                ++mismatches;
        compared += from_recurrence.size();
    }

    entry.measured = static_cast<double>(mismatches);
    entry.bound = 0.0;
    entry.margin = -entry.measured;
    entry.pass = mismatches == 0;
    entry.detail = std::to_string(compared) + " residues compared over " +
                   std::to_string(repetitions) + " levels";
    return entry;
}

/// sum_j |P_k^(j)(x)|^2 == n^(k+1) on every grid point, to relative error
/// 1e-9 * (k+1).
inline CheckEntry check_norm_conservation(const ConstructionSpec& spec,
                                          const UnitCircleGrid& grid,
                                          std::uint64_t term_cap = kDefaultTermCap) {
    CheckEntry entry;
    const int k = spec.level();
    const int n = spec.order();
    entry.name = "norm conservation n=" + std::to_string(n) +
                 " k=" + std::to_string(k);
    entry.anchor = "sum of squared component moduli equals n^(k+1) on the "
                   "unit circle (unitarity of the step matrix)";
    entry.kind = "numeric";

    const RecurrenceState state = run_recurrence(spec, term_cap);
    const std::size_t len = state.length();
    const double expected = std::pow(static_cast<double>(n), k + 1);

    std::vector<double> totals(static_cast<std::size_t>(grid.size), 0.0);
    for (std::size_t j = 0; j < state.component_count(); ++j) {
        const auto spectrum = grid_spectrum(state.component_sequence(j), len, grid);
        for (int g = 0; g < grid.size; ++g)
            totals[static_cast<std::size_t>(g)] +=
                std::norm(spectrum[static_cast<std::size_t>(g)]);
    }
    double worst = 0.0;
    for (double t : totals)
        worst = std::max(worst, std::abs(t - expected) / expected);

    entry.measured = worst;
    entry.bound = 1e-9 * (k + 1);
    entry.margin = entry.bound - entry.measured;
    entry.pass = entry.measured <= entry.bound;
    return entry;
}

/// Level bound, per-level partial-sum bound, and the root-N constant bound,
/// for every m up to the spec's term count, on every grid point.
inline CheckEntry check_bounds(const ConstructionSpec& spec,
                               const UnitCircleGrid& grid,
                               std::uint64_t term_cap = kDefaultTermCap) {
    CheckEntry entry;
    entry.name = spec.family() == Family::binary
                     ? "bounds signs:" + detail::format_signs(spec.signs()) +
                           " k=" + std::to_string(spec.level())
                     : "bounds fourier:" + std::to_string(spec.order()) +
                           " k=" + std::to_string(spec.level());
    entry.anchor = "|S_{n^k}| <= n^((k+1)/2), partial sums <= (n+sqrt(n))n^(k/2), "
                   "|S_N| <= n(1+sqrt(n))sqrt(N), all grid points";
    entry.kind = "numeric";

    const CoefficientSequence seq = coefficients(spec, term_cap);
    const BoundScan scan = bound_scan(seq, seq.size(), grid);

    entry.measured = std::min({scan.level_margin, scan.partial_margin,
                               scan.final_margin});
    entry.bound = -1e-6;
    entry.margin = entry.measured - entry.bound;
    entry.pass = scan.level_ok && scan.partial_ok && scan.final_ok;
    std::ostringstream detail;
    detail.precision(6);
    detail << "min margins: level " << scan.level_margin << ", partial "
           << scan.partial_margin << " (m=" << scan.partial_worst_m << ")"
           << ", root-N " << scan.final_margin << " (m=" << scan.final_worst_m
           << ")";
    entry.detail = detail.str();
    return entry;
}

/// Eigenvalue tables of the four named length-2/length-4 rules, the
/// isospectrality of the two composition orders, and the shared
/// eighth-power spectrum of the sign rules.
inline std::vector<CheckEntry> check_known_spectra() {
    std::vector<CheckEntry> entries;
    const double root2 = std::sqrt(2.0);

    struct TableCase {
        std::string name;
        SubstitutionRule rule;
        std::vector<std::complex<double>> expected;
    };
    const std::vector<TableCase> cases{
        {"spectrum S+", s_plus_rule(), {{2, 0}, {root2, 0}, {-root2, 0}, {0, 0}}},
        {"spectrum S-", s_minus_rule(), {{2, 0}, {1, 1}, {1, -1}, {0, 0}}},
        // Both composition orders share x(x-4)(x-2)(x+2): occurrence matrices
        // of f.g and g.f are matrix products in opposite order, hence
        // isospectral.
        {"spectrum S-+", compose(s_minus_rule(), s_plus_rule()),
         {{4, 0}, {2, 0}, {-2, 0}, {0, 0}}},
        {"spectrum S+-", compose(s_plus_rule(), s_minus_rule()),
         {{4, 0}, {2, 0}, {-2, 0}, {0, 0}}},
    };
    for (const TableCase& c : cases) {
        CheckEntry entry;
        entry.name = c.name;
        entry.anchor = "eigenvalues of the letter-occurrence matrix";
        entry.kind = "numeric";
        const auto computed = eigenvalues(substitution_matrix(c.rule));
        entry.measured = detail::spectrum_distance(computed, c.expected);
        entry.bound = 1e-9;
        entry.margin = entry.bound - entry.measured;
        entry.pass = entry.measured <= entry.bound;
        entry.detail = "computed: " + detail::spectrum_text(computed);
        entries.push_back(std::move(entry));
    }

    {
        CheckEntry entry;
        entry.name = "spectrum eighth powers";
        entry.anchor = "M(S+)^8 and M(S-)^8 share the spectrum {256, 16, 16, 0}";
        entry.kind = "numeric";
        const auto plus8 = eigenvalues(substitution_matrix(s_plus_rule()).power(8));
        const auto minus8 =
            eigenvalues(substitution_matrix(s_minus_rule()).power(8));
        const std::vector<std::complex<double>> expected{
            {256, 0}, {16, 0}, {16, 0}, {0, 0}};
        entry.measured = std::max({detail::spectrum_distance(plus8, expected),
                                   detail::spectrum_distance(minus8, expected),
                                   detail::spectrum_distance(plus8, minus8)});
        entry.bound = 1e-6;
        entry.margin = entry.bound - entry.measured;
        entry.pass = entry.measured <= entry.bound;
        entries.push_back(std::move(entry));
    }
    return entries;
}

/// Factor-language facts separating and relating the four named rules:
/// (a) a 6-letter word legal for S+ only, and one for S- only;
/// (b) ABAB illegal everywhere;
/// (c) every length-4 factor of a long prefix whose weights are 1,1,1,1 is
///     BABA (prefix evidence);
/// (d) the gaps between BABA occurrences stay bounded (prefix evidence).
inline std::vector<CheckEntry> check_hull_facts(std::size_t prefix_len = 1 << 16) {
    std::vector<CheckEntry> entries;
    const Alphabet ab{2, 2};
    const SubstitutionRule sp = s_plus_rule();
    const SubstitutionRule sm = s_minus_rule();
    const SubstitutionRule smp = compose(sm, sp);
    const SubstitutionRule spm = compose(sp, sm);
    const std::vector<std::pair<std::string, const SubstitutionRule*>> rules{
        {"S+", &sp}, {"S-", &sm}, {"S-+", &smp}, {"S+-", &spm}};

    {
        CheckEntry entry;
        entry.name = "hull separating 6-words";
        entry.anchor = "BABAB1A1 is legal for S+ and not for S-, and some "
                       "6-word is legal for S- only";
        entry.kind = "exact";
        const std::set<Word> plus6 = legal_words(sp, 6);
        const std::set<Word> minus6 = legal_words(sm, 6);
        const Word witness = parse_word("B0 A0 B0 A0 B1 A1", ab);
        std::set<Word> minus_only;
        std::set_difference(minus6.begin(), minus6.end(), plus6.begin(),
                            plus6.end(),
                            std::inserter(minus_only, minus_only.begin()));
        const bool in_plus = plus6.count(witness) == 1;
        const bool not_in_minus = minus6.count(witness) == 0;
        entry.measured = static_cast<double>((in_plus ? 1 : 0) +
                                             (not_in_minus ? 1 : 0) +
                                             (!minus_only.empty() ? 1 : 0));
        entry.bound = 3.0;
        entry.margin = entry.measured - entry.bound;
        entry.pass = entry.measured == entry.bound;
        if (!minus_only.empty())
            entry.detail = "S- witness: " + format_word(*minus_only.begin());
        entries.push_back(std::move(entry));
    }

    {
        CheckEntry entry;
        entry.name = "hull ABAB illegal";
        entry.anchor = "ABAB is not a legal 4-word for S+, S-, S-+, S+- "
                       "(its preimage would need AA or BB)";
        entry.kind = "exact";
        const Word abab = parse_word("A0 B0 A0 B0", ab);
        int violations = 0;
        for (const auto& [name, rule] : rules)
            if (legal_words(*rule, 4).count(abab) != 0)
                ++violations;
        entry.measured = violations;
        entry.bound = 0.0;
        entry.margin = -entry.measured;
        entry.pass = violations == 0;
        entries.push_back(std::move(entry));
    }

    {
        CheckEntry preimage;
        preimage.name = "hull 1111 preimage";
        preimage.anchor = "every length-4 factor with weights 1,1,1,1 in long "
                          "prefixes of all four fixed points is BABA";
        preimage.kind = "evidence";

        CheckEntry gaps;
        gaps.name = "hull BABA gaps";
        gaps.anchor = "BABA recurs with bounded gaps in long prefixes of all "
                      "four fixed points";
        gaps.kind = "evidence";

        std::uint64_t bad_windows = 0;
        std::uint64_t max_gap = 0;
        std::uint64_t min_occurrences = std::numeric_limits<std::uint64_t>::max();
        const std::vector<Letter> baba{{1, 0}, {0, 0}, {1, 0}, {0, 0}};
        for (const auto& [name, rule] : rules) {
            const Word prefix = fixed_point_prefix(*rule, Letter{0, 0}, prefix_len);
            std::uint64_t occurrences = 0;
            std::uint64_t last = 0;
            bool seen = false;
            for (std::size_t i = 0; i + 4 <= prefix.size(); ++i) {
                bool all_plain = true;
                bool is_baba = true;
                for (std::size_t t = 0; t < 4; ++t) {
                    const Letter& l = prefix[i + t];
                    all_plain = all_plain && l.bars == 0;
                    is_baba = is_baba && l == baba[t];
                }
                if (all_plain && !is_baba)
                    ++bad_windows;
                if (is_baba) {
                    ++occurrences;
                    if (seen)
                        max_gap = std::max(max_gap, static_cast<std::uint64_t>(i) - last);
                    last = static_cast<std::uint64_t>(i);
                    seen = true;
                }
            }
            min_occurrences = std::min(min_occurrences, occurrences);
        }

        preimage.measured = static_cast<double>(bad_windows);
        preimage.bound = 0.0;
        preimage.margin = -preimage.measured;
        preimage.pass = bad_windows == 0;
        preimage.detail = "prefix length " + std::to_string(prefix_len);
        entries.push_back(std::move(preimage));

        gaps.measured = static_cast<double>(max_gap);
        gaps.bound = static_cast<double>(prefix_len);
        gaps.margin = gaps.bound - gaps.measured;
        gaps.pass = min_occurrences >= 2 && max_gap > 0 &&
                    max_gap < static_cast<std::uint64_t>(prefix_len);
        gaps.detail = "max start-to-start gap " + std::to_string(max_gap) +
                      ", min occurrences per prefix " +
                      std::to_string(min_occurrences);
        entries.push_back(std::move(gaps));
    }

    return entries;
}

enum class Suite { standard, fast };

/// The regression suite: correspondence for the five sign programs, norm
/// conservation and bound sweeps for the suite constructions, the spectrum
/// tables, and the factor-language facts.
inline VerificationReport run_suite(Suite suite) {
    VerificationReport report;

    const bool fast = suite == Suite::fast;
    const std::size_t prefix_len = fast ? (1 << 12) : (1 << 16);
    const int max_corr_terms_log2 = fast ? 8 : 16;
    const UnitCircleGrid grid(fast ? 256 : 1024);
    const std::uint64_t bound_terms = fast ? (1 << 10) : (1 << 14);

    const std::vector<SignProgram> programs{
        SignProgram::periodic({+1}), SignProgram::periodic({-1}),
        SignProgram::periodic({-1, +1}), SignProgram::periodic({+1, -1}),
        SignProgram::periodic({+1, +1, -1})};

    for (const SignProgram& program : programs)
        report.checks.push_back(
            check_correspondence(program, max_corr_terms_log2 / program.period()));

    std::vector<ConstructionSpec> families;
    for (const SignProgram& program : programs)
        families.push_back(ConstructionSpec::binary(program, 0));
    families.push_back(ConstructionSpec::fourier(3, 0));
    families.push_back(ConstructionSpec::fourier(4, 0));

    const std::uint64_t norm_terms = fast ? (1 << 10) : (1 << 18);
    for (int n : fast ? std::vector<int>{2, 3} : std::vector<int>{2, 3, 4, 5}) {
        int k = 0;
        while (term_count(n, k + 1) <= norm_terms)
            ++k;
        report.checks.push_back(
            check_norm_conservation(ConstructionSpec::fourier(n, k), grid));
    }

    for (const ConstructionSpec& family : families) {
        int k = 0;
        const int step = family.family() == Family::binary
                             ? std::max(1, family.signs().period())
                             : 1;
        while (term_count(family.order(), k + step) <= bound_terms)
            k += step;
        report.checks.push_back(check_bounds(family.with_level(k), grid));
    }

    for (CheckEntry& entry : check_known_spectra())
        report.checks.push_back(std::move(entry));
    for (CheckEntry& entry : check_hull_facts(prefix_len))
        report.checks.push_back(std::move(entry));

    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; });
    return report;
}

} // namespace aperiodic
