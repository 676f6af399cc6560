#include "aperiodic/spectral.hpp"

#include "aperiodic/recurrence.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace aperiodic;

namespace {

// Independent oracle: term-by-term summation with explicitly accumulated
// powers, no Horner, no transform.
std::complex<double> oracle_sum(const CoefficientSequence& seq, std::size_t n,
                                std::complex<double> x) {
    std::complex<double> power = 1.0;
    std::complex<double> acc = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
        power *= x;
        acc += seq.value(m - 1) * power;
    }
    return acc;
}

// Independent oracle: complex-product autocorrelation.
std::complex<double> oracle_autocorrelation(const CoefficientSequence& seq,
                                            std::size_t n, std::size_t lag) {
    std::complex<double> acc = 0.0;
    for (std::size_t r = 0; r + lag < n; ++r)
        acc += seq.value(r + lag) * std::conj(seq.value(r));
    return acc / static_cast<double>(n);
}

CoefficientSequence ones(std::size_t count) {
    return CoefficientSequence(2, std::vector<std::uint8_t>(count, 0));
}

} // namespace

TEST_CASE("exp_sum evaluates the exponential sum by Horner") {
    const CoefficientSequence rs3 = coefficients(ConstructionSpec::rudin_shapiro(3));

    CHECK(exp_sum(rs3, 8, {1.0, 0.0}) == std::complex<double>(4.0, 0.0));
    // Oracle value: the plus-component vanishes at x = -1 while the minus
    // component of the same level carries the weight (parallelogram law).
    CHECK(std::abs(exp_sum(rs3, 8, {-1.0, 0.0})) < 1e-12);
    const CoefficientSequence q3 =
        run_recurrence(ConstructionSpec::rudin_shapiro(3)).component_sequence(1);
    CHECK(exp_sum(q3, 8, {-1.0, 0.0}) == std::complex<double>(-4.0, 0.0));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const double angle = std::uniform_real_distribution<double>(0, 6.28)(rng);
        const std::complex<double> x = std::polar(1.0, angle);
        CHECK(std::abs(exp_sum(rs3, 8, x) - oracle_sum(rs3, 8, x)) < 1e-12);
    }

    CHECK_THROWS_AS(static_cast<void>(exp_sum(rs3, 0, {1.0, 0.0})),
                    std::out_of_range);
    CHECK_THROWS_AS(static_cast<void>(exp_sum(rs3, 9, {1.0, 0.0})),
                    std::out_of_range);
    CHECK_THROWS_AS(static_cast<void>(exp_sum(rs3, 4, {0.0, 0.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(exp_sum(rs3, 4, {0.5, 0.0})),
                    std::invalid_argument);
}

TEST_CASE("grid limits") {
    CHECK_THROWS_AS(UnitCircleGrid(7), std::invalid_argument);
    const UnitCircleGrid g(8);
    CHECK(g.point(0) == std::complex<double>(1.0, 0.0));
    CHECK(g.point(2) == std::complex<double>(0.0, 1.0));
}

TEST_CASE("sup_profile attains the level bound at x = 1 for the plus family") {
    const CoefficientSequence rs3 = coefficients(ConstructionSpec::rudin_shapiro(3));
    const UnitCircleGrid grid(1024);
    const SupProfile p = sup_profile(rs3, 8, grid);
    CHECK(p.sup_abs == 4.0);
    CHECK(p.argmax == 0);

    const SupProfile single = sup_profile(ones(1), 1, grid);
    CHECK(single.sup_abs == 1.0);
}

TEST_CASE("the order-3 family stays below its level bound on the grid") {
    const CoefficientSequence f3 = coefficients(ConstructionSpec::fourier(3, 2));
    const SupProfile p = sup_profile(f3, 9, UnitCircleGrid(1024));
    CHECK(p.sup_abs <= std::pow(3.0, 1.5) + 1e-6);
}

TEST_CASE("transform and Horner paths agree") {
    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(10));
    const UnitCircleGrid grid(1024);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n =
            std::uniform_int_distribution<std::size_t>(1, rs.size())(rng);
        const int j = std::uniform_int_distribution<int>(0, grid.size - 1)(rng);
        const auto spectrum = grid_spectrum(rs, n, grid);
        const std::complex<double> direct = exp_sum(rs, n, grid.point(j));
        CHECK(std::abs(spectrum[static_cast<std::size_t>(j)] - direct) <= 1e-6);
    }
}

TEST_CASE("non power-of-two grids use the reference transform") {
    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(6));
    const UnitCircleGrid grid(12);
    const auto spectrum = grid_spectrum(rs, 64, grid);
    for (int j = 0; j < grid.size; ++j)
        CHECK(std::abs(spectrum[static_cast<std::size_t>(j)] -
                       oracle_sum(rs, 64, grid.point(j))) < 1e-9);
}

TEST_CASE("root-N constants stay below the family constants") {
    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(10));
    const UnitCircleGrid grid(1024);

    std::vector<std::uint64_t> powers;
    for (std::uint64_t n = 1; n <= rs.size(); n *= 2)
        powers.push_back(n);
    for (const auto& [n, c] : root_n_constants(rs, powers, grid))
        CHECK(c <= std::sqrt(2.0) + 1e-9);

    std::vector<std::uint64_t> all;
    for (std::uint64_t n = 1; n <= rs.size(); ++n)
        all.push_back(n);
    for (const auto& [n, c] : root_n_constants(rs, all, grid))
        CHECK(c <= root_n_bound_constant(2) + 1e-6);

    CHECK_THROWS_AS(static_cast<void>(root_n_constants(rs, {}, grid)),
                    std::invalid_argument);
}

TEST_CASE("autocorrelation counts residues exactly") {
    const CoefficientSequence rs3 = coefficients(ConstructionSpec::rudin_shapiro(3));
    const auto eta = autocorrelation(rs3, 8, 4);
    REQUIRE(eta.size() == 5);
    CHECK(eta[0] == std::complex<double>(1.0, 0.0));
    CHECK(eta[1] == std::complex<double>(-0.125, 0.0));

    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(10));
    const auto measured = autocorrelation(rs, 1024, 16);
    for (std::size_t lag = 0; lag <= 16; ++lag) {
        const std::complex<double> reference =
            oracle_autocorrelation(rs, 1024, lag);
        // Both paths are exact integer arithmetic scaled by 1/N.
        CHECK(measured[lag].real() == reference.real());
        CHECK(measured[lag].imag() == reference.imag());
    }

    CHECK_THROWS_AS(static_cast<void>(autocorrelation(rs3, 8, 8)),
                    std::out_of_range);
}

TEST_CASE("complex-order autocorrelation matches the direct oracle") {
    const CoefficientSequence f3 = coefficients(ConstructionSpec::fourier(3, 5));
    const auto measured = autocorrelation(f3, f3.size(), 12);
    for (std::size_t lag = 0; lag <= 12; ++lag)
        CHECK(std::abs(measured[lag] -
                       oracle_autocorrelation(f3, f3.size(), lag)) < 1e-12);
}

TEST_CASE("periodogram separates flat sequences from the periodic control") {
    const UnitCircleGrid grid(256);

    const CoefficientSequence control = ones(64);
    const auto control_gram = periodogram(control, 64, grid);
    CHECK(control_gram[0] == 64.0);

    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(10));
    const auto gram = periodogram(rs, rs.size(), UnitCircleGrid(1024));
    const double cap = root_n_bound_constant(2) * root_n_bound_constant(2);
    for (double v : gram) {
        CHECK(v >= 0.0);
        CHECK(v <= cap);
    }
}

TEST_CASE("mean periodogram over a padded grid is one (Parseval)") {
    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(6));
    const UnitCircleGrid grid(256); // M = 4N
    const auto gram = periodogram(rs, 64, grid);
    double mean = 0.0;
    for (double v : gram)
        mean += v;
    mean /= static_cast<double>(grid.size);
    CHECK(std::abs(mean - 1.0) < 1e-6);

    const CoefficientSequence f3 = coefficients(ConstructionSpec::fourier(3, 3));
    const auto gram3 = periodogram(f3, 27, UnitCircleGrid(128));
    double mean3 = 0.0;
    for (double v : gram3)
        mean3 += v;
    mean3 /= 128.0;
    CHECK(std::abs(mean3 - 1.0) < 1e-6);
}

TEST_CASE("balance deficit is the modulus of the mean weight") {
    const CoefficientSequence rs3 = coefficients(ConstructionSpec::rudin_shapiro(3));
    CHECK(balance_deficit(rs3, 8) == 0.5);
    CHECK(balance_deficit(ones(1), 1) == 1.0);

    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(16));
    for (std::size_t n = 1; n <= rs.size(); n *= 2)
        CHECK(balance_deficit(rs, n) <=
              root_n_bound_constant(2) / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("bound_scan agrees with a direct sweep on a small case") {
    const CoefficientSequence rs4 = coefficients(ConstructionSpec::rudin_shapiro(4));
    const UnitCircleGrid grid(16);
    const BoundScan scan = bound_scan(rs4, 16, grid);
    CHECK(scan.level_ok);
    CHECK(scan.partial_ok);
    CHECK(scan.final_ok);

    // Direct oracle for the minimum level margin.
    double level_margin = 1e300;
    for (int j = 0; j < grid.size; ++j)
        for (int k = 0; k <= 4; ++k) {
            const std::size_t m = static_cast<std::size_t>(1) << k;
            const double v = std::abs(oracle_sum(rs4, m, grid.point(j)));
            level_margin = std::min(level_margin, level_bound(2, k) - v);
        }
    CHECK(std::abs(scan.level_margin - level_margin) < 1e-9);

    // Direct check that no partial sum beats its bound anywhere.
    for (int j = 0; j < grid.size; ++j) {
        for (std::size_t m = 1; m <= 16; ++m) {
            int k = 0;
            while ((static_cast<std::size_t>(1) << k) < m)
                ++k;
            const double v = std::abs(oracle_sum(rs4, m, grid.point(j)));
            CHECK(v <= partial_sum_bound(2, k) + 1e-6);
            CHECK(v <= root_n_bound_constant(2) * std::sqrt(static_cast<double>(m)) +
                           1e-6);
        }
    }
}

TEST_CASE("bound_scan passes for the order-3 family") {
    const CoefficientSequence f3 = coefficients(ConstructionSpec::fourier(3, 5));
    const BoundScan scan = bound_scan(f3, f3.size(), UnitCircleGrid(64));
    CHECK(scan.level_ok);
    CHECK(scan.partial_ok);
    CHECK(scan.final_ok);
}

TEST_CASE("spectral reports collect the window summary") {
    const CoefficientSequence rs = coefficients(ConstructionSpec::rudin_shapiro(8));
    const UnitCircleGrid grid(256);
    const SpectralReport report = build_spectral_report(rs, 256, grid, 16);

    CHECK(report.n_terms == 256);
    CHECK(report.autocorrelation_values[0] == std::complex<double>(1.0, 0.0));
    CHECK(report.root_n_constant == report.sup_abs / 16.0);
    CHECK(report.periodogram_values.size() == 256);
    for (double v : report.periodogram_values)
        CHECK(v >= 0.0);
    CHECK(report.root_n_profile.size() == 9); // 1, 2, ..., 128, 256
    CHECK(report.root_n_profile.back().first == 256);
    REQUIRE(report.bound_verdicts.size() == 4); // level bound applies at 2^8
    for (const BoundVerdict& v : report.bound_verdicts) {
        INFO(v.name);
        CHECK(v.pass);
    }
}

TEST_CASE("norm conservation on every grid point") {
    const UnitCircleGrid grid(64);
    for (int order : {2, 3}) {
        const int level = 3;
        const RecurrenceState state =
            run_recurrence(ConstructionSpec::fourier(order, level));
        const std::size_t n = state.length();
        std::vector<double> total(static_cast<std::size_t>(grid.size), 0.0);
        for (std::size_t j = 0; j < state.component_count(); ++j) {
            const auto spectrum = grid_spectrum(state.component_sequence(j), n, grid);
            for (int g = 0; g < grid.size; ++g)
                total[static_cast<std::size_t>(g)] +=
                    std::norm(spectrum[static_cast<std::size_t>(g)]);
        }
        const double expected = std::pow(static_cast<double>(order), level + 1);
        for (double v : total)
            CHECK(std::abs(v - expected) / expected < 1e-12);
    }
}
