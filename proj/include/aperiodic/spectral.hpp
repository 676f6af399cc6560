// spectral.hpp -- numerical side: exponential sums on the unit circle,
// sup-norm profiles via a discrete transform, autocorrelation by exact
// residue counting, periodogram, and the family bound constants.
//
// Transform convention throughout: grid point j of an M-point grid is
// x_j = exp(+2*pi*i*j/M), and transforms use the matching positive sign,
// X_j = sum_m eps_m exp(+2*pi*i*m*j/M).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aperiodic/alphabet.hpp"

namespace aperiodic {

/// Evaluation grid of M points on the unit circle, x_j = exp(2*pi*i*j/M).
/// Powers of two take the fast transform path.
struct UnitCircleGrid {
    int size;

    explicit UnitCircleGrid(int m) : size(m) {
        if (m < 8)
            throw std::invalid_argument("grid: need at least 8 points");
    }

    std::complex<double> point(int j) const {
        long long r = j % size;
        if (r < 0)
            r += size;
        return unit_root(size, r);
    }
};

namespace detail {

inline bool is_power_of_two(std::size_t v) { return v && (v & (v - 1)) == 0; }

/// In-place radix-2 transform with positive exponent sign.
inline void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = unit_root(static_cast<int>(n), static_cast<long long>(k));
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len)
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> w = twiddle[k * step];
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + half] * w;
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
    }
}

/// Reference quadratic transform for grids that are not powers of two.
inline void dft_any(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    std::vector<std::complex<double>> twiddle(n);
    for (std::size_t k = 0; k < n; ++k)
        twiddle[k] = unit_root(static_cast<int>(n), static_cast<long long>(k));
    std::vector<std::complex<double>> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t s = 0; s < n; ++s)
            out[j] += a[s] * twiddle[(s * j) % n];
    a = std::move(out);
}

inline void transform(std::vector<std::complex<double>>& a) {
    if (is_power_of_two(a.size()))
        fft_pow2(a);
    else
        dft_any(a);
}

} // namespace detail

/// X_j = sum_{m=1}^{N} eps_m x_j^m for every grid point at once. The terms
/// are folded into M slots by m mod M (x_j^m only depends on m mod M), so
/// one M-point transform serves any N.
inline std::vector<std::complex<double>> grid_spectrum(const CoefficientSequence& seq,
                                                       std::size_t n_terms,
                                                       const UnitCircleGrid& grid) {
    if (n_terms < 1 || n_terms > seq.size())
        throw std::out_of_range("grid_spectrum: N out of range 1..|sequence|");
    const std::size_t m = static_cast<std::size_t>(grid.size);
    std::vector<std::complex<double>> table(static_cast<std::size_t>(seq.order()));
    for (int r = 0; r < seq.order(); ++r)
        table[static_cast<std::size_t>(r)] = unit_root(seq.order(), r);
    const auto& exponents = seq.exponents();
    std::vector<std::complex<double>> folded(m, 0.0);
    for (std::size_t i = 0; i < n_terms; ++i)
        folded[(i + 1) % m] += table[exponents[i]];
    detail::transform(folded);
    return folded;
}

/// Horner evaluation of sum_{m=1}^{N} eps_m x^m. The point must lie on the
/// unit circle (to 1e-12).
inline std::complex<double> exp_sum(const CoefficientSequence& seq,
                                    std::size_t n_terms,
                                    std::complex<double> x) {
    if (n_terms < 1 || n_terms > seq.size())
        throw std::out_of_range("exp_sum: N out of range 1..|sequence|");
    if (std::abs(std::abs(x) - 1.0) > 1e-12)
        throw std::invalid_argument("exp_sum: point is off the unit circle");
    std::complex<double> acc = 0.0;
    for (std::size_t i = n_terms; i-- > 0;)
        acc = acc * x + seq.value(i);
    return acc * x;
}

struct SupProfile {
    double sup_abs = 0.0;
    int argmax = 0;
};

/// Maximum modulus of the exponential sum over the grid; a grid maximum is a
/// certified lower bound for the continuum sup. Ties keep the first index.
inline SupProfile sup_profile(const CoefficientSequence& seq, std::size_t n_terms,
                              const UnitCircleGrid& grid) {
    const std::vector<std::complex<double>> spectrum =
        grid_spectrum(seq, n_terms, grid);
    SupProfile out;
    for (int j = 0; j < grid.size; ++j) {
        const double v = std::abs(spectrum[static_cast<std::size_t>(j)]);
        if (v > out.sup_abs) {
            out.sup_abs = v;
            out.argmax = j;
        }
    }
    return out;
}

/// C_N = sup|S_N| / sqrt(N) for each requested window length.
inline std::vector<std::pair<std::uint64_t, double>> root_n_constants(
    const CoefficientSequence& seq, const std::vector<std::uint64_t>& n_list,
    const UnitCircleGrid& grid) {
    if (n_list.empty())
        throw std::invalid_argument("root_n_constants: empty N list");
    std::vector<std::pair<std::uint64_t, double>> out;
    out.reserve(n_list.size());
    for (std::uint64_t n : n_list) {
        const SupProfile p = sup_profile(seq, static_cast<std::size_t>(n), grid);
        out.emplace_back(n, p.sup_abs / std::sqrt(static_cast<double>(n)));
    }
    return out;
}

/// eta_N(m) = (1/N) sum_{r=1}^{N-m} eps_{r+m} conj(eps_r) for m = 0..max_lag.
/// Products of roots of unity are counted per residue class, so the result
/// is an exact integer combination divided by N and reproduces bit-identically.
inline std::vector<std::complex<double>> autocorrelation(const CoefficientSequence& seq,
                                                         std::size_t n_terms,
                                                         std::size_t max_lag) {
    if (n_terms < 1 || n_terms > seq.size())
        throw std::out_of_range("autocorrelation: N out of range 1..|sequence|");
    if (max_lag >= n_terms)
        throw std::out_of_range("autocorrelation: max lag must be < N");
    const int order = seq.order();
    const auto& e = seq.exponents();
    std::vector<std::complex<double>> out;
    out.reserve(max_lag + 1);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(order));
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t r = 0; r + lag < n_terms; ++r) {
            int d = e[r + lag] - e[r];
            if (d < 0)
                d += order;
            ++counts[static_cast<std::size_t>(d)];
        }
        std::complex<double> acc = 0.0;
        for (int d = 0; d < order; ++d)
            acc += static_cast<double>(counts[static_cast<std::size_t>(d)]) *
                   unit_root(order, d);
        out.push_back(acc / static_cast<double>(n_terms));
    }
    return out;
}

/// I_N(theta_j) = |S_N(x_j)|^2 / N over the grid.
inline std::vector<double> periodogram(const CoefficientSequence& seq,
                                       std::size_t n_terms,
                                       const UnitCircleGrid& grid) {
    const std::vector<std::complex<double>> spectrum =
        grid_spectrum(seq, n_terms, grid);
    std::vector<double> out(spectrum.size());
    for (std::size_t j = 0; j < spectrum.size(); ++j)
        out[j] = std::norm(spectrum[j]) / static_cast<double>(n_terms);
    return out;
}

/// |mean of the first N weights|, from exact residue counts.
inline double balance_deficit(const CoefficientSequence& seq, std::size_t n_terms) {
    if (n_terms < 1 || n_terms > seq.size())
        throw std::out_of_range("balance_deficit: N out of range 1..|sequence|");
    const int order = seq.order();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(order), 0);
    for (std::size_t i = 0; i < n_terms; ++i)
        ++counts[static_cast<std::size_t>(seq.exponent(i))];
    std::complex<double> acc = 0.0;
    for (int d = 0; d < order; ++d)
        acc += static_cast<double>(counts[static_cast<std::size_t>(d)]) *
               unit_root(order, d);
    return std::abs(acc) / static_cast<double>(n_terms);
}

// Family bound constants, all functions of the order n alone (the binary
// family is the n = 2 case).

/// |P_k| <= n^{(k+1)/2} at level k.
inline double level_bound(int order, int level) {
    return std::pow(static_cast<double>(order),
                    0.5 * (static_cast<double>(level) + 1.0));
}

/// Partial sums with n^{k-1} < m <= n^k stay below (n + sqrt(n)) n^{k/2}.
inline double partial_sum_bound(int order, int level) {
    const double n = static_cast<double>(order);
    return (n + std::sqrt(n)) * std::pow(n, 0.5 * static_cast<double>(level));
}

/// |S_N| <= n(1 + sqrt(n)) sqrt(N) for every N.
inline double root_n_bound_constant(int order) {
    const double n = static_cast<double>(order);
    return n * (1.0 + std::sqrt(n));
}

/// Exhaustive sweep of every partial sum m = 1..N against the level bound
/// (at m = n^k), the per-level partial-sum bound, and the root-N constant
/// bound, at every grid point. Violations are decided on squared moduli
/// (pass means |S| <= bound + 1e-6); reported margins are evaluated at the
/// tightest point by ratio.
struct BoundScan {
    bool level_ok = true;
    double level_margin = 0.0;        // min over levels/grid of bound - |S|
    bool partial_ok = true;
    double partial_margin = 0.0;      // bound - |S| at the tightest ratio
    std::uint64_t partial_worst_m = 0;
    int partial_worst_j = 0;
    bool final_ok = true;
    double final_margin = 0.0;        // C sqrt(m) - |S| at the tightest ratio
    std::uint64_t final_worst_m = 0;
    int final_worst_j = 0;
};

struct BoundVerdict {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

/// Spectral summary of one window: sup profile, root-N table at the powers
/// of the order, autocorrelation, periodogram, balance, and the family bound
/// verdicts. eta(0) is exactly 1 and the periodogram is nonnegative.
struct SpectralReport {
    std::uint64_t n_terms = 0;
    double sup_abs = 0.0;
    int argmax = 0;
    double root_n_constant = 0.0;
    std::vector<std::pair<std::uint64_t, double>> root_n_profile;
    std::vector<std::complex<double>> autocorrelation_values;
    std::vector<double> periodogram_values;
    double periodogram_max = 0.0;
    int periodogram_argmax = 0;
    double balance = 0.0;
    std::vector<BoundVerdict> bound_verdicts;
};

inline SpectralReport build_spectral_report(const CoefficientSequence& seq,
                                            std::size_t n_terms,
                                            const UnitCircleGrid& grid,
                                            std::size_t max_lag) {
    SpectralReport report;
    report.n_terms = n_terms;

    const int order = seq.order();
    const SupProfile sup = sup_profile(seq, n_terms, grid);
    report.sup_abs = sup.sup_abs;
    report.argmax = sup.argmax;
    const double sqrt_n = std::sqrt(static_cast<double>(n_terms));
    report.root_n_constant = sup.sup_abs / sqrt_n;

    std::vector<std::uint64_t> windows;
    for (std::uint64_t w = 1; w < n_terms; w *= static_cast<std::uint64_t>(order))
        windows.push_back(w);
    windows.push_back(n_terms);
    report.root_n_profile = root_n_constants(seq, windows, grid);

    report.autocorrelation_values = autocorrelation(seq, n_terms, max_lag);
    report.periodogram_values = periodogram(seq, n_terms, grid);
    for (int j = 0; j < grid.size; ++j)
        if (report.periodogram_values[static_cast<std::size_t>(j)] >
            report.periodogram_max) {
            report.periodogram_max =
                report.periodogram_values[static_cast<std::size_t>(j)];
            report.periodogram_argmax = j;
        }
    report.balance = balance_deficit(seq, n_terms);

    const double slack = 1e-6;
    auto add_verdict = [&report, slack](const std::string& name, double measured,
                                        double bound) {
        BoundVerdict v;
        v.name = name;
        v.measured = measured;
        v.bound = bound;
        v.margin = bound - measured;
        v.pass = measured <= bound + slack;
        report.bound_verdicts.push_back(std::move(v));
    };
    {
        std::uint64_t p = 1;
        int k = 0;
        while (p < n_terms) {
            p *= static_cast<std::uint64_t>(order);
            ++k;
        }
        if (p == n_terms)
            add_verdict("level_bound", sup.sup_abs, level_bound(order, k));
    }
    const double c_family = root_n_bound_constant(order);
    add_verdict("root_n_bound", sup.sup_abs, c_family * sqrt_n);
    add_verdict("periodogram_bound", report.periodogram_max, c_family * c_family);
    add_verdict("balance_bound", report.balance, c_family / sqrt_n);
    return report;
}

inline BoundScan bound_scan(const CoefficientSequence& seq, std::size_t n_terms,
                            const UnitCircleGrid& grid) {
    if (n_terms < 1 || n_terms > seq.size())
        throw std::out_of_range("bound_scan: N out of range 1..|sequence|");
    const int order = seq.order();
    const double slack = 1e-6;

    // Precompute the level index k(m) = smallest k with n^k >= m, the
    // matching squared partial bound, and the positions m = n^k.
    std::vector<int> level_of(n_terms + 1, 0);
    std::vector<std::uint64_t> power_positions{1};
    {
        std::uint64_t p = 1;
        int k = 0;
        for (std::size_t m = 1; m <= n_terms; ++m) {
            if (static_cast<std::uint64_t>(m) > p) {
                p *= static_cast<std::uint64_t>(order);
                ++k;
                power_positions.push_back(p);
            }
            level_of[m] = k;
        }
    }
    const int max_level = level_of[n_terms];
    std::vector<double> partial_bound_sq(static_cast<std::size_t>(max_level) + 1);
    for (int k = 0; k <= max_level; ++k) {
        const double b = partial_sum_bound(order, k) + slack;
        partial_bound_sq[static_cast<std::size_t>(k)] = b * b;
    }
    const double c_final = root_n_bound_constant(order);
    std::vector<double> final_threshold_sq(n_terms + 1, 0.0);
    for (std::size_t m = 1; m <= n_terms; ++m) {
        const double b = c_final * std::sqrt(static_cast<double>(m)) + slack;
        final_threshold_sq[m] = b * b;
    }

    const std::vector<std::complex<double>> values = seq.values();

    BoundScan scan;
    double level_margin = std::numeric_limits<double>::infinity();
    double partial_ratio_max = -1.0; // |S|^2 / bound^2
    double final_ratio_max = -1.0;   // |S|^2 / m
    double partial_worst_abs = 0.0, partial_worst_bound = 0.0;
    double final_worst_abs = 0.0, final_worst_c = 0.0;

    for (int j = 0; j < grid.size; ++j) {
        const std::complex<double> x = grid.point(j);
        std::complex<double> power = 1.0;
        std::complex<double> sum = 0.0;
        std::size_t next_power_index = 0;
        for (std::size_t m = 1; m <= n_terms; ++m) {
            power *= x;
            sum += values[m - 1] * power;
            const double norm_sq = std::norm(sum);
            const int k = level_of[m];
            if (norm_sq > partial_bound_sq[static_cast<std::size_t>(k)]) {
                scan.partial_ok = false;
            }
            const double ratio = norm_sq / (partial_bound_sq[static_cast<std::size_t>(k)]);
            if (ratio > partial_ratio_max) {
                partial_ratio_max = ratio;
                partial_worst_abs = std::sqrt(norm_sq);
                partial_worst_bound = partial_sum_bound(order, k);
                scan.partial_worst_m = m;
                scan.partial_worst_j = j;
            }
            if (norm_sq > final_threshold_sq[m]) {
                scan.final_ok = false;
            }
            const double fr = norm_sq / static_cast<double>(m);
            if (fr > final_ratio_max) {
                final_ratio_max = fr;
                final_worst_abs = std::sqrt(norm_sq);
                final_worst_c = c_final * std::sqrt(static_cast<double>(m));
                scan.final_worst_m = m;
                scan.final_worst_j = j;
            }
            if (next_power_index < power_positions.size() &&
                static_cast<std::uint64_t>(m) == power_positions[next_power_index]) {
                const double bound = level_bound(order, k);
                const double margin = bound - std::sqrt(norm_sq);
                level_margin = std::min(level_margin, margin);
                if (margin < -slack)
                    scan.level_ok = false;
                ++next_power_index;
            }
        }
    }

    scan.level_margin = level_margin;
    scan.partial_margin = partial_worst_bound - partial_worst_abs;
    scan.final_margin = final_worst_c - final_worst_abs;
    return scan;
}

} // namespace aperiodic
