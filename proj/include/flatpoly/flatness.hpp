#pragma once

// Scalar flatness diagnostics: eps, L, N, the Gram matrix of the centered
// characters z^{n_k} - conj(b_k) under |P|^2 dz, the entry sum r(P) computed
// by two independent routes, the sandwich 2N(1-eps)-eps <= r <= 2N(1+eps)+eps,
// sequence tables, and the Egorov-style subsequence selector.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatpoly/errors.hpp"
#include "flatpoly/poly.hpp"

namespace flatpoly {

/// Correlation matrix of z^{n_k} - conj(b_k), signed indices
/// k in {-N..-1, 1..N} in ascending order; entry (k,l) is
/// fourier_coeff(|P|^2, n_l - n_k) - conj(b_k) b_l.
struct GramMatrix {
    std::vector<std::int64_t> positive_exponents;  // n_1 < ... < n_N
    std::vector<cplx> entries;                     // row-major, dim x dim

    std::size_t half() const { return positive_exponents.size(); }
    std::size_t dim() const { return 2 * half(); }

    /// Row/column r = 0..2N-1 maps to signed index -N..-1, 1..N.
    std::int64_t exponent_of(std::size_t row) const {
        const std::size_t n = half();
        return row < n ? -positive_exponents[n - 1 - row] : positive_exponents[row - n];
    }

    const cplx& at(std::size_t i, std::size_t j) const { return entries[i * dim() + j]; }

    double max_hermitian_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
        return worst;
    }

    double min_eigenvalue() const {
        const auto n = static_cast<Eigen::Index>(dim());
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                m(i, j) = at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }
};

namespace detail {

inline cplx signed_coeff(const ModulusSpectrum& s, std::int64_t signed_index_exponent) {
    return s.coeff(signed_index_exponent);
}

/// b at a signed row exponent: b_{-k} = conj(b_k).
inline cplx b_of(const ModulusSpectrum& s, std::int64_t exponent) { return s.coeff(exponent); }

}  // namespace detail

inline GramMatrix gram_matrix_from_spectrum(const ModulusSpectrum& s) {
    if (s.count() == 0)
        throw DomainError(Errc::ConstantModulus, "|P| is constant; the Gram matrix is empty");
    GramMatrix g;
    g.positive_exponents.reserve(s.positive.size());
    for (const auto& [n, b] : s.positive) g.positive_exponents.push_back(n);
    const std::size_t dim = g.dim();
    g.entries.resize(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::int64_t nk = g.exponent_of(i);
        const cplx bk = detail::b_of(s, nk);
        for (std::size_t j = 0; j < dim; ++j) {
            const std::int64_t nl = g.exponent_of(j);
            const cplx bl = detail::b_of(s, nl);
            g.entries[i * dim + j] = s.coeff(nl - nk) - std::conj(bk) * bl;
        }
    }
    return g;
}

inline GramMatrix gram_matrix(const TrigPoly& p) { return gram_matrix_from_spectrum(squared_modulus(p)); }

namespace detail {

/// Route 1: entrywise sum of the Gram matrix, without materializing it.
inline double gram_sum_entrywise(const ModulusSpectrum& s) {
    std::vector<std::int64_t> exps;
    exps.reserve(2 * s.positive.size());
    for (auto it = s.positive.rbegin(); it != s.positive.rend(); ++it) exps.push_back(-it->first);
    for (const auto& [n, b] : s.positive) exps.push_back(n);
    cplx acc{0.0, 0.0};
    for (std::int64_t nk : exps) {
        const cplx bk = b_of(s, nk);
        for (std::int64_t nl : exps) acc += s.coeff(nl - nk) - std::conj(bk) * b_of(s, nl);
    }
    if (std::abs(acc.imag()) > 1e-10)
        throw DomainError(Errc::GramIdentityViolation,
                          "entrywise Gram sum has imaginary part " + std::to_string(acc.imag()));
    return acc.real();
}

/// Route 2: r = integral |f|^2 |P|^2 dz - L^2 with f = sum_k z^{n_k}; the
/// integral is the exact finite convolution sum_d w(d) c(-d) where w is the
/// autocorrelation of the exponent set.
inline double gram_sum_identity(const ModulusSpectrum& s) {
    std::vector<std::int64_t> exps;
    exps.reserve(2 * s.positive.size());
    for (auto it = s.positive.rbegin(); it != s.positive.rend(); ++it) exps.push_back(-it->first);
    for (const auto& [n, b] : s.positive) exps.push_back(n);
    std::map<std::int64_t, double> w;
    for (std::int64_t u : exps)
        for (std::int64_t v : exps) w[u - v] += 1.0;
    cplx integral{0.0, 0.0};
    for (const auto& [d, count] : w) integral += count * s.coeff(-d);
    if (std::abs(integral.imag()) > 1e-10)
        throw DomainError(Errc::GramIdentityViolation,
                          "integral route has imaginary part " + std::to_string(integral.imag()));
    const double L = s.offcenter_sum();
    return integral.real() - L * L;
}

inline double gram_sum_r_from_spectrum(const ModulusSpectrum& s) {
    if (s.count() == 0)
        throw DomainError(Errc::ConstantModulus, "|P| is constant; r is undefined");
    const double r1 = gram_sum_entrywise(s);
    const double r2 = gram_sum_identity(s);
    if (std::abs(r1 - r2) > 1e-9)
        throw DomainError(Errc::GramIdentityViolation,
                          "entrywise r = " + std::to_string(r1) + " vs identity r = " +
                              std::to_string(r2));
    return r1;
}

}  // namespace detail

/// Sum of the entries of the Gram matrix, validated against the independent
/// identity r = integral |f|^2 |P|^2 dz - L^2 (agreement within 1e-9).
inline double gram_sum_r(const TrigPoly& p) {
    return detail::gram_sum_r_from_spectrum(squared_modulus(p));
}

struct FlatnessReport {
    double eps = 0.0;  // grid sup of | |P|^2 - 1 | (a lower bound for the true sup)
    double L = 0.0;    // sum b_k = |P(1)|^2 - 1
    int N = 0;
    std::optional<double> r;
    std::optional<double> r_over_N;
    std::optional<double> N_over_L2;     // absent when |L| <= 1e-9
    double l1_deviation = 0.0;           // (1/M) sum | |P(z_t)| - 1 |
    double measure_deviation = 0.0;      // fraction of grid with | |P(z_t)| - 1 | > tau
    double tau = 0.0;
    bool bounds_ok = true;               // 2N(1-eps)-eps - slack <= r <= 2N(1+eps)+eps + slack
    std::int64_t grid_m = 0;
};

/// The grid eps undershoots the true sup, so the sandwich check carries a
/// documented slack of 1e-6.
inline constexpr double kSandwichSlack = 1e-6;

inline FlatnessReport flatness_report(const TrigPoly& p, const Grid& g, double tau) {
    if (std::abs(p.l2_norm() - 1.0) > 1e-10)
        throw DomainError(Errc::NotUnitNorm,
                          "flatness diagnostics need unit L2 norm; got " + std::to_string(p.l2_norm()));
    FlatnessReport rep;
    rep.tau = tau;
    rep.grid_m = g.M;
    const ModulusSpectrum s = squared_modulus(p);
    rep.N = s.count();
    rep.L = s.offcenter_sum();
    const auto vals = eval_grid(p, g);
    double worst = 0.0, l1 = 0.0;
    std::int64_t over = 0;
    for (const cplx& v : vals) {
        const double m = std::abs(v);
        worst = std::max(worst, std::abs(m * m - 1.0));
        const double dev = std::abs(m - 1.0);
        l1 += dev;
        if (dev > tau) ++over;
    }
    rep.eps = worst;
    rep.l1_deviation = l1 / static_cast<double>(g.M);
    rep.measure_deviation = static_cast<double>(over) / static_cast<double>(g.M);
    if (rep.N >= 1) {
        const double r = detail::gram_sum_r_from_spectrum(s);
        rep.r = r;
        rep.r_over_N = r / static_cast<double>(rep.N);
        const double lo = 2.0 * rep.N * (1.0 - rep.eps) - rep.eps - kSandwichSlack;
        const double hi = 2.0 * rep.N * (1.0 + rep.eps) + rep.eps + kSandwichSlack;
        rep.bounds_ok = lo <= r && r <= hi;
    }
    if (std::abs(rep.L) > 1e-9) rep.N_over_L2 = static_cast<double>(rep.N) / (rep.L * rep.L);
    return rep;
}

inline FlatnessReport flatness_report(const TrigPoly& p, double tau = 0.1) {
    return flatness_report(p, Grid::default_for(p), tau);
}

struct SweepRow {
    int j = 0;  // 1-based position in the sequence
    int m = 0;  // number of nonzero coefficients
    int N = 0;
    double L = 0.0;
    double eps = 0.0;
    std::optional<double> r, r_over_N, N_over_L2, r_over_2N;
};

struct SweepSummary {
    std::optional<double> max_N_over_L2;
    bool r_over_N_nondecreasing = true;
    bool r_over_N_nonincreasing = true;
    std::vector<double> r_over_2N;  // Corollary-style ultraflatness tracker
};

struct RatioTable {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

/// Per-element diagnostics with default grids; tau only feeds the underlying
/// reports and does not appear in the table.
inline RatioTable ratio_diagnostics(const std::vector<TrigPoly>& seq, double tau = 0.1) {
    RatioTable table;
    std::optional<double> prev_ratio;
    int j = 1;
    for (const TrigPoly& p : seq) {
        const FlatnessReport rep = flatness_report(p, tau);
        SweepRow row;
        row.j = j++;
        row.m = static_cast<int>(p.term_count());
        row.N = rep.N;
        row.L = rep.L;
        row.eps = rep.eps;
        row.r = rep.r;
        row.r_over_N = rep.r_over_N;
        row.N_over_L2 = rep.N_over_L2;
        if (rep.r && rep.N >= 1) {
            row.r_over_2N = *rep.r / (2.0 * rep.N);
            table.summary.r_over_2N.push_back(*row.r_over_2N);
        }
        if (rep.N_over_L2) {
            if (!table.summary.max_N_over_L2 || *rep.N_over_L2 > *table.summary.max_N_over_L2)
                table.summary.max_N_over_L2 = rep.N_over_L2;
        }
        if (row.r_over_N) {
            if (prev_ratio) {
                if (*row.r_over_N < *prev_ratio) table.summary.r_over_N_nondecreasing = false;
                if (*row.r_over_N > *prev_ratio) table.summary.r_over_N_nonincreasing = false;
            }
            prev_ratio = row.r_over_N;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

struct EgorovPick {
    std::size_t index = 0;  // 0-based position in the input sequence
    double measure = 0.0;   // grid measure of { | 1 - |P| | >= 2^{-k} } at pick k
};

/// Greedy subsequence extraction: pick k takes the first later element whose
/// deviation set { t : |1 - |P(z_t)|| >= 2^{-k} } has grid measure <= 2^{-k};
/// stops when no later element qualifies. An empty or short result signals
/// no almost-everywhere flat behavior.
inline std::vector<EgorovPick> egorov_select(const std::vector<TrigPoly>& seq, const Grid& g) {
    std::vector<EgorovPick> picks;
    std::size_t start = 0;
    int k = 1;
    while (start < seq.size()) {
        bool found = false;
        for (std::size_t j = start; j < seq.size(); ++j) {
            const double threshold = std::ldexp(1.0, -k);
            const auto vals = eval_grid(seq[j], g);
            std::int64_t over = 0;
            for (const cplx& v : vals)
                if (std::abs(1.0 - std::abs(v)) >= threshold) ++over;
            const double measure = static_cast<double>(over) / static_cast<double>(g.M);
            if (measure <= threshold) {
                picks.push_back(EgorovPick{j, measure});
                start = j + 1;
                ++k;
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    return picks;
}

}  // namespace flatpoly
