#pragma once

// Sparse Laurent (trigonometric) polynomials on the unit circle with exact
// integer exponents, uniform evaluation grids, and the autocorrelation
// expansion |P|^2 = center + sum_k b_k z^{n_k} that the diagnostics consume.
// Coefficients are kept exact in a sparse map; grids are used only for
// sup/L1/log estimates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "flatpoly/errors.hpp"

namespace flatpoly {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline bool is_power_of_two(std::int64_t m) { return m > 0 && (m & (m - 1)) == 0; }

inline std::int64_t next_power_of_two(std::int64_t m) {
    std::int64_t p = 1;
    while (p < m) p <<= 1;
    return p;
}

/// Sparse Laurent polynomial: integer exponents (possibly negative) to
/// nonzero complex coefficients. Immutable use after construction is the
/// intended pattern; all mutators keep the no-zero-coefficient invariant.
class TrigPoly {
public:
    using TermMap = std::map<std::int64_t, cplx>;

    TrigPoly() = default;

    static TrigPoly monomial(std::int64_t exponent, cplx coeff) {
        TrigPoly p;
        p.add(exponent, coeff);
        return p;
    }

    static TrigPoly constant(cplx c) { return monomial(0, c); }

    /// Builds from (exponent, coefficient) pairs; repeated exponents are an
    /// error (the JSON interchange requires unique exponents).
    static TrigPoly from_terms(const std::vector<std::pair<std::int64_t, cplx>>& terms) {
        TrigPoly p;
        for (const auto& [e, c] : terms) {
            if (p.terms_.count(e))
                throw DomainError(Errc::DuplicateExponent,
                                  "exponent " + std::to_string(e) + " appears twice");
            p.set(e, c);
        }
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    cplx coeff(std::int64_t e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
    }

    /// Overwrites the coefficient at e; zero erases.
    void set(std::int64_t e, cplx c) {
        if (c == cplx{0.0, 0.0})
            terms_.erase(e);
        else
            terms_[e] = c;
    }

    /// Accumulates into the coefficient at e.
    void add(std::int64_t e, cplx c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != cplx{0.0, 0.0}) terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second == cplx{0.0, 0.0}) terms_.erase(it);
    }

    std::int64_t min_exponent() const {
        if (terms_.empty()) throw DomainError(Errc::EmptyPolynomial, "min_exponent of zero polynomial");
        return terms_.begin()->first;
    }

    std::int64_t max_exponent() const {
        if (terms_.empty()) throw DomainError(Errc::EmptyPolynomial, "max_exponent of zero polynomial");
        return terms_.rbegin()->first;
    }

    std::int64_t span() const { return terms_.empty() ? 0 : max_exponent() - min_exponent(); }

    bool is_analytic() const { return terms_.empty() || min_exponent() >= 0; }

    double l2_norm() const {
        double s = 0.0;
        for (const auto& [e, c] : terms_) s += std::norm(c);
        return std::sqrt(s);
    }

    /// P(e^{i theta}).
    cplx eval_angle(double theta) const {
        cplx acc{0.0, 0.0};
        for (const auto& [e, c] : terms_) acc += c * std::polar(1.0, static_cast<double>(e) * theta);
        return acc;
    }

    TrigPoly scaled(cplx s) const {
        TrigPoly out;
        if (s == cplx{0.0, 0.0}) return out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
        return out;
    }

    /// P(z^s) for integer s >= 1; exponents scale, coefficients untouched.
    TrigPoly compose_power(std::int64_t s) const {
        TrigPoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e * s, c);
        return out;
    }

    /// conj(P)(z) on the circle: conjugate coefficients at negated exponents.
    TrigPoly conj_reflect() const {
        TrigPoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(-e, std::conj(c));
        return out;
    }

    TrigPoly operator+(const TrigPoly& rhs) const {
        TrigPoly out = *this;
        for (const auto& [e, c] : rhs.terms_) out.add(e, c);
        return out;
    }

    TrigPoly operator*(const TrigPoly& rhs) const {
        TrigPoly out;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : rhs.terms_) out.add(e1 + e2, c1 * c2);
        return out;
    }

    /// Drops coefficients with |c| < threshold (exact storage by default,
    /// pruning only on explicit request).
    TrigPoly pruned(double threshold) const {
        TrigPoly out;
        for (const auto& [e, c] : terms_)
            if (std::abs(c) >= threshold) out.terms_.emplace(e, c);
        return out;
    }

private:
    TermMap terms_;
};

inline TrigPoly normalize_l2(const TrigPoly& p) {
    if (p.empty()) throw DomainError(Errc::EmptyPolynomial, "cannot normalize the zero polynomial");
    return p.scaled(cplx{1.0 / p.l2_norm(), 0.0});
}

inline double l2_norm(const TrigPoly& p) { return p.l2_norm(); }

/// Uniform sampling grid on the circle: angles 2*pi*(t + offset)/M,
/// t = 0..M-1. offset = 0 is the standard grid z = exp(2*pi*i*t/M); a
/// fractional offset gives a root-avoiding shifted grid for log integrals.
struct Grid {
    std::int64_t M;
    double offset = 0.0;

    explicit Grid(std::int64_t m, double off = 0.0) : M(m), offset(off) {}

    double angle(std::int64_t t) const { return kTwoPi * (static_cast<double>(t) + offset) / static_cast<double>(M); }

    /// Default resolution for sup/L1 estimation: a power of two, at least
    /// 4096 and at least 8*span+8.
    static Grid default_for(const TrigPoly& p) {
        std::int64_t need = 8 * p.span() + 8;
        return Grid(std::max<std::int64_t>(4096, next_power_of_two(need)));
    }
};

/// Samples P on the grid. Integer phase stepping keeps k*theta reduced
/// mod 2*pi exactly, so large exponents do not lose precision.
inline std::vector<cplx> eval_grid(const TrigPoly& p, const Grid& g) {
    std::vector<cplx> vals(static_cast<std::size_t>(g.M), cplx{0.0, 0.0});
    const double step = kTwoPi / static_cast<double>(g.M);
    for (const auto& [e, c] : p.terms()) {
        // phase index of e*(t+offset) mod M, kept as integer part + fixed offset
        const std::int64_t k = ((e % g.M) + g.M) % g.M;
        const double phase_off = static_cast<double>(e) * g.offset * step;
        std::int64_t idx = 0;
        for (std::int64_t t = 0; t < g.M; ++t) {
            vals[static_cast<std::size_t>(t)] += c * std::polar(1.0, static_cast<double>(idx) * step + phase_off);
            idx += k;
            if (idx >= g.M) idx -= g.M;
        }
    }
    return vals;
}

/// (1/M) sum |P(z_t)|.
inline double l1_modulus(const TrigPoly& p, const Grid& g) {
    const auto vals = eval_grid(p, g);
    double s = 0.0;
    for (const cplx& v : vals) s += std::abs(v);
    return s / static_cast<double>(g.M);
}

/// Grid maximum of |P|; a lower bound for the true sup norm. The grid must
/// resolve the degree (M >= 4*span+4).
inline double sup_modulus(const TrigPoly& p, const Grid& g) {
    if (g.M < 4 * p.span() + 4)
        throw DomainError(Errc::GridTooCoarse,
                          "sup estimation needs M >= 4*span+4 = " + std::to_string(4 * p.span() + 4) +
                              ", got " + std::to_string(g.M));
    const auto vals = eval_grid(p, g);
    double s = 0.0;
    for (const cplx& v : vals) s = std::max(s, std::abs(v));
    return s;
}

/// The expansion |P|^2 = center + sum_{k != 0} b_k z^{n_k}. Only positive
/// exponents are stored; b_{-k} = conj(b_k) is implied, which keeps the
/// Hermitian symmetry exact by construction.
struct ModulusSpectrum {
    double center = 0.0;
    std::vector<std::pair<std::int64_t, cplx>> positive;  // (n_k, b_k), n_k ascending

    int count() const { return static_cast<int>(positive.size()); }

    /// Coefficient at any signed exponent (0 maps to center).
    cplx coeff(std::int64_t k) const {
        if (k == 0) return cplx{center, 0.0};
        const std::int64_t a = k > 0 ? k : -k;
        auto it = std::lower_bound(positive.begin(), positive.end(), a,
                                   [](const auto& pr, std::int64_t v) { return pr.first < v; });
        if (it == positive.end() || it->first != a) return cplx{0.0, 0.0};
        return k > 0 ? it->second : std::conj(it->second);
    }

    /// Real value of |P|^2 at angle theta.
    double eval_angle(double theta) const {
        double acc = center;
        for (const auto& [n, b] : positive) {
            const cplx w = std::polar(1.0, static_cast<double>(n) * theta);
            acc += 2.0 * (b.real() * w.real() - b.imag() * w.imag());
        }
        return acc;
    }

    /// L = sum of all off-center coefficients = |P(1)|^2 - 1 for unit norm.
    /// The imaginary part is zero by symmetry; summed as 2*Re(b_k) exactly.
    double offcenter_sum() const {
        double s = 0.0;
        for (const auto& [n, b] : positive) s += 2.0 * b.real();
        return s;
    }

    TrigPoly to_trigpoly() const {
        TrigPoly out = TrigPoly::constant(cplx{center, 0.0});
        for (const auto& [n, b] : positive) {
            out.set(n, b);
            out.set(-n, std::conj(b));
        }
        return out;
    }
};

/// Exact autocorrelation sum_{i,j} c_i conj(c_j) z^{e_i - e_j}. Entries with
/// |b_k| below the prune threshold are float-cancellation dust and dropped
/// (the count N must reflect genuinely nonzero coefficients).
inline ModulusSpectrum squared_modulus(const TrigPoly& p, double prune = 1e-13) {
    ModulusSpectrum s;
    for (const auto& [e, c] : p.terms()) s.center += std::norm(c);
    std::map<std::int64_t, cplx> pos;
    for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
        for (auto jt = p.terms().begin(); jt != it; ++jt) {
            // it->first > jt->first, so the difference is positive
            pos[it->first - jt->first] += it->second * std::conj(jt->second);
        }
    s.positive.reserve(pos.size());
    for (const auto& [n, b] : pos)
        if (std::abs(b) >= prune) s.positive.emplace_back(n, b);
    return s;
}

inline cplx fourier_coeff(const ModulusSpectrum& s, std::int64_t k) { return s.coeff(k); }

inline cplx fourier_coeff(const TrigPoly& p, std::int64_t k) { return p.coeff(k); }

}  // namespace flatpoly
