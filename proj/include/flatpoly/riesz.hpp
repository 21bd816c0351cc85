#pragma once

// Dissociation checking, greedy scale selection, partial generalized Riesz
// products with exactly stabilized Fourier coefficients, the L1 trace of
// prod |P_j|, and the divergence criterion sum min{1, sqrt(N_j/r_j)} that
// forces singularity of the weak limit.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatpoly/errors.hpp"
#include "flatpoly/flatness.hpp"
#include "flatpoly/poly.hpp"

namespace flatpoly {

struct ScaledFactor {
    TrigPoly poly;
    std::int64_t scale = 1;  // effective factor is poly(z^scale)
};

struct ScaledFamily {
    std::vector<ScaledFactor> factors;
};

/// SquaredModulus expands prod |P_j(z^{l_j})|^2 (the Riesz-product sense:
/// coefficient stabilization needs it); Plain expands prod P_j(z^{l_j})
/// directly (the textbook (1+z)(1+z^2) examples).
enum class DissociationMode { SquaredModulus, Plain };

struct DissociationResult {
    bool ok = true;
    struct Collision {
        int factor_a = 0;  // 1-based indices of two factors whose choices differ
        int factor_b = 0;
        std::int64_t exponent = 0;
    };
    std::optional<Collision> collision;
};

namespace detail {

/// Exponent choices contributed by one factor (difference exponents of
/// |P|^2 including 0, or the plain term exponents).
inline std::vector<std::int64_t> factor_exponents(const TrigPoly& p, DissociationMode mode) {
    std::vector<std::int64_t> out;
    if (mode == DissociationMode::Plain) {
        for (const auto& [e, c] : p.terms()) out.push_back(e);
        return out;
    }
    const ModulusSpectrum s = squared_modulus(p);
    for (auto it = s.positive.rbegin(); it != s.positive.rend(); ++it) out.push_back(-it->first);
    out.push_back(0);
    for (const auto& [n, b] : s.positive) out.push_back(n);
    return out;
}

struct Selection {
    // nonzero choices only: (1-based factor index, chosen exponent)
    std::vector<std::pair<int, std::int64_t>> choices;
};

}  // namespace detail

/// Formal expansion of the family product over integer exponents; ok iff
/// every achieved exponent comes from exactly one selection of per-factor
/// exponents. Reports the first collision with the pair of factor indices
/// where the two colliding selections differ.
inline DissociationResult is_dissociated(const ScaledFamily& fam,
                                         DissociationMode mode = DissociationMode::SquaredModulus,
                                         std::size_t term_cap = 2'000'000) {
    std::map<std::int64_t, detail::Selection> achieved;
    achieved.emplace(0, detail::Selection{});
    int index = 0;
    for (const ScaledFactor& f : fam.factors) {
        ++index;
        const auto exps = detail::factor_exponents(f.poly, mode);
        std::map<std::int64_t, detail::Selection> next;
        for (const auto& [e, sel] : achieved) {
            for (std::int64_t d : exps) {
                const std::int64_t target = e + f.scale * d;
                detail::Selection s2 = sel;
                if (d != 0 || mode == DissociationMode::Plain) s2.choices.emplace_back(index, d);
                auto [it, inserted] = next.try_emplace(target, std::move(s2));
                if (!inserted) {
                    // two selections hit the same exponent; s2 was not
                    // consumed, so compare it against the stored witness to
                    // locate the first factor where the choices differ
                    const auto& a = it->second.choices;
                    const auto& b = s2.choices;
                    DissociationResult res;
                    res.ok = false;
                    DissociationResult::Collision col;
                    col.exponent = target;
                    std::size_t i = 0;
                    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
                    col.factor_a = i < a.size() ? a[i].first : (i < b.size() ? b[i].first : index);
                    col.factor_b = index;
                    res.collision = col;
                    return res;
                }
                if (next.size() > term_cap)
                    throw DomainError(Errc::ExpansionTooLarge,
                                      "formal expansion exceeds " + std::to_string(term_cap) + " terms");
            }
        }
        achieved = std::move(next);
    }
    return DissociationResult{};
}

/// Greedy scale choice: l_1 = 1, then the smallest integer exceeding twice
/// the accumulated two-sided difference span of the product so far (and
/// strictly above the previous scale). Guarantees dissociation of the
/// squared moduli, asserted before returning.
inline ScaledFamily choose_scales(const std::vector<TrigPoly>& polys) {
    if (polys.empty()) throw DomainError(Errc::EmptyPolynomial, "choose_scales needs at least one polynomial");
    ScaledFamily fam;
    std::int64_t accumulated_radius = 0;
    std::int64_t prev_scale = 0;
    for (const TrigPoly& p : polys) {
        const std::int64_t radius = p.span();  // max |difference exponent| of |P|^2
        std::int64_t scale = fam.factors.empty() ? 1 : 2 * accumulated_radius + 1;
        scale = std::max(scale, prev_scale + 1);
        fam.factors.push_back(ScaledFactor{p, scale});
        accumulated_radius += scale * radius;
        prev_scale = scale;
    }
    const DissociationResult res = is_dissociated(fam);
    if (!res.ok)
        throw DomainError(Errc::ExpansionTooLarge,
                          "greedy scales unexpectedly fail dissociation at exponent " +
                              std::to_string(res.collision->exponent));
    return fam;
}

/// Partial product state: exact coefficient map of prod_{j<=depth}
/// |P_j(z^{l_j})|^2, grid samples of prod |P_j| (square root of the density),
/// and the L1 trace per depth (entry 0 is the empty product).
struct RieszProductState {
    ScaledFamily family;
    int depth = 0;
    std::map<std::int64_t, cplx> coeffs;
    std::map<std::int64_t, int> first_touch;  // depth at which a coefficient appeared
    std::vector<double> density;              // prod |P_j| at grid points
    std::vector<double> l1_trace;             // depths 0..depth
    std::int64_t grid_m = 0;
    double grid_offset = 0.0;
    bool stabilization_exact = true;  // no coefficient changed after first touch
};

/// Extends the exact coefficient map and the grid density through the first
/// `depth` factors. Factors must have unit L2 norm (centers are then treated
/// as exactly 1, which is what makes stabilization bit-exact under
/// dissociation). The density is evaluated per factor at angles
/// 2 pi t l_j / M; the huge product polynomial is never formed for the grid.
inline RieszProductState partial_product(const ScaledFamily& fam, int depth, const Grid& g,
                                         std::size_t term_cap = 2'000'000) {
    if (depth < 0 || depth > static_cast<int>(fam.factors.size()))
        throw DomainError(Errc::SeriesLengthMismatch,
                          "depth " + std::to_string(depth) + " out of range for " +
                              std::to_string(fam.factors.size()) + " factors");
    if (depth >= 1) {
        const ScaledFactor& top = fam.factors[static_cast<std::size_t>(depth - 1)];
        if (g.M < 8 * top.scale * top.poly.span())
            throw DomainError(Errc::GridTooCoarse,
                              "need M >= 8*l_n*span = " +
                                  std::to_string(8 * top.scale * top.poly.span()));
    }
    RieszProductState st;
    st.family = fam;
    st.depth = depth;
    st.grid_m = g.M;
    st.grid_offset = g.offset;
    st.coeffs[0] = cplx{1.0, 0.0};
    st.first_touch[0] = 0;
    st.density.assign(static_cast<std::size_t>(g.M), 1.0);
    st.l1_trace.push_back(1.0);
    for (int n = 1; n <= depth; ++n) {
        const ScaledFactor& f = fam.factors[static_cast<std::size_t>(n - 1)];
        const ModulusSpectrum s = squared_modulus(f.poly);
        if (std::abs(s.center - 1.0) > 1e-12)
            throw DomainError(Errc::NotUnitNorm,
                              "Riesz factors need unit L2 norm; center = " + std::to_string(s.center));
        // full signed difference list of this factor
        std::vector<std::pair<std::int64_t, cplx>> offsets;
        offsets.reserve(2 * s.positive.size());
        for (auto it = s.positive.rbegin(); it != s.positive.rend(); ++it)
            offsets.emplace_back(-it->first, std::conj(it->second));
        for (const auto& [nk, bk] : s.positive) offsets.emplace_back(nk, bk);
        // new contributions from nonzero choices; the center contributes the
        // old map unchanged (center == 1 exactly for unit-norm factors)
        std::map<std::int64_t, cplx> fresh;
        for (const auto& [e, v] : st.coeffs)
            for (const auto& [d, b] : offsets) {
                auto [it, inserted] = fresh.try_emplace(e + f.scale * d, v * b);
                if (!inserted) it->second += v * b;
            }
        if (st.coeffs.size() + fresh.size() > term_cap)
            throw DomainError(Errc::ExpansionTooLarge,
                              "partial product exceeds " + std::to_string(term_cap) + " terms");
        for (const auto& [e, v] : fresh) {
            auto [it, inserted] = st.coeffs.try_emplace(e, v);
            if (inserted) {
                st.first_touch[e] = n;
            } else {
                // a collision with an already stabilized coefficient: the
                // family is not dissociated
                it->second += v;
                st.stabilization_exact = false;
            }
        }
        // extend the density and the trace
        const double step = kTwoPi / static_cast<double>(g.M);
        const std::int64_t k = ((f.scale % g.M) + g.M) % g.M;
        std::int64_t idx = 0;
        double trace = 0.0;
        for (std::int64_t t = 0; t < g.M; ++t) {
            const double theta = static_cast<double>(idx) * step +
                                 static_cast<double>(f.scale) * g.offset * step;
            const auto u = static_cast<std::size_t>(t);
            st.density[u] *= std::abs(f.poly.eval_angle(theta));
            trace += st.density[u];
            idx += k;
            if (idx >= g.M) idx -= g.M;
        }
        st.l1_trace.push_back(trace / static_cast<double>(g.M));
    }
    return st;
}

struct StabilizedCoeff {
    cplx value{0.0, 0.0};
    int depth = 0;  // depth of first appearance
};

/// Coefficients with |exponent| <= window, annotated with first-touch depth.
/// Requires the exact stabilization property to have held while building.
inline std::map<std::int64_t, StabilizedCoeff> stabilized_coeffs(const RieszProductState& st,
                                                                 std::int64_t window) {
    if (!st.stabilization_exact)
        throw DomainError(Errc::StabilizationViolated,
                          "family is not dissociated; coefficients did not stabilize");
    std::map<std::int64_t, StabilizedCoeff> out;
    for (const auto& [e, v] : st.coeffs) {
        if (e < -window || e > window) continue;
        if (v == cplx{0.0, 0.0}) continue;
        out.emplace(e, StabilizedCoeff{v, st.first_touch.at(e)});
    }
    return out;
}

/// The L1 trace of prod |P_j| per depth. A trace decreasing toward 0 is
/// evidence of singularity of the limit measure; stabilization at a positive
/// value is evidence of an absolutely continuous part.
inline const std::vector<double>& l1_of_sqrt_density(const RieszProductState& st) {
    return st.l1_trace;
}

struct DivergenceConfig {
    double a_threshold = 10.0;   // A_n must reach this
    double tail_fraction = 0.25; // last quarter of the terms ...
    double tail_share = 0.05;    // ... must carry at least this share of A_n
};

struct SingularityDiagnostic {
    enum class Verdict { DivergentCriterionMet, Inconclusive };

    std::vector<double> s;             // s_j = min{1, sqrt(N_j/r_j)}
    std::vector<double> partial_sums;  // A_n = sum_{j<=n} s_j
    std::vector<double> lambda;
    std::vector<double> series5;  // partial sums of lambda_j s_j
    std::vector<double> series6;  // partial sums of lambda_j^2 s_j^2 N_j / L_j^2
    Verdict verdict = Verdict::Inconclusive;
    DivergenceConfig config;
};

inline const char* verdict_name(SingularityDiagnostic::Verdict v) {
    return v == SingularityDiagnostic::Verdict::DivergentCriterionMet ? "DivergentCriterionMet"
                                                                      : "Inconclusive";
}

/// Divergence witness for sum s_j from finitely many reports. The verdict
/// thresholds are a finite-sample heuristic (configuration, not
/// mathematics) and all output flags them as such. The default lambda is
/// the Abel-Dini style choice lambda_j = s_j / A_j; it is user-overridable
/// and does not reproduce the nonconstructive choice in general.
inline SingularityDiagnostic singularity_diagnostic(
    const std::vector<FlatnessReport>& reports,
    const std::optional<std::vector<double>>& lambda_opt = std::nullopt,
    DivergenceConfig config = DivergenceConfig{}) {
    SingularityDiagnostic diag;
    diag.config = config;
    if (lambda_opt && lambda_opt->size() != reports.size())
        throw DomainError(Errc::SeriesLengthMismatch,
                          "lambda has " + std::to_string(lambda_opt->size()) + " entries for " +
                              std::to_string(reports.size()) + " reports");
    double a = 0.0;
    for (const FlatnessReport& rep : reports) {
        if (rep.N < 1 || !rep.r || !(*rep.r > 0.0))
            throw DomainError(Errc::InvalidGramSum, "report with N < 1 or r <= 0");
        const double s = std::min(1.0, std::sqrt(static_cast<double>(rep.N) / *rep.r));
        diag.s.push_back(s);
        a += s;
        diag.partial_sums.push_back(a);
    }
    for (std::size_t j = 0; j < diag.s.size(); ++j)
        diag.lambda.push_back(lambda_opt ? (*lambda_opt)[j] : diag.s[j] / diag.partial_sums[j]);
    double s5 = 0.0, s6 = 0.0;
    for (std::size_t j = 0; j < diag.s.size(); ++j) {
        s5 += diag.lambda[j] * diag.s[j];
        diag.series5.push_back(s5);
        const double l = reports[j].L;
        if (std::abs(l) > 1e-9) {
            s6 += diag.lambda[j] * diag.lambda[j] * diag.s[j] * diag.s[j] *
                  static_cast<double>(reports[j].N) / (l * l);
        } else {
            s6 = std::numeric_limits<double>::infinity();
        }
        diag.series6.push_back(s6);
    }
    const std::size_t n = diag.s.size();
    if (n > 0 && diag.partial_sums.back() >= config.a_threshold) {
        const auto tail_count = static_cast<std::size_t>(
            std::ceil(config.tail_fraction * static_cast<double>(n)));
        double tail = 0.0;
        for (std::size_t j = n - std::max<std::size_t>(tail_count, 1); j < n; ++j) tail += diag.s[j];
        if (tail >= config.tail_share * diag.partial_sums.back())
            diag.verdict = SingularityDiagnostic::Verdict::DivergentCriterionMet;
    }
    return diag;
}

struct PeyriereSeries {
    std::vector<double> series5;
    std::vector<double> series6;
};

/// Partial sums of the two series that drive the singularity argument:
/// sum lambda_j s_j (must diverge) and sum lambda_j^2 s_j^2 N_j / L_j^2
/// (must stay bounded). Reported, not asserted; finite data cannot prove
/// divergence.
inline PeyriereSeries peyriere_series(const SingularityDiagnostic& diag,
                                      const std::vector<FlatnessReport>& reports) {
    if (diag.s.size() != reports.size())
        throw DomainError(Errc::SeriesLengthMismatch,
                          "diagnostic has " + std::to_string(diag.s.size()) + " terms for " +
                              std::to_string(reports.size()) + " reports");
    return PeyriereSeries{diag.series5, diag.series6};
}

}  // namespace flatpoly
