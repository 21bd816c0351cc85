#pragma once

// Inner/outer (Beurling) factorization of analytic polynomials: P = B * Q
// with B a finite Blaschke product (|B| = 1 on the circle) and Q zero-free
// in the open disk, Q(0) > 0. Roots come from a deterministic Aberth
// simultaneous iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "flatpoly/errors.hpp"
#include "flatpoly/poly.hpp"

namespace flatpoly {

namespace detail {

/// Dense coefficients of the analytic part after factoring z^{min exponent}:
/// returns (d, a) with p(z) = z^d * sum a_k z^k, a[0] != 0.
inline std::pair<std::int64_t, std::vector<cplx>> dense_analytic_part(const TrigPoly& p) {
    if (p.empty()) throw DomainError(Errc::EmptyPolynomial, "no roots of the zero polynomial");
    const std::int64_t d = p.min_exponent();
    std::vector<cplx> a(static_cast<std::size_t>(p.span()) + 1, cplx{0.0, 0.0});
    for (const auto& [e, c] : p.terms()) a[static_cast<std::size_t>(e - d)] = c;
    return {d, a};
}

inline cplx horner(const std::vector<cplx>& a, cplx x) {
    cplx v{0.0, 0.0};
    for (std::size_t i = a.size(); i-- > 0;) v = v * x + a[i];
    return v;
}

inline cplx horner_derivative(const std::vector<cplx>& a, cplx x) {
    cplx v{0.0, 0.0};
    for (std::size_t i = a.size(); i-- > 1;) v = v * x + a[i] * static_cast<double>(i);
    return v;
}

// Error-free transformations for a twice-working-precision Horner: residuals
// at well-converged roots sit below the plain double evaluation floor, so
// the 1e-10 * max|coefficient| residual contract needs the compensated value.
struct TwoFold {
    double hi = 0.0, lo = 0.0;
};

inline TwoFold two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline TwoFold two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

struct CplxTwoFold {
    cplx hi{0.0, 0.0}, lo{0.0, 0.0};
};

inline CplxTwoFold cplx_two_prod(cplx u, cplx v) {
    const TwoFold rr = two_prod(u.real(), v.real());
    const TwoFold ii = two_prod(u.imag(), v.imag());
    const TwoFold ri = two_prod(u.real(), v.imag());
    const TwoFold ir = two_prod(u.imag(), v.real());
    const TwoFold re = two_sum(rr.hi, -ii.hi);
    const TwoFold im = two_sum(ri.hi, ir.hi);
    return {cplx{re.hi, im.hi}, cplx{re.lo + rr.lo - ii.lo, im.lo + ri.lo + ir.lo}};
}

inline CplxTwoFold cplx_two_sum(cplx u, cplx v) {
    const TwoFold re = two_sum(u.real(), v.real());
    const TwoFold im = two_sum(u.imag(), v.imag());
    return {cplx{re.hi, im.hi}, cplx{re.lo, im.lo}};
}

/// Compensated Horner evaluation: value accurate as if computed in roughly
/// twice the working precision.
inline cplx horner_compensated(const std::vector<cplx>& a, cplx x) {
    cplx v{0.0, 0.0};
    cplx err{0.0, 0.0};
    for (std::size_t i = a.size(); i-- > 0;) {
        const CplxTwoFold prod = cplx_two_prod(v, x);
        const CplxTwoFold sum = cplx_two_sum(prod.hi, a[i]);
        v = sum.hi;
        err = err * x + (prod.lo + sum.lo);
    }
    return v + err;
}

/// Aberth-Ehrlich simultaneous iteration. Deterministic start: all guesses
/// on a circle of radius 1 + max|a_i|/|a_lead| (a Cauchy-type root bound),
/// angles offset to avoid symmetry traps. Cap of 500 sweeps, residual target
/// 1e-10 * max|a_i|.
inline std::vector<cplx> aberth_roots(const std::vector<cplx>& a) {
    const std::size_t deg = a.size() - 1;
    if (deg == 0) return {};
    double max_coeff = 0.0;
    for (const cplx& c : a) max_coeff = std::max(max_coeff, std::abs(c));
    const double lead = std::abs(a.back());
    const double radius = 1.0 + max_coeff / lead;
    std::vector<cplx> x(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        const double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(deg) +
                           std::numbers::pi / (2.0 * static_cast<double>(deg)) + 0.26;
        x[k] = std::polar(radius, ang);
    }
    const double target = 1e-10 * max_coeff;
    std::vector<double> resid(deg, 0.0);
    for (int sweep = 0; sweep < 500; ++sweep) {
        double worst = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            const cplx pv = horner(a, x[k]);
            resid[k] = std::abs(pv);
            worst = std::max(worst, resid[k]);
            if (resid[k] == 0.0) continue;
            cplx dv = horner_derivative(a, x[k]);
            if (dv == cplx{0.0, 0.0}) dv = cplx{1e-30, 0.0};
            const cplx newton = pv / dv;
            cplx rep{0.0, 0.0};
            for (std::size_t j = 0; j < deg; ++j) {
                if (j == k) continue;
                cplx diff = x[k] - x[j];
                if (diff == cplx{0.0, 0.0}) diff = cplx{1e-12, 1e-12};
                rep += cplx{1.0, 0.0} / diff;
            }
            const cplx denom = cplx{1.0, 0.0} - newton * rep;
            x[k] -= std::abs(denom) < 1e-30 ? newton : newton / denom;
        }
        if (worst <= 0.1 * target) break;
    }
    // cluster nearly coincident approximants (perturbed multiple roots) to
    // their centroid
    std::vector<bool> used(deg, false);
    std::vector<cplx> roots;
    roots.reserve(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        if (used[k]) continue;
        std::vector<std::size_t> cluster{k};
        for (std::size_t j = k + 1; j < deg; ++j)
            if (!used[j] && std::abs(x[k] - x[j]) < 1e-7) {
                cluster.push_back(j);
                used[j] = true;
            }
        cplx centroid{0.0, 0.0};
        for (std::size_t j : cluster) centroid += x[j];
        centroid /= static_cast<double>(cluster.size());
        for (std::size_t j = 0; j < cluster.size(); ++j) roots.push_back(centroid);
    }
    // Newton polish with the compensated evaluation, keeping a step only
    // when it improves the residual (multiple roots stall, which is fine:
    // their clustered residual is already below target)
    for (cplx& r : roots) {
        for (int step = 0; step < 3; ++step) {
            const cplx pv = horner_compensated(a, r);
            const cplx dv = horner_derivative(a, r);
            if (dv == cplx{0.0, 0.0}) break;
            const cplx candidate = r - pv / dv;
            if (std::abs(horner_compensated(a, candidate)) < std::abs(pv))
                r = candidate;
            else
                break;
        }
    }
    std::vector<double> final_resid;
    final_resid.reserve(deg);
    bool ok = true;
    for (const cplx& r : roots) {
        const double res = std::abs(horner_compensated(a, r));
        final_resid.push_back(res);
        if (res > target) ok = false;
    }
    if (!ok) {
        const double worst = *std::max_element(final_resid.begin(), final_resid.end());
        char msg[128];
        std::snprintf(msg, sizeof(msg), "residual %.3e above target %.3e after 500 sweeps", worst,
                      target);
        throw RootFindingError(msg, final_resid);
    }
    std::sort(roots.begin(), roots.end(), [](const cplx& u, const cplx& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    return roots;
}

}  // namespace detail

/// All roots of the analytic part of p (with multiplicity), plus min-exponent
/// many roots at 0 when p(0) = 0.
inline std::vector<cplx> find_roots(const TrigPoly& p) {
    auto [d, a] = detail::dense_analytic_part(p);
    std::vector<cplx> roots = detail::aberth_roots(a);
    if (d > 0) roots.insert(roots.begin(), static_cast<std::size_t>(d), cplx{0.0, 0.0});
    return roots;
}

struct InnerOuterFactorization {
    std::vector<cplx> inside;   // E: roots strictly inside the disk
    std::vector<cplx> outside;  // F: roots on or outside the circle
    cplx gamma{1.0, 0.0};       // |gamma| = 1, fixes Q(0) > 0
    cplx leading{0.0, 0.0};     // leading coefficient of the analytic part
    std::int64_t monomial_degree = 0;  // d: inner factor carries z^d
    TrigPoly outer;             // Q
    double root_tolerance = 1e-8;
    bool boundary_root = false;  // some root within root_tolerance of the circle

    double q0() const { return outer.coeff(0).real(); }

    /// B(e^{i theta}) = gamma e^{i d theta} prod (z - a)/(1 - conj(a) z), a in E.
    cplx inner_eval(double theta) const {
        const cplx z = std::polar(1.0, theta);
        cplx v = gamma * std::polar(1.0, static_cast<double>(monomial_degree) * theta);
        for (const cplx& alpha : inside) v *= (z - alpha) / (cplx{1.0, 0.0} - std::conj(alpha) * z);
        return v;
    }
};

/// Beurling factorization of an analytic polynomial. Roots within
/// root_tolerance of the circle are assigned to F and the result is flagged
/// boundary_root (Jensen checks are not meaningful there). The factorization
/// is verified on a grid before returning.
inline InnerOuterFactorization inner_outer(const TrigPoly& p, double root_tolerance = 1e-8) {
    if (p.empty()) throw DomainError(Errc::EmptyPolynomial, "cannot factor the zero polynomial");
    if (!p.is_analytic())
        throw DomainError(Errc::NotAnalytic, "inner/outer factorization needs exponents >= 0");
    auto [d, a] = detail::dense_analytic_part(p);
    InnerOuterFactorization f;
    f.monomial_degree = d;
    f.leading = a.back();
    f.root_tolerance = root_tolerance;
    for (const cplx& alpha : detail::aberth_roots(a)) {
        const double m = std::abs(alpha);
        if (std::abs(m - 1.0) < root_tolerance) {
            f.outside.push_back(alpha);
            f.boundary_root = true;
        } else if (m < 1.0) {
            f.inside.push_back(alpha);
        } else {
            f.outside.push_back(alpha);
        }
    }
    // unrotated Q = lead * prod_E (1 - conj(a) z) * prod_F (z - a)
    TrigPoly q = TrigPoly::constant(f.leading);
    for (const cplx& alpha : f.inside) {
        TrigPoly factor = TrigPoly::constant(cplx{1.0, 0.0});
        factor.set(1, -std::conj(alpha));
        q = q * factor;
    }
    for (const cplx& alpha : f.outside) {
        TrigPoly factor = TrigPoly::constant(-alpha);
        factor.set(1, cplx{1.0, 0.0});
        q = q * factor;
    }
    // gamma from the phase of the unrotated constant term (never zero: a
    // root at 0 would lie in E)
    const cplx q0 = q.coeff(0);
    const double q0_abs = std::abs(q0);
    if (!(q0_abs > 0.0))
        throw DomainError(Errc::FactorizationInconsistent, "outer constant term vanished");
    f.gamma = q0 / q0_abs;
    f.outer = q.scaled(std::conj(f.gamma));
    // the rotated constant term is |q0| exactly; snap away rounding dust so
    // Q(0) is a positive real
    f.outer.set(0, cplx{q0_abs, 0.0});

    // verify |B| = 1 and |P| = |Q| on a grid
    const Grid g = Grid::default_for(p);
    const auto pv = eval_grid(p, g);
    const auto qv = eval_grid(f.outer, g);
    double max_p = 0.0;
    for (const cplx& v : pv) max_p = std::max(max_p, std::abs(v));
    double worst_pq = 0.0, worst_b = 0.0;
    const std::int64_t stride = std::max<std::int64_t>(1, g.M / 1024);
    for (std::int64_t t = 0; t < g.M; t += stride)
        worst_b = std::max(worst_b, std::abs(std::abs(f.inner_eval(g.angle(t))) - 1.0));
    for (std::int64_t t = 0; t < g.M; ++t) {
        const auto i = static_cast<std::size_t>(t);
        worst_pq = std::max(worst_pq, std::abs(std::abs(pv[i]) - std::abs(qv[i])));
    }
    if (worst_b > 1e-8)
        throw DomainError(Errc::FactorizationInconsistent,
                          "inner factor deviates from unit modulus by " + std::to_string(worst_b));
    if (worst_pq > 1e-7 * max_p)
        throw DomainError(Errc::FactorizationInconsistent,
                          "| |P| - |Q| | reaches " + std::to_string(worst_pq));
    return f;
}

/// (1/M) sum log |p(z_t)|. Grid values below 1e-13 in modulus make the
/// integral numerically singular and are an error; callers may retry on a
/// shifted grid.
inline double log_integral(const TrigPoly& p, const Grid& g) {
    const auto vals = eval_grid(p, g);
    double s = 0.0;
    for (const cplx& v : vals) {
        const double m = std::abs(v);
        if (m < 1e-13)
            throw DomainError(Errc::LogSingularOnGrid, "|p| below 1e-13 at a grid point");
        s += std::log(m);
    }
    return s / static_cast<double>(g.M);
}

struct OuterTrackEntry {
    double q0 = 0.0;   // constant term of the outer part
    double eps = 0.0;  // grid sup of ||P|^2 - 1|
    bool boundary_root = false;
};

/// Q_j(0) per element; for an ultraflat input sequence the values must tend
/// to 1 (they stay away from 1 for class B sequences).
inline std::vector<OuterTrackEntry> outer_constant_track(const std::vector<TrigPoly>& seq) {
    std::vector<OuterTrackEntry> out;
    out.reserve(seq.size());
    for (const TrigPoly& p : seq) {
        InnerOuterFactorization f = inner_outer(p);
        OuterTrackEntry e;
        e.q0 = f.q0();
        e.boundary_root = f.boundary_root;
        const Grid g = Grid::default_for(p);
        const auto vals = eval_grid(p, g);
        for (const cplx& v : vals) e.eps = std::max(e.eps, std::abs(std::norm(v) - 1.0));
        out.push_back(e);
    }
    return out;
}

}  // namespace flatpoly
