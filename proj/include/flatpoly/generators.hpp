#pragma once

// Polynomial families under study (class B, Gauss-Fresnel, Hardy-Littlewood,
// spike perturbations, Blaschke partial sums) and van der Corput certificates
// for their sup-norm bounds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "flatpoly/errors.hpp"
#include "flatpoly/poly.hpp"

namespace flatpoly {

/// (1/sqrt(m)) (1 + z^{R_1} + ... + z^{R_{m-1}}) with strictly increasing
/// positive exponents.
struct ClassBSpec {
    int m = 0;                            // term count, >= 1
    std::vector<std::int64_t> exponents;  // R_1 < ... < R_{m-1}
};

inline TrigPoly class_b(const ClassBSpec& spec) {
    if (spec.m < 1 || static_cast<int>(spec.exponents.size()) != spec.m - 1)
        throw DomainError(Errc::EmptyPolynomial,
                          "class B spec needs m >= 1 and m-1 exponents");
    const double w = 1.0 / std::sqrt(static_cast<double>(spec.m));
    TrigPoly p = TrigPoly::constant(cplx{w, 0.0});
    std::int64_t prev = 0;
    for (std::int64_t r : spec.exponents) {
        if (r <= prev)
            throw DomainError(Errc::DuplicateExponent,
                              "class B exponents must be strictly increasing positive; offending " +
                                  std::to_string(r));
        p.set(r, cplx{w, 0.0});
        prev = r;
    }
    return p;
}

/// Consecutive-exponent class B polynomial (Dirichlet kernel scaled to unit
/// L2 norm): exponents 1..m-1.
inline TrigPoly class_b_consecutive(int m) {
    ClassBSpec s;
    s.m = m;
    for (int r = 1; r < m; ++r) s.exponents.push_back(r);
    return class_b(s);
}

/// G_n = (1/sqrt(n)) sum_{k=0}^{n-1} exp(pi i k^2 / n) z^k.
inline TrigPoly gauss_fresnel(int n) {
    if (n < 1) throw DomainError(Errc::EmptyPolynomial, "gauss_fresnel needs n >= 1");
    const double w = 1.0 / std::sqrt(static_cast<double>(n));
    TrigPoly p;
    for (int k = 0; k < n; ++k) {
        // reduce k^2 mod 2n first: exp(pi i k^2/n) has period 2n in k^2
        const std::int64_t q = (static_cast<std::int64_t>(k) * k) % (2 * static_cast<std::int64_t>(n));
        p.set(k, std::polar(w, std::numbers::pi * static_cast<double>(q) / static_cast<double>(n)));
    }
    return p;
}

/// H_n = (1/sqrt(n)) (1 + sum_{k=1}^{n-1} exp(2 pi i c k ln(k) / n) z^k).
/// The k = 0 term is the explicit leading 1 (ln 0 is undefined).
inline TrigPoly hardy_littlewood(int n, double c) {
    if (n < 2) throw DomainError(Errc::EmptyPolynomial, "hardy_littlewood needs n >= 2");
    if (c == 0.0)
        throw DomainError(Errc::DegenerateHLConstant,
                          "c = 0 collapses H_n to the Dirichlet kernel; use class_b");
    const double w = 1.0 / std::sqrt(static_cast<double>(n));
    TrigPoly p = TrigPoly::constant(cplx{w, 0.0});
    for (int k = 1; k < n; ++k) {
        const double phase = kTwoPi * c * static_cast<double>(k) * std::log(static_cast<double>(k)) /
                             static_cast<double>(n);
        p.set(k, std::polar(w, phase));
    }
    return p;
}

/// P = (1 + delta z^n)/sqrt(1+delta^2): the one-frequency perturbation of the
/// constant polynomial. |P|^2 = 1 + b(z^n + z^{-n}) with b = delta/(1+delta^2).
inline TrigPoly single_spike(std::int64_t n, double delta) {
    if (n < 1) throw DomainError(Errc::EmptyPolynomial, "single_spike needs n >= 1");
    if (!(delta > 0.0)) throw DomainError(Errc::EmptyPolynomial, "single_spike needs delta > 0");
    const double w = 1.0 / std::sqrt(1.0 + delta * delta);
    TrigPoly p = TrigPoly::constant(cplx{w, 0.0});
    p.set(n, cplx{delta * w, 0.0});
    return p;
}

/// Degree-d truncation of the Taylor series of prod (z - a_i)/(1 - conj(a_i) z)
/// about 0, by exact power-series division. Not renormalized; the L2 norm
/// tends to 1 as d grows.
inline TrigPoly blaschke_partial_sum(const std::vector<cplx>& zeros, int degree) {
    if (degree < 0) throw DomainError(Errc::EmptyPolynomial, "negative truncation degree");
    for (const cplx& a : zeros)
        if (!(std::abs(a) < 1.0))
            throw DomainError(Errc::ZeroNotInsideDisk,
                              "Blaschke zero with |a| >= 1");
    // numerator prod (z - a_i), denominator prod (1 - conj(a_i) z)
    std::vector<cplx> num{cplx{1.0, 0.0}}, den{cplx{1.0, 0.0}};
    for (const cplx& a : zeros) {
        std::vector<cplx> n2(num.size() + 1, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < num.size(); ++i) {
            n2[i] += num[i] * (-a);
            n2[i + 1] += num[i];
        }
        num = std::move(n2);
        std::vector<cplx> d2(den.size() + 1, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < den.size(); ++i) {
            d2[i] += den[i];
            d2[i + 1] += den[i] * (-std::conj(a));
        }
        den = std::move(d2);
    }
    // series coefficients: c_k = num_k - sum_{j=1..k} den_j c_{k-j}  (den_0 = 1)
    std::vector<cplx> series(static_cast<std::size_t>(degree) + 1, cplx{0.0, 0.0});
    for (int k = 0; k <= degree; ++k) {
        cplx v = k < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(k)] : cplx{0.0, 0.0};
        for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j)
            v -= den[static_cast<std::size_t>(j)] * series[static_cast<std::size_t>(k - j)];
        series[static_cast<std::size_t>(k)] = v;
    }
    TrigPoly p;
    for (int k = 0; k <= degree; ++k) p.set(k, series[static_cast<std::size_t>(k)]);
    return p;
}

/// Phase function families for the van der Corput lemma. Both have |f''|
/// monotone, so the lower bound rho is known in closed form.
struct VdcFunctionSpec {
    enum class Kind { Quadratic, XLogX };

    Kind kind = Kind::Quadratic;
    double theta = 0.0;  // linear phase
    double big_n = 1.0;  // quadratic: f = u*theta + u^2/(2N)
    double c = 0.0;      // xlogx: f = c*u*ln(u) + u*theta
    double a = 0.0, b = 0.0;

    static VdcFunctionSpec quadratic(double theta, double n, double a, double b) {
        VdcFunctionSpec s;
        s.kind = Kind::Quadratic;
        s.theta = theta;
        s.big_n = n;
        s.a = a;
        s.b = b;
        return s;
    }

    static VdcFunctionSpec xlogx(double c, double theta, double a, double b) {
        VdcFunctionSpec s;
        s.kind = Kind::XLogX;
        s.c = c;
        s.theta = theta;
        s.a = a;
        s.b = b;
        return s;
    }

    double f(double u) const {
        if (kind == Kind::Quadratic) return u * theta + u * u / (2.0 * big_n);
        return c * u * std::log(u) + u * theta;
    }

    double fprime(double u) const {
        if (kind == Kind::Quadratic) return theta + u / big_n;
        return c * (std::log(u) + 1.0) + theta;
    }

    /// min |f''| over [a,b] in closed form.
    double rho() const {
        if (kind == Kind::Quadratic) {
            if (!(big_n > 0.0))
                throw DomainError(Errc::SecondDerivativeNotBoundedAway, "quadratic spec needs N > 0");
            return 1.0 / big_n;
        }
        if (c == 0.0 || !(b > 0.0) || !(a >= 1.0))
            throw DomainError(Errc::SecondDerivativeNotBoundedAway,
                              "xlogx spec needs c != 0, a >= 1, b finite");
        return std::abs(c) / b;
    }
};

struct VdcCertificate {
    double lhs = 0.0;  // |sum_{a <= n <= b} exp(2 pi i f(n))| by direct summation
    double rhs = 0.0;  // (|f'(b)-f'(a)| + 2)(4/sqrt(rho) + 3)
    bool holds = false;
};

/// Direct verification instance of the van der Corput estimate: lhs <= rhs
/// is a theorem whenever rho genuinely bounds |f''| below on [a,b].
inline VdcCertificate vdc_certificate(const VdcFunctionSpec& spec) {
    const double rho = spec.rho();
    VdcCertificate cert;
    cplx acc{0.0, 0.0};
    for (std::int64_t n = static_cast<std::int64_t>(std::ceil(spec.a));
         n <= static_cast<std::int64_t>(std::floor(spec.b)); ++n)
        acc += std::polar(1.0, kTwoPi * spec.f(static_cast<double>(n)));
    cert.lhs = std::abs(acc);
    cert.rhs = (std::abs(spec.fprime(spec.b) - spec.fprime(spec.a)) + 2.0) * (4.0 / std::sqrt(rho) + 3.0);
    cert.holds = cert.lhs <= cert.rhs;
    return cert;
}

/// Upper bound for sup |H_n| assembled from per-block van der Corput
/// estimates over the dyadic partition {2^j, ..., min(2^{j+1}-1, n-1)} of
/// k = 1..n-1, plus 1 for the k = 0 term, divided by sqrt(n). The phase of
/// H_n is f(u) = (c/n) u ln(u) + u theta, so rho_j = (|c|/n)/2^{j+1}. The
/// bound is independent of theta (f'(b)-f'(a) cancels the linear part).
inline double hl_dyadic_certificate(int n, double c, double theta) {
    if (n < 2) throw DomainError(Errc::EmptyPolynomial, "hl_dyadic_certificate needs n >= 2");
    if (c == 0.0) throw DomainError(Errc::DegenerateHLConstant, "c = 0 has no vdc certificate");
    const double c_eff = c / static_cast<double>(n);
    double total = 1.0;  // the leading 1
    for (std::int64_t lo = 1; lo <= n - 1; lo <<= 1) {
        const std::int64_t hi = std::min<std::int64_t>(2 * lo - 1, n - 1);
        VdcFunctionSpec block = VdcFunctionSpec::xlogx(c_eff, theta, static_cast<double>(lo),
                                                       static_cast<double>(hi));
        // rho from the open upper end 2^{j+1}: a valid lower bound since
        // |f''| = |c_eff|/u is decreasing
        const double rho = std::abs(c_eff) / static_cast<double>(2 * lo);
        total += (std::abs(block.fprime(block.b) - block.fprime(block.a)) + 2.0) *
                 (4.0 / std::sqrt(rho) + 3.0);
    }
    return total / std::sqrt(static_cast<double>(n));
}

/// Upper bound for sup |G_n| from the single-interval van der Corput
/// estimate with f(u) = u theta + u^2/(2n) on [0, n-1]; theta-independent.
inline double gauss_vdc_bound(int n) {
    if (n < 1) throw DomainError(Errc::EmptyPolynomial, "gauss_vdc_bound needs n >= 1");
    const double dn = static_cast<double>(n);
    const double dfp = (dn - 1.0) / dn;
    return (dfp + 2.0) * (4.0 * std::sqrt(dn) + 3.0) / std::sqrt(dn);
}

}  // namespace flatpoly
