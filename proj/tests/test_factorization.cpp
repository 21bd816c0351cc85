#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "flatpoly/corpus.hpp"
#include "flatpoly/factorization.hpp"
#include "flatpoly/generators.hpp"
#include "oracles.hpp"

using namespace flatpoly;
using Catch::Approx;

namespace {

TrigPoly from_roots(const std::vector<cplx>& roots, cplx lead = cplx{1.0, 0.0}) {
    TrigPoly p = TrigPoly::constant(lead);
    for (const cplx& a : roots) {
        TrigPoly factor = TrigPoly::constant(-a);
        factor.set(1, cplx{1.0, 0.0});
        p = p * factor;
    }
    return p;
}

double max_coeff(const TrigPoly& p) {
    double m = 0.0;
    for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

TEST_CASE("find_roots basics") {
    SECTION("z^2 - 1") {
        TrigPoly p = TrigPoly::constant(cplx{-1.0, 0.0});
        p.set(2, cplx{1.0, 0.0});
        const auto roots = find_roots(p);
        REQUIRE(roots.size() == 2);
        REQUIRE(std::abs(roots[0] - cplx{-1.0, 0.0}) < 1e-10);
        REQUIRE(std::abs(roots[1] - cplx{1.0, 0.0}) < 1e-10);
    }

    SECTION("(1+z)/sqrt2 has the single root -1") {
        const auto roots = find_roots(class_b({2, {1}}));
        REQUIRE(roots.size() == 1);
        REQUIRE(std::abs(roots[0] - cplx{-1.0, 0.0}) < 1e-12);
    }

    SECTION("monomial z^5: five roots at the origin") {
        const auto roots = find_roots(TrigPoly::monomial(5, cplx{1.0, 0.0}));
        REQUIRE(roots.size() == 5);
        for (const cplx& r : roots) REQUIRE(r == cplx{0.0, 0.0});
    }

    SECTION("residuals meet the 1e-10 * max coefficient target") {
        SplitMix64 rng(31337);
        for (int trial = 0; trial < 30; ++trial) {
            const RootedPoly rp = random_rooted_poly(rng, 24);
            const auto roots = find_roots(rp.poly);
            REQUIRE(roots.size() == rp.roots.size());
            const double target = 1e-10 * max_coeff(rp.poly);
            for (const cplx& r : roots) {
                cplx acc{0.0, 0.0};
                for (const auto& [e, c] : rp.poly.terms())
                    acc += c * std::pow(r, static_cast<double>(e));
                REQUIRE(std::abs(acc) <= target);
            }
        }
    }
}

TEST_CASE("inner_outer worked cases") {
    SECTION("p = z is pure inner: Q = 1") {
        const auto f = inner_outer(TrigPoly::monomial(1, cplx{1.0, 0.0}));
        REQUIRE(f.monomial_degree == 1);
        REQUIRE(f.inside.empty());
        REQUIRE(f.outside.empty());
        REQUIRE(f.q0() == Approx(1.0).margin(1e-14));
        REQUIRE(f.outer.term_count() == 1);
    }

    SECTION("p = (z-2)/sqrt5 is already outer") {
        TrigPoly p = TrigPoly::constant(cplx{-2.0 / std::sqrt(5.0), 0.0});
        p.set(1, cplx{1.0 / std::sqrt(5.0), 0.0});
        const auto f = inner_outer(p);
        REQUIRE(f.inside.empty());
        REQUIRE(f.outside.size() == 1);
        REQUIRE(std::abs(f.outside[0] - cplx{2.0, 0.0}) < 1e-10);
        REQUIRE(f.q0() == Approx(2.0 / std::sqrt(5.0)).margin(1e-10));
        // Jensen oracle: integral log|z - a| dz = log|a| for |a| > 1
        const double expect = std::log(2.0 / std::sqrt(5.0));
        REQUIRE(log_integral(p, Grid(4096)) == Approx(expect).margin(2e-3));
        REQUIRE(std::log(f.q0()) == Approx(expect).margin(1e-10));
    }

    SECTION("p = s (1 - z/2)(z - 1/3): mixed root set") {
        TrigPoly a = TrigPoly::constant(cplx{1.0, 0.0});
        a.set(1, cplx{-0.5, 0.0});
        TrigPoly b = TrigPoly::constant(cplx{-1.0 / 3.0, 0.0});
        b.set(1, cplx{1.0, 0.0});
        const TrigPoly p = normalize_l2(a * b);
        const auto f = inner_outer(p);
        REQUIRE(f.inside.size() == 1);
        REQUIRE(std::abs(f.inside[0] - cplx{1.0 / 3.0, 0.0}) < 1e-10);
        REQUIRE(f.outside.size() == 1);
        REQUIRE(std::abs(f.outside[0] - cplx{2.0, 0.0}) < 1e-10);
        // |P| = |Q| on the grid (direct expansion oracle)
        const Grid g(4096);
        const auto pv = eval_grid(p, g);
        const auto qv = eval_grid(f.outer, g);
        double mp = 0.0;
        for (const cplx& v : pv) mp = std::max(mp, std::abs(v));
        for (std::size_t t = 0; t < pv.size(); ++t)
            REQUIRE(std::abs(std::abs(pv[t]) - std::abs(qv[t])) <= 1e-7 * mp);
    }
}

TEST_CASE("log_integral") {
    SECTION("constant 1 integrates to 0") {
        REQUIRE(log_integral(TrigPoly::constant(cplx{1.0, 0.0}), Grid(4096)) ==
                Approx(0.0).margin(1e-15));
    }

    SECTION("(1+z)/sqrt2 on a root-avoiding shifted grid") {
        // classical integral log|1+z| dz = 0, so the value is -log sqrt2
        const TrigPoly p = class_b({2, {1}});
        const Grid shifted(4096, 0.5);
        REQUIRE(log_integral(p, shifted) == Approx(-0.5 * std::log(2.0)).margin(2e-3));
    }

    SECTION("root on the standard grid raises LogSingularOnGrid") {
        const TrigPoly p = class_b({2, {1}});  // root at z = -1, hit when M is even
        REQUIRE_THROWS_AS(log_integral(p, Grid(4096)), DomainError);
        try {
            log_integral(p, Grid(4096));
        } catch (const DomainError& e) {
            REQUIRE(e.code() == Errc::LogSingularOnGrid);
        }
    }
}

TEST_CASE("outer_constant_track") {
    SECTION("constant sequence tracks 1") {
        const std::vector<TrigPoly> seq(4, TrigPoly::constant(cplx{1.0, 0.0}));
        for (const auto& e : outer_constant_track(seq)) {
            REQUIRE(e.q0 == Approx(1.0).margin(1e-14));
            REQUIRE(e.eps == Approx(0.0).margin(1e-14));
        }
    }

    SECTION("spikes delta = 1/j: Q(0) = 1/sqrt(1+delta^2) increases to 1") {
        std::vector<TrigPoly> seq;
        for (int j = 1; j <= 20; ++j) seq.push_back(single_spike(j, 1.0 / j));
        const auto track = outer_constant_track(seq);
        double prev = 0.0;
        for (int j = 1; j <= 20; ++j) {
            const double delta = 1.0 / j;
            const double expect = 1.0 / std::sqrt(1.0 + delta * delta);
            REQUIRE(track[static_cast<std::size_t>(j - 1)].q0 == Approx(expect).margin(1e-9));
            REQUIRE(track[static_cast<std::size_t>(j - 1)].q0 > prev);
            prev = track[static_cast<std::size_t>(j - 1)].q0;
        }
        REQUIRE(track.back().q0 > 0.995);
    }

    SECTION("Dirichlet kernels stay bounded away from 1: Q(0) = 1/sqrt m") {
        std::vector<TrigPoly> seq;
        for (int m = 2; m <= 12; ++m) seq.push_back(class_b_consecutive(m));
        const auto track = outer_constant_track(seq);
        for (int m = 2; m <= 12; ++m) {
            const auto& e = track[static_cast<std::size_t>(m - 2)];
            REQUIRE(e.boundary_root);  // all roots are on the circle
            REQUIRE(e.q0 == Approx(1.0 / std::sqrt(double(m))).margin(1e-6));
            REQUIRE(e.q0 <= 1.0 / std::sqrt(2.0) + 1e-9);
        }
    }
}

TEST_CASE("factorization invariants on a seeded rooted corpus") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        const RootedPoly rp = random_rooted_poly(rng, 20);
        const auto f = inner_outer(rp.poly);
        REQUIRE_FALSE(f.boundary_root);
        REQUIRE(f.inside.size() + f.outside.size() == rp.roots.size());
        REQUIRE(f.q0() > 0.0);

        const Grid g = Grid::default_for(rp.poly);
        const auto pv = eval_grid(rp.poly, g);
        const auto qv = eval_grid(f.outer, g);
        double mp = 0.0;
        for (const cplx& v : pv) mp = std::max(mp, std::abs(v));
        double worst_pq = 0.0;
        for (std::size_t t = 0; t < pv.size(); ++t)
            worst_pq = std::max(worst_pq, std::abs(std::abs(pv[t]) - std::abs(qv[t])));
        REQUIRE(worst_pq <= 1e-7 * mp);

        // inner factor unimodular on the circle
        for (std::int64_t t = 0; t < g.M; t += 64)
            REQUIRE(std::abs(std::abs(f.inner_eval(g.angle(t))) - 1.0) <= 1e-8);

        // Q has no roots strictly inside the disk
        for (const cplx& r : find_roots(f.outer)) REQUIRE(std::abs(r) >= 1.0 - 1e-7);

        // reconstruction: inside/outside roots rebuild P up to 1e-8 relative
        std::vector<cplx> all = f.inside;
        all.insert(all.end(), f.outside.begin(), f.outside.end());
        TrigPoly rebuilt = from_roots(all, f.leading);
        if (f.monomial_degree > 0) rebuilt = rebuilt * TrigPoly::monomial(f.monomial_degree, cplx{1.0, 0.0});
        const double scale = max_coeff(rp.poly);
        for (const auto& [e, c] : rp.poly.terms())
            REQUIRE(std::abs(rebuilt.coeff(e) - c) <= 1e-8 * scale);

        // Jensen: log Q(0) vs grid log integral (no roots near the circle
        // by corpus construction)
        REQUIRE(std::log(f.q0()) == Approx(log_integral(rp.poly, g)).margin(2e-3));
    }
}

TEST_CASE("two-sided polynomials are rejected by inner_outer") {
    TrigPoly p = TrigPoly::constant(cplx{1.0, 0.0});
    p.set(-1, cplx{0.5, 0.0});
    REQUIRE_THROWS_AS(inner_outer(p), DomainError);
}
