#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "flatpoly/corpus.hpp"
#include "flatpoly/poly.hpp"
#include "oracles.hpp"

using namespace flatpoly;
using Catch::Approx;

namespace {

TrigPoly one_plus_z() {
    TrigPoly p = TrigPoly::constant(cplx{1.0, 0.0});
    p.set(1, cplx{1.0, 0.0});
    return p;
}

}  // namespace

TEST_CASE("normalize_l2 examples") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    SECTION("1 + z") {
        const TrigPoly q = normalize_l2(one_plus_z());
        REQUIRE(q.coeff(0).real() == Approx(inv_sqrt2).margin(1e-14));
        REQUIRE(q.coeff(1).real() == Approx(inv_sqrt2).margin(1e-14));
        REQUIRE(q.l2_norm() == Approx(1.0).margin(1e-14));
    }

    SECTION("single term 3 z^5") {
        const TrigPoly q = normalize_l2(TrigPoly::monomial(5, cplx{3.0, 0.0}));
        REQUIRE(q.term_count() == 1);
        REQUIRE(q.coeff(5).real() == Approx(1.0).margin(1e-14));
    }

    SECTION("1 + z + z^2") {
        TrigPoly p = one_plus_z();
        p.set(2, cplx{1.0, 0.0});
        const TrigPoly q = normalize_l2(p);
        for (std::int64_t e = 0; e <= 2; ++e)
            REQUIRE(q.coeff(e).real() == Approx(1.0 / std::sqrt(3.0)).margin(1e-14));
    }

    SECTION("zero polynomial is an error") {
        REQUIRE_THROWS_AS(normalize_l2(TrigPoly{}), DomainError);
        try {
            normalize_l2(TrigPoly{});
        } catch (const DomainError& e) {
            REQUIRE(e.code() == Errc::EmptyPolynomial);
        }
    }
}

TEST_CASE("norms") {
    SECTION("constant 1: all three norms are 1") {
        const TrigPoly p = TrigPoly::constant(cplx{1.0, 0.0});
        const Grid g(4096);
        REQUIRE(l2_norm(p) == Approx(1.0).margin(1e-15));
        REQUIRE(l1_modulus(p, g) == Approx(1.0).margin(1e-12));
        REQUIRE(sup_modulus(p, g) == Approx(1.0).margin(1e-12));
    }

    SECTION("(1+z)/sqrt2: L1 matches 2 sqrt2/pi and the quadrature oracle") {
        const TrigPoly p = normalize_l2(one_plus_z());
        const Grid g(4096);
        const double closed_form = 2.0 * std::sqrt(2.0) / std::numbers::pi;
        const double fine_oracle = oracles::quadrature_l1(p, 1 << 16);
        const double got = l1_modulus(p, g);
        REQUIRE(got == Approx(closed_form).margin(1e-3));
        REQUIRE(got == Approx(fine_oracle).margin(1e-4));
    }

    SECTION("unimodular character z^7") {
        const TrigPoly p = TrigPoly::monomial(7, cplx{1.0, 0.0});
        const Grid g(4096);
        REQUIRE(l2_norm(p) == Approx(1.0).margin(1e-15));
        REQUIRE(l1_modulus(p, g) == Approx(1.0).margin(1e-12));
        REQUIRE(sup_modulus(p, g) == Approx(1.0).margin(1e-12));
    }

    SECTION("sup on an under-resolved grid is an error") {
        TrigPoly p = TrigPoly::constant(cplx{1.0, 0.0});
        p.set(2000, cplx{1.0, 0.0});
        REQUIRE_THROWS_AS(sup_modulus(p, Grid(64)), DomainError);
    }
}

TEST_CASE("squared_modulus hand convolutions") {
    SECTION("(1+z)/sqrt2") {
        const ModulusSpectrum s = squared_modulus(normalize_l2(one_plus_z()));
        REQUIRE(s.center == Approx(1.0).margin(1e-14));
        REQUIRE(s.count() == 1);
        REQUIRE(s.positive[0].first == 1);
        REQUIRE(s.positive[0].second.real() == Approx(0.5).margin(1e-15));
        REQUIRE(s.positive[0].second.imag() == Approx(0.0).margin(1e-15));
    }

    SECTION("(1+z+z^2)/sqrt3") {
        TrigPoly p = one_plus_z();
        p.set(2, cplx{1.0, 0.0});
        const ModulusSpectrum s = squared_modulus(normalize_l2(p));
        REQUIRE(s.center == Approx(1.0).margin(1e-14));
        REQUIRE(s.count() == 2);
        REQUIRE(s.coeff(1).real() == Approx(2.0 / 3.0).margin(1e-14));
        REQUIRE(s.coeff(2).real() == Approx(1.0 / 3.0).margin(1e-14));
        REQUIRE(s.coeff(-1) == std::conj(s.coeff(1)));
    }

    SECTION("G_2 = (1 + i z)/sqrt2 has b_1 = i/2") {
        TrigPoly p = TrigPoly::constant(cplx{1.0, 0.0});
        p.set(1, cplx{0.0, 1.0});
        const ModulusSpectrum s = squared_modulus(normalize_l2(p));
        REQUIRE(s.count() == 1);
        REQUIRE(s.coeff(1).real() == Approx(0.0).margin(1e-15));
        REQUIRE(s.coeff(1).imag() == Approx(0.5).margin(1e-15));
        // |G_2(e^{i theta})|^2 = 1 - sin(theta)
        for (double theta : {0.3, 1.1, 2.9, 4.2})
            REQUIRE(s.eval_angle(theta) == Approx(1.0 - std::sin(theta)).margin(1e-12));
    }

    SECTION("agrees with the dense convolution oracle") {
        SplitMix64 rng(2024);
        for (int trial = 0; trial < 40; ++trial) {
            TrigPoly p;
            const int terms = 2 + static_cast<int>(rng.below(6));
            for (int i = 0; i < terms; ++i)
                p.set(static_cast<std::int64_t>(rng.below(25)) - 12,
                      cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
            if (p.empty()) continue;
            const auto expect = oracles::dense_autocorrelation(p);
            const ModulusSpectrum s = squared_modulus(p);
            for (const auto& [d, v] : expect) {
                REQUIRE(std::abs(s.coeff(d) - v) < 1e-12);
            }
        }
    }
}

TEST_CASE("fourier_coeff on a modulus spectrum") {
    const ModulusSpectrum s = squared_modulus(normalize_l2(one_plus_z()));
    REQUIRE(fourier_coeff(s, 0).real() == Approx(1.0).margin(1e-14));
    REQUIRE(fourier_coeff(s, 1).real() == Approx(0.5).margin(1e-14));
    REQUIRE(fourier_coeff(s, 5) == cplx{0.0, 0.0});
    REQUIRE(fourier_coeff(s, -5) == cplx{0.0, 0.0});
}

TEST_CASE("Parseval on random polynomials") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        TrigPoly p;
        const int terms = 1 + static_cast<int>(rng.below(8));
        for (int i = 0; i < terms; ++i)
            p.set(static_cast<std::int64_t>(rng.below(60)) - 30,
                  cplx{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
        if (p.empty()) continue;
        const Grid g(next_power_of_two(p.span() + 1));
        const auto vals = eval_grid(p, g);
        double mean_sq = 0.0;
        for (const cplx& v : vals) mean_sq += std::norm(v);
        mean_sq /= static_cast<double>(g.M);
        double coeff_sq = 0.0;
        for (const auto& [e, c] : p.terms()) coeff_sq += std::norm(c);
        REQUIRE(mean_sq == Approx(coeff_sq).margin(1e-10 * std::max(1.0, coeff_sq)));
    }
}

TEST_CASE("spectrum evaluation matches |P|^2 pointwise") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        TrigPoly p;
        const int terms = 1 + static_cast<int>(rng.below(6));
        for (int i = 0; i < terms; ++i)
            p.set(static_cast<std::int64_t>(rng.below(40)) - 20,
                  cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
        if (p.empty()) continue;
        const ModulusSpectrum s = squared_modulus(p);
        const Grid g(512);
        const auto vals = eval_grid(p, g);
        for (std::int64_t t = 0; t < g.M; t += 17) {
            const double expect = std::norm(vals[static_cast<std::size_t>(t)]);
            REQUIRE(s.eval_angle(g.angle(t)) == Approx(expect).margin(1e-12));
        }
    }
}

TEST_CASE("center of the normalized square is 1") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        TrigPoly p;
        const int terms = 1 + static_cast<int>(rng.below(9));
        for (int i = 0; i < terms; ++i)
            p.set(static_cast<std::int64_t>(rng.below(50)),
                  cplx{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)});
        if (p.empty()) continue;
        REQUIRE(squared_modulus(normalize_l2(p)).center == Approx(1.0).margin(1e-14));
    }
}

TEST_CASE("N stays within the pair bound m(m-1)/2") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const TrigPoly p = random_class_b(rng);
        const auto m = static_cast<std::int64_t>(p.term_count());
        REQUIRE(squared_modulus(p).count() <= m * (m - 1) / 2);
    }
}

TEST_CASE("grid evaluation matches direct evaluation") {
    TrigPoly p;
    p.set(-3, cplx{0.5, -0.25});
    p.set(0, cplx{1.0, 0.0});
    p.set(7, cplx{-0.125, 0.75});
    const Grid g(256, 0.5);
    const auto vals = eval_grid(p, g);
    for (std::int64_t t = 0; t < g.M; t += 13) {
        const cplx expect = oracles::eval_direct(p, g.angle(t));
        REQUIRE(std::abs(vals[static_cast<std::size_t>(t)] - expect) < 1e-12);
    }
}

TEST_CASE("pruning and exact storage") {
    TrigPoly p;
    p.set(0, cplx{1.0, 0.0});
    p.set(3, cplx{1e-15, 0.0});
    REQUIRE(p.term_count() == 2);  // exact storage by default
    REQUIRE(p.pruned(1e-13).term_count() == 1);
    p.add(3, cplx{-1e-15, 0.0});  // exact cancellation erases
    REQUIRE(p.term_count() == 1);
}

TEST_CASE("duplicate exponents rejected in term lists") {
    REQUIRE_THROWS_AS(TrigPoly::from_terms({{1, cplx{1.0, 0.0}}, {1, cplx{2.0, 0.0}}}), DomainError);
}
