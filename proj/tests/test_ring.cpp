// Exact ring kernel: canonical forms, arithmetic laws, factorization.
#include <catch2/catch_amalgamated.hpp>

#include <pfkit/ring.hpp>

#include <random>

using namespace pfkit;

TEST_CASE("rational arithmetic and factorization") {
    auto Q = ring_Q();
    auto half = re_rationals(Rat(1, 2));
    CHECK(r_is_one(r_add(half, half)));

    auto f = factor(re_rationals(Rat(2, 3)));
    CHECK(r_is_one(f.unit));
    REQUIRE(f.primes.size() == 2);
}

TEST_CASE("modular integers") {
    auto Z51 = ring_mod(51);
    auto s = r_add(r_add(re_int(Z51, 7), re_int(Z51, 23)), re_int(Z51, 11));
    CHECK(r_eq(s, re_int(Z51, 41)));
    CHECK(r_is_unit(s));
    CHECK_THROWS_AS(r_inv(re_int(Z51, 3)), NonUnit);
}

TEST_CASE("quadratic rings: defining relations") {
    auto T = ring_tau();
    auto tau = re_generator(T);
    CHECK(r_eq(r_mul(tau, tau), r_add(tau, re_one(T))));

    auto Zr = ring_zeta();
    auto z = re_generator(Zr);
    CHECK(r_eq(r_pow(z, 3), r_neg(re_one(Zr))));
    CHECK(r_eq(r_sub(re_one(Zr), z), r_inv(z)));
}

TEST_CASE("Gaussian factorization") {
    auto G = ring_gauss();

    SECTION("2 = -i * (1+i)^2") {
        auto fg = factor(re_int(G, 2));
        REQUIRE(fg.primes.size() == 1);
        CHECK(fg.primes[0].second == 2);
        CHECK(r_eq(fg.primes[0].first, re_quad(G, 1, 1)));
        CHECK(r_eq(fg.unit, re_quad(G, 0, -1)));
    }
    SECTION("(1+i)/2 = i * (1+i)^-1") {
        auto fv = factor(re_quad(G, Rat(1, 2), Rat(1, 2)));
        REQUIRE(fv.primes.size() == 1);
        CHECK(fv.primes[0].second == -1);
    }
}

TEST_CASE("rational function fields") {
    auto RF = ring_rational_functions('a');
    auto alpha = re_generator(RF);

    SECTION("a^2 - 1 splits into two linear factors") {
        auto fr = factor(r_sub(r_mul(alpha, alpha), re_one(RF)));
        CHECK(fr.primes.size() == 2);
    }
    SECTION("(a^2-1)/(a-1) reduces to a+1") {
        PolyZ num({Int(-1), Int(0), Int(1)});
        PolyZ den({Int(-1), Int(1)});
        CHECK(r_eq(re_ratfun(RF, num, den), r_add(alpha, re_one(RF))));
    }
    SECTION("characteristic 2: a^2 + a = a(a+1)") {
        auto RF2 = ring_rational_functions('a', 2);
        auto b = re_generator(RF2);
        auto fb = factor(r_mul(b, r_add(b, re_one(RF2))));
        CHECK(fb.primes.size() == 2);
    }
}

TEST_CASE("finite field generator order") {
    auto F8 = ring_finite_field(2, 3, {1, 1, 0, 1});
    auto w = re_generator(F8);
    CHECK(r_is_one(r_pow(w, 7)));
    CHECK(!r_is_one(r_pow(w, 1)));
}

TEST_CASE("product rings multiply componentwise") {
    auto P = ring_product({ring_prime_field(3), ring_prime_field(5)});
    auto e1 = re_product(P, {re_int(ring_prime_field(3), 2), re_int(ring_prime_field(5), 4)});
    CHECK(r_is_one(r_mul(e1, e1)));
}

TEST_CASE("integer polynomial evaluation") {
    auto IP = ring_int_polynomials({"~p1", "~p2"});
    auto x0 = re_mpoly(IP, MPoly::variable(2, 0));
    auto x1 = re_mpoly(IP, MPoly::variable(2, 1));
    auto g = r_sub(r_mul(x0, x1), re_one(IP));
    auto F5 = ring_prime_field(5);
    auto ev = mp_eval(g.mp, {re_int(F5, 2), re_int(F5, 3)}, F5);
    CHECK(r_is_zero(ev));
}

// ---------------------------------------------------------------------------
// Randomized laws.

namespace {

using Rng = std::mt19937_64;

int small_int(Rng& rng, int lo, int hi) {
    return (int)std::uniform_int_distribution<int>(lo, hi)(rng);
}

PolyZ random_polyz(Rng& rng, int maxdeg) {
    int deg = small_int(rng, 0, maxdeg);
    std::vector<Int> c(deg + 1);
    for (auto& x : c) x = small_int(rng, -4, 4);
    if (c.back() == 0) c.back() = 1;
    return PolyZ(c);
}

PolyP random_polyp(Rng& rng, long long p, int maxdeg) {
    int deg = small_int(rng, 0, maxdeg);
    std::vector<long long> c(deg + 1);
    for (auto& x : c) x = small_int(rng, 0, (int)p - 1);
    if (c.back() == 0) c.back() = 1;
    return PolyP(p, c);
}

// a random element of the ring (field-of-fractions coordinates where the
// descriptor carries them); not necessarily nonzero
RingElement random_element(const RingDescPtr& ring, Rng& rng) {
    switch (ring->kind) {
        case RingKind::Rationals:
            return re_rationals(Rat(small_int(rng, -9, 9), small_int(rng, 1, 6)));
        case RingKind::RationalFunctions: {
            if (ring->base_p == 0) {
                PolyZ den = random_polyz(rng, 1);
                return re_ratfun(ring, random_polyz(rng, 2), den);
            }
            PolyP den = random_polyp(rng, ring->base_p, 1);
            return re_ratfun_p(ring, random_polyp(rng, ring->base_p, 2), den);
        }
        case RingKind::QuadraticField:
            return re_quad(ring, Rat(small_int(rng, -8, 8), small_int(rng, 1, 4)),
                           Rat(small_int(rng, -8, 8), small_int(rng, 1, 4)));
        case RingKind::PrimeField:
            return re_int(ring, small_int(rng, 0, (int)ring->p - 1));
        case RingKind::FiniteField: {
            if (small_int(rng, 0, 7) == 0) return re_zero(ring);
            Int order = 1;
            for (int i = 0; i < ring->k; ++i) order *= ring->p;
            return r_pow(re_generator(ring), small_int(rng, 0, (int)(order - 1).convert_to<long long>()));
        }
        case RingKind::ModularIntegers:
            return re_int(ring, small_int(rng, 0, 50));
        case RingKind::Product: {
            std::vector<RingElement> comps;
            for (const auto& fr : ring->factors) comps.push_back(random_element(fr, rng));
            return re_product(ring, std::move(comps));
        }
        case RingKind::IntPolynomials: {
            size_t nv = ring->poly_vars.size();
            MPoly m = MPoly::constant(nv, small_int(rng, -2, 2));
            for (int t = 0; t < 2; ++t) {
                MPoly mono = MPoly::constant(nv, small_int(rng, -2, 2));
                for (size_t v = 0; v < nv; ++v)
                    for (int e = small_int(rng, 0, 2); e > 0; --e)
                        mono = mp_mul(mono, MPoly::variable(nv, v));
                m = mp_add(m, mono);
            }
            return re_mpoly(ring, m);
        }
    }
    throw Error("unreachable");
}

std::vector<RingDescPtr> law_descriptors() {
    return {ring_Q(),
            ring_rational_functions('a'),
            ring_rational_functions('a', 2),
            ring_zeta(),
            ring_gauss(),
            ring_tau(),
            ring_prime_field(7),
            ring_finite_field(2, 3, {1, 1, 0, 1}),
            ring_mod(51),
            ring_product({ring_prime_field(3), ring_prime_field(5)}),
            ring_int_polynomials({"~p1", "~p2"})};
}

}  // namespace

TEST_CASE("arithmetic laws hold on randomized triples in every ring") {
    Rng rng(421);
    for (const auto& ring : law_descriptors()) {
        INFO("ring " << ring->name());
        for (int trial = 0; trial < 60; ++trial) {
            auto a = random_element(ring, rng);
            auto b = random_element(ring, rng);
            auto c = random_element(ring, rng);
            REQUIRE(r_eq(r_add(a, b), r_add(b, a)));
            REQUIRE(r_eq(r_mul(a, b), r_mul(b, a)));
            REQUIRE(r_eq(r_add(r_add(a, b), c), r_add(a, r_add(b, c))));
            REQUIRE(r_eq(r_mul(r_mul(a, b), c), r_mul(a, r_mul(b, c))));
            REQUIRE(r_eq(r_mul(a, r_add(b, c)), r_add(r_mul(a, b), r_mul(a, c))));
            REQUIRE(r_eq(r_mul(a, re_one(ring)), a));
            REQUIRE(r_eq(r_add(a, re_zero(ring)), a));
            REQUIRE(r_eq(r_neg(a), r_sub(re_zero(ring), a)));
        }
    }
}

TEST_CASE("factor then re-multiply is the identity", "[slow]") {
    // Factorization is supported in Q, the rational function fields, and the
    // three quadratic rings; the elements below stay within certified ranges.
    Rng rng(1729);
    std::vector<RingDescPtr> ufds = {ring_Q(),   ring_rational_functions('a'),
                                     ring_rational_functions('a', 2),
                                     ring_zeta(), ring_gauss(),
                                     ring_tau()};
    for (const auto& ring : ufds) {
        INFO("ring " << ring->name());
        for (int trial = 0; trial < 10000; ++trial) {
            RingElement v = re_zero(ring);
            while (r_is_zero(v)) v = random_element(ring, rng);
            auto f = factor(v);
            RingElement back = f.unit;
            for (const auto& [p, e] : f.primes) back = r_mul(back, r_pow(p, e));
            REQUIRE(r_eq(back, v));
        }
    }
}

TEST_CASE("product ring operations act componentwise on random pairs") {
    Rng rng(77);
    auto F3 = ring_prime_field(3);
    auto F5 = ring_prime_field(5);
    auto F8 = ring_finite_field(2, 3, {1, 1, 0, 1});
    auto P = ring_product({F3, F5, F8});
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_element(P, rng);
        auto b = random_element(P, rng);
        auto sum = r_add(a, b);
        auto prod = r_mul(a, b);
        for (size_t i = 0; i < 3; ++i) {
            REQUIRE(r_eq(sum.comps[i], r_add(a.comps[i], b.comps[i])));
            REQUIRE(r_eq(prod.comps[i], r_mul(a.comps[i], b.comps[i])));
        }
        CHECK(r_is_unit(a) == (r_is_unit(a.comps[0]) && r_is_unit(a.comps[1]) && r_is_unit(a.comps[2])));
    }
}
