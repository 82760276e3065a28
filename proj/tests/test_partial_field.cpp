// Partial fields: membership oracles, fundamental sets, partial addition.
#include <catch2/catch_amalgamated.hpp>

#include <pfkit/catalog.hpp>
#include <pfkit/partial_field.hpp>

#include <random>

using namespace pfkit;

TEST_CASE("hand-built dyadic field on Q with generator 2") {
    auto Q = ring_Q();
    auto D = pf_make_field("D", Q, {re_int(Q, 2)}, {"2"});

    auto mr = pf_member(D, re_rationals(Rat(1, 2)));
    REQUIRE(mr.kind == Membership::Member);
    REQUIRE(mr.witness);
    CHECK(mr.witness->sign == 0);
    REQUIRE(mr.witness->exps.size() == 1);
    CHECK(mr.witness->exps[0] == -1);
    CHECK(pf_member(D, re_int(Q, 3)).kind == Membership::NotMember);
    CHECK(pf_member(D, re_zero(Q)).kind == Membership::Zero);
    CHECK(pf_member(D, re_int(Q, -8)).kind == Membership::Member);

    auto fun = pf_fundamentals(D);
    REQUIRE(fun.elements.size() == 5);  // 0, 1, -1, 2, 1/2
    CHECK(!fun.exhaustive);             // lattice search box, not an enumeration
    CHECK(pf_is_zero(fun.elements[0]));
    CHECK(pf_is_one(fun.elements[1]));
    CHECK(r_eq(fun.elements[2].value, re_int(Q, -1)));
    CHECK(r_eq(fun.elements[3].value, re_int(Q, 2)));
    CHECK(r_eq(fun.elements[4].value, re_rationals(Rat(1, 2))));

    auto as = assoc(pf_from_int(D, 2));  // {-1, 2, 1/2}
    REQUIRE(as.size() == 3);
    CHECK(r_eq(as[0].value, re_int(Q, -1)));
    CHECK(r_eq(as[1].value, re_int(Q, 2)));
    CHECK(r_eq(as[2].value, re_rationals(Rat(1, 2))));
}

TEST_CASE("subfield restriction") {
    auto Q = ring_Q();
    auto D = pf_make_field("D", Q, {re_int(Q, 2)}, {"2"});
    auto sub = pf_sub(D, {re_int(Q, 4)});
    CHECK(pf_member(sub, re_int(Q, 8)).kind == Membership::NotMember);
    CHECK(pf_member(sub, re_rationals(Rat(1, 16))).kind == Membership::Member);
    CHECK(pf_member(sub, re_int(Q, -4)).kind == Membership::Member);
    CHECK(pf_fundamentals(sub).elements.size() == 2);
    CHECK_THROWS_AS(pf_sub(D, {re_int(Q, 3)}), NotMember);
}

TEST_CASE("trivial field: sums beyond {0,1,-1} are undefined") {
    auto Q = ring_Q();
    auto U0 = pf_make_field("U0", Q, {}, {});
    CHECK(pf_member(U0, re_int(Q, -1)).kind == Membership::Member);
    CHECK(pf_member(U0, re_int(Q, 2)).kind == Membership::NotMember);
    bool threw = false;
    try {
        pf_add(pf_one(U0), pf_one(U0));
    } catch (const UndefinedSum& e) {
        threw = true;
        CHECK(r_eq(e.ring_value, re_int(Q, 2)));
    }
    CHECK(threw);
    CHECK(pf_is_zero(pf_add(pf_one(U0), pf_minus_one(U0))));
    CHECK(pf_fundamentals(U0).elements.size() == 2);
}

TEST_CASE("golden-ratio field membership") {
    auto R = ring_tau();
    auto G = pf_make_field("G", R, {re_quad(R, 0, 1)}, {"t"});
    auto mr = pf_member(G, re_quad(R, 1, 1));  // tau + 1 = tau^2
    REQUIRE(mr.kind == Membership::Member);
    CHECK(mr.witness->sign == 0);
    CHECK(mr.witness->exps[0] == 2);
    CHECK(pf_member(G, re_int(R, 2)).kind == Membership::NotMember);
    auto fun = pf_fundamentals(G);
    CHECK(fun.elements.size() == 8);  // 0,1,t,-t,1/t,-1/t,t^2,1/t^2
    for (auto& e : fun.elements) CHECK(!r_eq(e.value, re_int(R, -1)));
}

TEST_CASE("sixth-root field: 1 - z is z^-1") {
    auto R = ring_zeta();
    auto S = pf_make_field("S", R, {re_quad(R, 0, 1)}, {"z"});
    auto one_minus_zeta = re_quad(R, 1, -1);
    CHECK(pf_member(S, one_minus_zeta).kind == Membership::Member);
    CHECK(pf_fundamentals(S).elements.size() == 4);  // 0, 1, z, 1-z
    auto d = pf_display_form(pf_from_ring(S, one_minus_zeta));
    REQUIRE(d);
    CHECK(d->sign == 0);
    REQUIRE(d->factors.size() == 1);
    CHECK(d->factors[0].first == "z");
    CHECK(d->factors[0].second == -1);
}

TEST_CASE("Gaussian field with generators i and 1-i") {
    auto R = ring_gauss();
    auto H2 = pf_make_field("H2", R, {re_quad(R, 0, 1), re_quad(R, 1, -1)}, {"i", "u"});

    auto d = pf_display_form(pf_from_ring(H2, re_int(R, 2)));  // 2 = i * u^2
    REQUIRE(d);
    CHECK(d->sign == 0);
    REQUIRE(d->factors.size() == 2);
    CHECK(d->factors[0].first == "i");
    CHECK(d->factors[0].second == 1);
    CHECK(d->factors[1].first == "u");
    CHECK(d->factors[1].second == 2);

    auto d2 = pf_display_form(pf_from_ring(H2, re_quad(R, Rat(1, 2), Rat(1, 2))));
    REQUIRE(d2);  // (1+i)/2 = u^-1
    REQUIRE(d2->factors.size() == 1);
    CHECK(d2->factors[0].first == "u");
    CHECK(d2->factors[0].second == -1);

    CHECK(pf_member(H2, re_int(R, 3)).kind == Membership::NotMember);
    CHECK(pf_member(H2, re_quad(R, 1, 2)).kind == Membership::NotMember);  // 1+2i, norm 5
}

TEST_CASE("finite-field products: membership, fundamentals, sum semantics") {
    auto F3 = ring_prime_field(3);
    auto F5 = ring_prime_field(5);
    auto GF3 = pf_make_field("GF(3)", F3, {re_prime(F3, 2)}, {"2"});
    auto GF5 = pf_make_field("GF(5)", F5, {re_prime(F5, 2)}, {"2"});
    CHECK(pf_fundamentals(GF3).elements.size() == 3);
    CHECK(pf_fundamentals(GF3).exhaustive);
    CHECK(pf_fundamentals(GF5).elements.size() == 5);

    auto P = pf_direct_product({GF3, GF5});
    CHECK(P->oracle == OracleKind::Enumerated);
    auto R = P->ring;
    auto v24 = re_product(R, {re_prime(F3, 2), re_prime(F5, 4)});
    CHECK(pf_member(P, v24).kind == Membership::Member);
    CHECK(pf_member(P, re_product(R, {re_prime(F3, 2), re_prime(F5, 0)})).kind ==
          Membership::NotMember);
    CHECK(pf_member(P, re_product(R, {re_prime(F3, 0), re_prime(F5, 0)})).kind ==
          Membership::Zero);
    auto fun = pf_fundamentals(P);
    CHECK(fun.elements.size() == 5);  // (0,0),(1,1),(2,2),(2,3),(2,4)
    CHECK(fun.exhaustive);

    // (2,4) + (2,2) = (1,1)
    auto a = pf_from_ring(P, v24);
    auto b = pf_from_ring(P, re_product(R, {re_prime(F3, 2), re_prime(F5, 2)}));
    CHECK(pf_is_one(pf_add(a, b)));
    // (1,1) + (1,1) = (2,2)
    CHECK(pf_eq(pf_add(pf_one(P), pf_one(P)), b));
    // (1,1) + (1,4) = (2,0): mixed zero pattern, undefined
    CHECK_THROWS_AS(
        pf_add(pf_one(P), pf_from_ring(P, re_product(R, {re_prime(F3, 1), re_prime(F5, 4)}))),
        UndefinedSum);
}

TEST_CASE("all-units field on Z/4: 1+1 undefined, 1+1+1 a unit") {
    auto R = ring_mod(4);
    auto Z4 = pf_make_field("P(Z/4)", R, {re_mod(R, 3)}, {"3"});
    CHECK(pf_member(Z4, re_mod(R, 3)).kind == Membership::Member);
    CHECK(pf_member(Z4, re_mod(R, 2)).kind == Membership::NotMember);
    bool threw = false;
    try {
        pf_add(pf_one(Z4), pf_one(Z4));
    } catch (const UndefinedSum& e) {
        threw = true;
        CHECK(r_eq(e.ring_value, re_mod(R, 2)));
    }
    CHECK(threw);
    // the ring total of 1+1+1 is the unit 3 even though the partial sum breaks
    CHECK(r_eq(pf_sum({pf_one(Z4), pf_one(Z4), pf_one(Z4)}).value, re_mod(R, 3)));
}

TEST_CASE("near-regular field on Q(a)") {
    auto R = ring_rational_functions('a');
    auto a = re_generator(R);
    auto one = re_one(R);
    auto U1 = pf_make_field("U1", R, {a, r_sub(one, a)}, {"a", "b"});
    CHECK(pf_member(U1, r_div(a, r_sub(a, one))).kind == Membership::Member);
    CHECK(pf_member(U1, r_add(a, one)).kind == Membership::NotMember);
    CHECK(pf_member(U1, r_mul(re_int(R, 2), a)).kind == Membership::NotMember);
    auto fun = pf_fundamentals(U1, 1);
    CHECK(fun.elements.size() == 8);  // {0,1} + the six associates of a
    CHECK(fun.search_bound == 1);
}

TEST_CASE("characteristic-2 function field membership") {
    auto R = ring_rational_functions('a', 2);
    auto a = re_generator(R);
    auto U1m2 = pf_make_field("U1(2)", R, {a, r_add(a, re_one(R))}, {"a", "b"});
    CHECK(pf_member(U1m2, r_mul(a, a)).kind == Membership::Member);
    auto sq = r_mul(r_add(a, re_one(R)), r_add(a, re_one(R)));
    CHECK(pf_member(U1m2, r_div(sq, a)).kind == Membership::Member);
    CHECK(pf_member(U1m2, r_add(r_mul(a, a), a)).kind == Membership::Member);
    CHECK(pf_member(U1m2, r_add(r_mul(a, a), re_one(R))).kind == Membership::Member);
    // a^2 + a + 1 is irreducible and not in the group
    CHECK(pf_member(U1m2, r_add(r_add(r_mul(a, a), a), re_one(R))).kind ==
          Membership::NotMember);
}

// ---------------------------------------------------------------------------
// Catalog.

TEST_CASE("catalog fundamental-set sizes and associate closure") {
    struct Row {
        const char* name;
        size_t fun_size;
        bool exhaustive;
    };
    Row rows[] = {
        {"U0", 2, true},  {"U1", 8, true},  {"S", 4, true},   {"D", 5, true},
        {"Y", 7, true},   {"K2", 20, true}, {"GE", 23, true}, {"P4", 32, true},
        {"H2", 11, true}, {"G", 8, true},   {"U1m2", 20, false},
    };
    for (auto& r : rows) {
        INFO("field " << r.name);
        auto f = catalog_field(r.name);
        auto fun = pf_fundamentals(f);
        REQUIRE(fun.elements.size() == r.fun_size);
        CHECK(fun.exhaustive == r.exhaustive);
        // closure under the associate orbit (may clip for non-exhaustive sets)
        for (auto& e : fun.elements) {
            for (auto& a : assoc(e)) {
                bool found = false;
                for (auto& x : fun.elements)
                    if (pf_eq(a, x)) found = true;
                if (!r.exhaustive && !found) continue;
                CHECK(found);
            }
        }
    }
    CHECK(catalog_field("D") == catalog_field("D"));  // cached
}

TEST_CASE("catalog finite fields use primitive generators") {
    CHECK(pf_fundamentals(catalog_field("GF2")).elements.size() == 2);
    CHECK(pf_fundamentals(catalog_field("GF3")).elements.size() == 3);
    CHECK(pf_fundamentals(catalog_field("GF(5)")).elements.size() == 5);
    CHECK(pf_fundamentals(catalog_field("GF7")).elements.size() == 7);

    auto GF4 = catalog_field("GF4");
    CHECK(pf_fundamentals(GF4).elements.size() == 4);
    auto w = re_generator(GF4->ring);
    CHECK(r_eq(r_mul(w, w), r_add(w, re_one(GF4->ring))));
    CHECK(GF4->table.size() == 3);

    CHECK(catalog_field("GF8")->table.size() == 7);
    CHECK(catalog_field("GF9")->table.size() == 8);
    CHECK(catalog_field("GF25")->table.size() == 24);
    CHECK(catalog_field("GF27")->table.size() == 26);
    CHECK(catalog_field("GF49")->table.size() == 48);
}

TEST_CASE("all-units fields over modular rings") {
    auto Z51 = pf_all_units(ring_mod(51));
    CHECK(Z51->table.size() == 32);  // phi(51)
    CHECK(pf_member(Z51, re_mod(Z51->ring, 41)).kind == Membership::Member);
    CHECK(pf_member(Z51, re_mod(Z51->ring, 3)).kind == Membership::NotMember);
    CHECK(pf_all_units(ring_mod(4))->table.size() == 2);
}

TEST_CASE("catalog products") {
    auto P = pf_direct_product({catalog_field("GF3"), catalog_field("GF5")});
    CHECK(pf_fundamentals(P).elements.size() == 5);
    auto P2 = pf_direct_product({catalog_field("GF3"), catalog_field("GF4")});
    CHECK(pf_fundamentals(P2).elements.size() == 4);
    auto P3 = pf_direct_product({catalog_field("GF4"), catalog_field("H2")});
    CHECK(P3->oracle == OracleKind::Product);
    CHECK(pf_fundamentals(P3).elements.size() == 20);
}

TEST_CASE("standard symbol bindings") {
    auto b = standard_bindings(catalog_field("U1"));
    REQUIRE(b.count("a"));
    REQUIRE(b.count("b"));
    CHECK(r_eq(b["b"], r_sub(re_one(catalog_field("U1")->ring), b["a"])));
    auto bh = standard_bindings(catalog_field("H2"));
    CHECK(bh.count("i"));
    CHECK(bh.count("u"));
}

// ---------------------------------------------------------------------------
// Field laws.

namespace {

std::vector<PartialFieldPtr> law_fields() {
    return {catalog_field("U0"), catalog_field("D"),  catalog_field("S"),
            catalog_field("G"),  catalog_field("H2"), catalog_field("Y"),
            catalog_field("GF7"), catalog_field("GF8"),
            pf_direct_product({catalog_field("GF3"), catalog_field("GF5")})};
}

}  // namespace

TEST_CASE("membership witnesses re-evaluate to the element") {
    for (const auto& f : law_fields()) {
        INFO("field " << f->name);
        for (const auto& e : pf_fundamentals(f).elements) {
            if (pf_is_zero(e)) continue;
            auto mr = pf_member(f, e.value);
            REQUIRE(mr.kind == Membership::Member);
            REQUIRE(mr.witness);
            CHECK(r_eq(factored_eval(f->ring, f->gens, *mr.witness), e.value));
        }
    }
}

TEST_CASE("additive identities: p + (-p) = 0 and p + 0 = p") {
    for (const auto& f : law_fields()) {
        INFO("field " << f->name);
        for (const auto& e : pf_fundamentals(f).elements) {
            CHECK(pf_is_zero(pf_add(e, pf_neg(e))));
            CHECK(pf_eq(pf_add(e, pf_zero(f)), e));
        }
    }
}

TEST_CASE("distributivity over defined sums, randomized") {
    std::mt19937_64 rng(2024);
    for (const auto& f : law_fields()) {
        INFO("field " << f->name);
        auto fun = pf_fundamentals(f).elements;
        // widen the sample with inverses and negatives of fundamentals
        std::vector<PfElement> pool = fun;
        for (const auto& e : fun)
            if (!pf_is_zero(e)) {
                pool.push_back(pf_inv(e));
                pool.push_back(pf_neg(e));
            }
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        int found = 0;
        for (int trial = 0; trial < 400; ++trial) {
            const auto& p = pool[pick(rng)];
            const auto& q = pool[pick(rng)];
            const auto& r = pool[pick(rng)];
            std::optional<PfElement> sum;
            try {
                sum = pf_add(q, r);
            } catch (const UndefinedSum&) {
                continue;
            }
            ++found;
            auto lhs = pf_mul(p, *sum);
            auto rhs = pf_add(pf_mul(p, q), pf_mul(p, r));  // defined whenever q+r is
            CHECK(pf_eq(lhs, rhs));
        }
        CHECK(found > 0);
    }
}

TEST_CASE("golden-ratio powers follow the Fibonacci recurrence") {
    // t^k = f(k-1) + f(k) * t with the doubly infinite Fibonacci sequence
    // (f(-1) = 1, f(0) = 0, f(1) = 1).
    auto T = ring_tau();
    auto tau = re_generator(T);
    std::map<int, Int> f;
    f[-1] = 1;
    f[0] = 0;
    for (int k = 1; k <= 31; ++k) f[k] = f[k - 1] + f[k - 2];
    for (int k = -1; k >= -31; --k) f[k] = f[k + 2] - f[k + 1];
    for (int k = -30; k <= 30; ++k) {
        INFO("k = " << k);
        CHECK(r_eq(r_pow(tau, k), re_quad(T, Rat(f[k - 1]), Rat(f[k]))));
    }
}
