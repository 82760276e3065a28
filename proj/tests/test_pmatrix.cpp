// Matrices over partial fields: determinants, validation, pivots,
// scaling normal forms, cycle signatures, cross ratios.
#include <catch2/catch_amalgamated.hpp>

#include <pfkit/catalog.hpp>
#include <pfkit/pmatrix.hpp>

using namespace pfkit;

TEST_CASE("2x2 determinant, signatures, and cross ratios over the near-regular field") {
    auto U1 = catalog_field("U1");
    PfElement p = pf_from_ring(U1, U1->gens[0]);
    PfElement one = pf_one(U1);
    auto M = pm_make(U1, default_row_labels(2), default_col_labels(2), {{one, one}, {p, one}});

    PfElement d = pm_det(M);
    RingElement expect = r_sub(re_one(U1->ring), U1->gens[0]);
    CHECK(r_eq(d.value, expect));
    CHECK(r_eq(pm_ring_subdet(M, {0, 1}, {0, 1}), expect));

    // cycle signature in the orientation (x2,y1,x1,y2) is p; reversed, 1/p
    CHECK(pf_eq(pm_cycle_signature(M, {"x2", "y1", "x1", "y2"}), p));
    CHECK(pf_eq(pm_cycle_signature(M, {"x2", "y2", "x1", "y1"}), pf_inv(p)));

    auto cyc = pm_induced_cycles(M);
    REQUIRE(cyc.size() == 1);
    CHECK(cyc[0].size() == 4);

    // the cross-ratio set is the six-element associate orbit of p
    auto cr = pm_cross_ratios(M);
    CHECK(cr.complete);
    REQUIRE(cr.values.size() == 6);
    for (auto& q : assoc(p)) {
        bool found = false;
        for (auto& v : cr.values)
            if (r_eq(v.value, q.value)) found = true;
        CHECK(found);
    }
}

TEST_CASE("determinants outside the group are reported, not coerced") {
    auto U0 = catalog_field("U0");
    auto GF2 = catalog_field("GF2");
    auto M2 = pm_from_ints(GF2, default_row_labels(3), default_col_labels(3),
                           {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(pf_is_zero(pm_det(M2)));

    auto M0 = pm_from_ints(U0, default_row_labels(3), default_col_labels(3),
                           {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    bool threw = false;
    try {
        pm_det(M0);
    } catch (const UndefinedDeterminant& e) {
        threw = true;
        CHECK(r_raw_string(e.value) == "2");
    }
    CHECK(threw);
}

TEST_CASE("validation witnesses name the offending submatrix") {
    auto U0 = catalog_field("U0");
    auto GF2 = catalog_field("GF2");
    auto M = pm_from_ints(U0, default_row_labels(3), default_col_labels(4),
                          {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}});
    auto v = pm_validate(M);
    CHECK(!v.valid);
    REQUIRE(v.witness.has_value());
    CHECK(r_raw_string(v.witness->det) == "2");
    CHECK(v.witness->rows == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(v.witness->cols == std::vector<std::string>{"y1", "y2", "y3"});
    CHECK(!pm_validate(M).valid);  // cached

    auto MG = pm_from_ints(GF2, default_row_labels(3), default_col_labels(4),
                           {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}});
    CHECK(pm_validate(MG).valid);
}

TEST_CASE("invalid matrices also fail through the pivot path") {
    auto U0 = catalog_field("U0");
    auto M = pm_from_ints(U0, default_row_labels(2), default_col_labels(2), {{1, 1}, {1, -1}});
    auto v = pm_validate(M);
    CHECK(!v.valid);
    RingElement two = re_int(U0->ring, 2);
    CHECK((r_eq(v.witness->det, two) || r_eq(v.witness->det, r_neg(two))));
    CHECK_THROWS_AS(pm_pivot(M, 0, 0), UndefinedEntry);
}

TEST_CASE("pivot swaps labels and applies the exchange rule") {
    auto D = catalog_field("D");
    auto M = pm_from_ints(D, default_row_labels(2), default_col_labels(2), {{1, 1}, {1, 2}});
    auto P = pm_pivot(M, "x1", "y1");
    CHECK(P.row_labels == std::vector<std::string>{"y1", "x2"});
    CHECK(P.col_labels == std::vector<std::string>{"x1", "y2"});
    CHECK(pf_is_one(P.a[0][0]));
    CHECK(pf_is_one(P.a[0][1]));
    CHECK(r_raw_string(P.a[1][0].value) == "-1");
    CHECK(pf_is_one(P.a[1][1]));

    auto Z = pm_from_ints(D, default_row_labels(2), default_col_labels(2), {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(pm_pivot(Z, 0, 0), ZeroPivot);
}

TEST_CASE("normalization sets a spanning forest to ones") {
    auto D = catalog_field("D");
    auto M = pm_from_ints(D, default_row_labels(2), default_col_labels(2), {{2, 2}, {2, 4}});
    std::vector<EdgeRef> T{{"x1", "y1"}, {"x1", "y2"}, {"x2", "y1"}};
    auto N = pm_normalize(M, T);
    CHECK(pf_is_one(N.a[0][0]));
    CHECK(pf_is_one(N.a[0][1]));
    CHECK(pf_is_one(N.a[1][0]));
    CHECK(r_raw_string(N.a[1][1].value) == "2");

    auto N2 = pm_normalize(M);  // the default forest picks the same tree here
    CHECK(r_eq(N2.a[1][1].value, N.a[1][1].value));

    CHECK_THROWS_AS(pm_normalize(M, {{"x1", "y1"}, {"x1", "y2"}, {"x2", "y1"}, {"x2", "y2"}}),
                    NotAForest);

    // row/column scaling does not change the scaling key
    PfElement half = pf_from_ring(D, re_rationals(Rat(1, 2)));
    auto S = pm_scale_row(pm_scale_col(M, 1, pf_from_int(D, 2)), 0, half);
    CHECK(pm_scaling_key(S) == pm_scaling_key(M));
}

TEST_CASE("cross ratios of a degenerate block") {
    auto U0 = catalog_field("U0");
    auto M = pm_from_ints(U0, default_row_labels(2), default_col_labels(2), {{1, 1}, {1, 1}});
    auto cr = pm_cross_ratios(M);
    CHECK(cr.complete);
    REQUIRE(cr.values.size() == 2);
    CHECK(pf_is_zero(cr.values[0]));
    CHECK(pf_is_one(cr.values[1]));
}

TEST_CASE("pivot-path determinant agrees with the Laplace path over GF(7)") {
    auto GF7 = catalog_field("GF7");
    std::vector<std::vector<long long>> e4 = {
        {1, 2, 0, 5}, {3, 1, 4, 0}, {0, 6, 1, 2}, {5, 0, 3, 1}};
    auto M = pm_from_ints(GF7, default_row_labels(4), default_col_labels(4), e4);
    CHECK(r_eq(pm_det(M).value, pm_ring_subdet(M, {0, 1, 2, 3}, {0, 1, 2, 3})));

    std::vector<std::vector<long long>> e5 = {{1, 2, 0, 5, 1},
                                              {3, 1, 4, 0, 2},
                                              {0, 6, 1, 2, 3},
                                              {5, 0, 3, 1, 4},
                                              {2, 2, 1, 0, 1}};
    auto M5 = pm_from_ints(GF7, default_row_labels(5), default_col_labels(5), e5);
    CHECK(r_eq(pm_det(M5).value, pm_ring_subdet(M5, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4})));

    CHECK(r_eq(pm_det(pm_transpose(M)).value, pm_det(M).value));
}

TEST_CASE("subdeterminants of proper subsets") {
    auto D = catalog_field("D");
    auto M = pm_from_ints(D, default_row_labels(3), default_col_labels(3),
                          {{1, 1, 0}, {1, 2, 1}, {0, 1, 1}});
    pm_require_valid(M, "test");
    CHECK(pf_is_zero(pm_det(M)));
    CHECK(r_eq(pm_subdet(M, {0, 1}, {0, 1}).value, re_int(D->ring, 1)));
}

TEST_CASE("scaling requires units; deletion keeps labels") {
    auto D = catalog_field("D");
    auto M = pm_from_ints(D, default_row_labels(2), default_col_labels(2), {{1, 1}, {1, 2}});
    auto S = pm_scale_row(M, 0, pf_from_int(D, 2));
    CHECK(r_raw_string(S.a[0][0].value) == "2");
    CHECK_THROWS_AS(pm_scale_col(M, 0, pf_zero(D)), NonUnit);

    auto Dm = pm_delete_col(pm_delete_row(M, 0), 1);
    CHECK(Dm.nrows() == 1);
    CHECK(Dm.ncols() == 1);
    CHECK(Dm.row_labels[0] == "x2");
    CHECK(Dm.col_labels[0] == "y1");
}

TEST_CASE("componentwise matrix products") {
    auto GF3 = catalog_field("GF3");
    auto GF5 = catalog_field("GF5");
    auto P = pf_direct_product({GF3, GF5});
    auto A3 = pm_from_ints(GF3, default_row_labels(2), default_col_labels(2), {{1, 1}, {1, 2}});
    auto A5 = pm_from_ints(GF5, default_row_labels(2), default_col_labels(2), {{1, 1}, {1, 3}});
    auto T = pm_tensor({A3, A5}, P);
    CHECK(T.field == P);
    auto d = pm_det(T);
    CHECK(r_raw_string(d.value.comps[0]) == "1");
    CHECK(r_raw_string(d.value.comps[1]) == "2");
    CHECK(pm_validate(T).valid);
}

TEST_CASE("exhaustive validation is capped") {
    auto U0 = catalog_field("U0");
    std::vector<std::vector<long long>> big(13, std::vector<long long>(13, 1));
    auto M = pm_from_ints(U0, default_row_labels(13), default_col_labels(13), big);
    CHECK_THROWS_AS(pm_validate(M), TooLarge);
}

TEST_CASE("row and column labels must be disjoint and distinct") {
    auto D = catalog_field("D");
    CHECK_THROWS_AS(pm_from_ints(D, {"x1", "x1"}, {"y1", "y2"}, {{1, 1}, {1, 1}}),
                    OverlappingSets);
    CHECK_THROWS_AS(pm_from_ints(D, {"x1", "x2"}, {"x1", "y2"}, {{1, 1}, {1, 1}}),
                    OverlappingSets);
}
