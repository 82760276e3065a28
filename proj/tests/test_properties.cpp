// Randomized structural invariants: determinant laws, pivot identities,
// graph agreement, normalization, morphism transport, and forest-independent
// local lifts, all exercised on random valid matrices.
#include <catch2/catch_amalgamated.hpp>

#include <pfkit/catalog.hpp>
#include <pfkit/lift.hpp>
#include <pfkit/matroid.hpp>

#include "test_support.hpp"

#include <numeric>
#include <string>
#include <vector>

using namespace pfkit;
using namespace pfkit::testsupport;

namespace {

std::vector<int> upto(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

RingElement full_ring_det(const PMatrix& m) {
    return pm_ring_subdet(m, upto(m.nrows()), upto(m.ncols()));
}

Morphism dyadic_to_gf3() {
    auto d = catalog_field("D");
    auto gf3 = gf_field(3);
    return morphism_verify(morphism_make_named(d, gf3, {{"2", pf_from_int(gf3, 2)}}));
}

Morphism dyadic_tensor_hom() {
    auto d = catalog_field("D");
    auto gf3 = gf_field(3), gf5 = gf_field(5);
    Morphism p3 = morphism_verify(morphism_make_named(d, gf3, {{"2", pf_from_int(gf3, 2)}}));
    Morphism p5 = morphism_verify(morphism_make_named(d, gf5, {{"2", pf_from_int(gf5, 2)}}));
    return morphism_tensor(p3, p5);
}

}  // namespace

TEST_CASE("random network matrices are valid over every field") {
    std::vector<PartialFieldPtr> fields = {
        catalog_field("U0"), catalog_field("D"),  catalog_field("S"),
        catalog_field("G"),  catalog_field("Y"),  catalog_field("H2"),
        gf_field(7),         gf_field(8),         pf_direct_product({gf_field(3), gf_field(5)})};
    Rng rng(11);
    for (const auto& f : fields) {
        INFO("field " << f->name);
        for (int t = 0; t < 10; ++t) {
            PMatrix m = random_tu_matrix(f, rng, 4, 5);
            CHECK(pm_validate(m).valid);
        }
    }
}

TEST_CASE("determinant laws hold on random valid matrices") {
    std::vector<PartialFieldPtr> fields = {catalog_field("D"), catalog_field("S"), gf_field(7)};
    Rng rng(23);
    auto all4 = upto(4);
    for (const auto& f : fields) {
        INFO("field " << f->name);
        auto units = unit_pool(f);
        int row_adds_checked = 0;
        for (int t = 0; t < 60; ++t) {
            PMatrix m = random_valid_matrix(f, rng, 4, 4);
            REQUIRE(pm_validate(m).valid);
            RingElement det = full_ring_det(m);

            // the two determinant paths agree
            CHECK(r_eq(pm_subdet(m, all4, all4).value, det));

            // transposition preserves the determinant
            CHECK(r_eq(full_ring_det(pm_transpose(m)), det));

            // swapping two rows negates it
            int i = pick(rng, 4), k = pick(rng, 3);
            if (k >= i) ++k;
            std::vector<int> swapped = all4;
            std::swap(swapped[i], swapped[k]);
            CHECK(r_eq(full_ring_det(pm_submatrix(m, swapped, all4)), r_neg(det)));

            // scaling a row by a unit multiplies it by that unit
            const PfElement& u = units[pick(rng, (int)units.size())];
            CHECK(r_eq(full_ring_det(pm_scale_row(m, i, u)), r_mul(u.value, det)));

            // adding one row to another preserves it, whenever every entry
            // sum is itself defined in the partial field
            auto entries = m.a;
            bool defined = true;
            for (int j = 0; j < 4 && defined; ++j) {
                auto sum = pf_try_from_ring(f, r_add(m.a[i][j].value, m.a[k][j].value));
                if (sum)
                    entries[i][j] = *sum;
                else
                    defined = false;
            }
            if (defined) {
                ++row_adds_checked;
                PMatrix added = pm_make(f, m.row_labels, m.col_labels, entries);
                CHECK(r_eq(full_ring_det(added), det));
            }
        }
        CHECK(row_adds_checked > 0);
    }
}

TEST_CASE("pivot determinant identity holds at every admissible pivot") {
    std::vector<PartialFieldPtr> fields = {catalog_field("D"), catalog_field("S")};
    Rng rng(37);
    auto all4 = upto(4), all3 = upto(3);
    for (const auto& f : fields) {
        INFO("field " << f->name);
        for (int t = 0; t < 25; ++t) {
            PMatrix m = random_valid_matrix(f, rng, 4, 4);
            RingElement det = full_ring_det(m);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (pf_is_zero(m.a[i][j])) continue;
                    PMatrix piv = pm_pivot(m, i, j);
                    CHECK(pm_validate(piv).valid);
                    // det A = (-1)^(i+j) A_ij det(pivot minor)
                    PMatrix schur = pm_delete_col(pm_delete_row(piv, i), j);
                    RingElement rhs =
                        r_mul(m.a[i][j].value, pm_ring_subdet(schur, all3, all3));
                    if ((i + j) % 2) rhs = r_neg(rhs);
                    CHECK(r_eq(rhs, det));
                    // both determinant paths agree after the pivot
                    CHECK(r_eq(pm_subdet(piv, all4, all4).value, full_ring_det(piv)));
                }
        }
    }
}

TEST_CASE("the support graph is the fundamental graph of the matroid") {
    std::vector<PartialFieldPtr> fields = {gf_field(7), catalog_field("D")};
    Rng rng(41);
    for (const auto& f : fields) {
        INFO("field " << f->name);
        for (int t = 0; t < 20; ++t) {
            PMatrix m = random_valid_matrix(f, rng, 4, 5);
            auto fg = matroid_fundamental_graph(matroid_from(m), m.row_labels);
            CHECK(fg.graph.edges == pm_graph(m).edges);
        }
    }
}

TEST_CASE("normalization is scaling-equivalent, valid, and idempotent") {
    std::vector<PartialFieldPtr> fields = {catalog_field("D"), catalog_field("G"),
                                           pf_direct_product({gf_field(3), gf_field(5)})};
    Rng rng(53);
    for (const auto& f : fields) {
        INFO("field " << f->name);
        for (int t = 0; t < 20; ++t) {
            PMatrix m = random_valid_matrix(f, rng, 4, 5);
            PMatrix n = pm_normalize(m);
            CHECK(pm_validate(n).valid);
            CHECK(pm_scaling_key(n) == pm_scaling_key(m));
            PMatrix nn = pm_normalize(n);
            bool same = true;
            for (int i = 0; i < n.nrows(); ++i)
                for (int j = 0; j < n.ncols(); ++j)
                    if (!r_eq(nn.a[i][j].value, n.a[i][j].value)) same = false;
            CHECK(same);
        }
    }
}

TEST_CASE("morphisms transport determinants and matroids") {
    Morphism phi3 = dyadic_to_gf3();
    Rng rng(67);
    auto d = catalog_field("D");
    for (int t = 0; t < 30; ++t) {
        PMatrix m = random_valid_matrix(d, rng, 4, 4);
        PMatrix img = morphism_apply(phi3, m);
        CHECK(pm_validate(img).valid);
        // vanishing determinants match on a random square submatrix
        int k = 1 + pick(rng, 4);
        std::vector<int> rows, cols, rp = upto(4), cp = upto(4);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        rows.assign(rp.begin(), rp.begin() + k);
        cols.assign(cp.begin(), cp.begin() + k);
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        bool zero_src = r_is_zero(pm_ring_subdet(m, rows, cols));
        bool zero_img = r_is_zero(pm_ring_subdet(img, rows, cols));
        CHECK(zero_src == zero_img);
        CHECK(matroid_equal(matroid_from(img), matroid_from(m)));
    }
}

TEST_CASE("local lifts are independent of the forest and project back") {
    Morphism t35 = dyadic_tensor_hom();
    LiftingFunction lf35 = lift_default(t35);
    auto d = catalog_field("D");
    Rng rng(79);
    for (int t = 0; t < 25; ++t) {
        PMatrix pre = random_valid_matrix(d, rng, 3, 4);
        PMatrix img = morphism_apply(t35, pre);
        REQUIRE(pm_validate(img).valid);
        PMatrix a1 = build_local_lift(img, lf35, random_forest(img, rng));
        PMatrix a2 = build_local_lift(img, lf35, random_forest(img, rng));
        CHECK(pm_scaling_key(a1) == pm_scaling_key(a2));
        // the lift projects back to the matrix it lifted
        CHECK(pm_scaling_key(morphism_apply(t35, a1)) == pm_scaling_key(img));
    }
}

TEST_CASE("dual matroid bases are complements on random instances") {
    Rng rng(83);
    auto gf7 = gf_field(7);
    for (int t = 0; t < 15; ++t) {
        PMatrix m = random_valid_matrix(gf7, rng, 4, 4);
        Matroid a = matroid_from(m);
        Matroid dual = detail::matroid_dual(a);
        std::uint32_t full = (1u << a.size()) - 1;
        CHECK(dual.bases.size() == a.bases.size());
        for (std::uint32_t b : a.bases) CHECK(dual.bases.count(full & ~b) == 1);
        CHECK(matroid_equal(detail::matroid_dual(dual), a));
    }
}
