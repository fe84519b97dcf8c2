#include <doctest.h>

#include "wittgamma/wrinkle.hpp"

using namespace wg;

namespace {

std::vector<WrinkledAlgebra> perfect_catalog() {
    FieldSpec f2 = field_spec(2, 1), f3 = field_spec(3, 1);
    FieldSpec f4 = field_spec(2, 2), f8 = field_spec(2, 3), f9 = field_spec(3, 2);
    std::vector<EtaleAlgebra> es = {
        {f2, {f2}}, {f3, {f3}}, {f2, {f4}}, {f2, {f8}},
        {f2, {f2, f2}}, {f2, {f2, f4}}, {f3, {f9}},
    };
    std::vector<WrinkledAlgebra> out;
    for (const auto& E : es) {
        FpAlgebra A = etale_fp_algebra(E);
        WrinkledAlgebra W{A, Subspace{A.module(), {}}, {}, true};
        W.gamma_table.push_back(ModuleElem(A.module()));  // gamma on I = {0}
        W.check_axioms();
        out.push_back(std::move(W));
    }
    return out;
}

}  // namespace

TEST_CASE("witt presentation: Gamma^p_Z(Z/p^m)/I = Z/p^{m+1}") {
    struct Case { uint32_t p, m; };
    for (auto c : std::vector<Case>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}}) {
        WittPresentation wp = witt_from_divided_powers(c.p, c.m);
        CHECK(wp.ok);
        CHECK(wp.quotient_log == c.m + 1);
        // the stated generators all vanish here (k = F_p, rank one)
        CHECK(wp.ideal_log == 0);
    }
}

TEST_CASE("psi2 on polynomial examples") {
    // R = Z/4: perfect quotient, I = 0
    FlatAlgebra r1 = poly_flat_algebra(2, {3, 1});  // Z/4[x]/(x+3) = Z/4
    WrinkledAlgebra w1 = psi2(r1);
    CHECK(w1.I.basis.empty());
    CHECK(w1.frob_surjective);

    // R = Z/4[x]/(x^2 - 2): A = F_2[x]/(x^2), gamma_2(x) = -1 = 1
    FlatAlgebra r2 = poly_flat_algebra(2, {2, 0, 1});  // x^2 + 2 = x^2 - 2 mod 4
    WrinkledAlgebra w2 = psi2(r2);
    REQUIRE(w2.I.basis.size() == 1);
    CHECK(!w2.frob_surjective);
    ModuleElem x = w2.I.basis[0];
    CHECK(w2.gamma_p(x) == w2.A.one);  // gamma_2(x) = 1

    // R = Z/4[x]/(x^2): gamma_2(x) = 0
    FlatAlgebra r3 = poly_flat_algebra(2, {0, 0, 1});
    WrinkledAlgebra w3 = psi2(r3);
    REQUIRE(w3.I.basis.size() == 1);
    CHECK(w3.gamma_p(w3.I.basis[0]).is_zero());
}

TEST_CASE("round trip on the perfect catalog and GR identification") {
    for (const auto& W : perfect_catalog()) {
        std::string detail;
        CHECK_MESSAGE(wrinkle_round_trip(W, &detail), detail);
    }

    // lift(F_q) = GR(p^2, r) via Hensel root
    for (auto pr : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
        FieldSpec fq = field_spec(pr.first, pr.second);
        EtaleAlgebra E{field_spec(pr.first, 1), {fq}};
        FpAlgebra A = etale_fp_algebra(E);
        WrinkledAlgebra W{A, Subspace{A.module(), {}}, {ModuleElem(A.module())}, true};
        LiftResult lr = lift_2flat(W);
        REQUIRE_MESSAGE(lr.ok, lr.detail);
        GaloisRingIso iso = lift_is_galois_ring(lr.lifted, fq);
        CHECK_MESSAGE(iso.ok, iso.detail);
    }
}

TEST_CASE("round trip through psi2 for non-perfect flat algebras") {
    // start 2-flat, pass to wrinkled, lift back: must reproduce a flat algebra
    // whose psi2 is the same wrinkled structure
    for (auto f : std::vector<std::vector<uint32_t>>{{0, 0, 1}, {2, 0, 1}}) {
        FlatAlgebra R = poly_flat_algebra(2, f);
        WrinkledAlgebra W = psi2(R);
        std::string detail;
        CHECK_MESSAGE(wrinkle_round_trip(W, &detail), detail);
    }
    // p = 3 example: Z/9[x]/(x^2) reduced mod p^2 machinery
    FlatAlgebra R3 = poly_flat_algebra(3, {0, 0, 1});
    WrinkledAlgebra W3 = psi2(R3);
    std::string detail;
    CHECK_MESSAGE(wrinkle_round_trip(W3, &detail), detail);
}

TEST_CASE("wrinkle ideal elements map to zero under the presentation map") {
    // the generators lie in Ker(F) where F([x]_p) = X^p: equivalently the
    // round-tripped lift reproduces the A-products; covered by the round trip,
    // here check the ideal is annihilated by the defining surjection onto A
    FlatAlgebra R = poly_flat_algebra(2, {2, 0, 1});
    WrinkledAlgebra W = psi2(R);
    LiftResult lr = lift_2flat(W);
    REQUIRE(lr.ok);
    // |Gamma^p| = |ideal| * |lift|
    GammaBasis gb = GammaBasis::gamma(W.A.module(), W.A.fs.p);
    CHECK(gb.mod().size_log() == lr.ideal_log + 2 * W.A.dim);
}

TEST_CASE("frobenius cocycle: formulas, identities, extension invariants") {
    FieldSpec f2 = field_spec(2, 1), f3 = field_spec(3, 1);
    // p = 2: c(x, y) = xy (1-dimensional check)
    TorsionModule V1 = TorsionModule::free_module(f2, 1, 1);
    CocycleData c2 = frobenius_cocycle(V1);
    ModuleElem e(V1);
    e.coords[0] = GRElem::one(f2, 1);
    auto val = c2.value(e, e);
    REQUIRE(val.size() == 1);
    CHECK(val[0] == GRElem::one(f2, 1));

    // p = 3: c(x, y) = x^2 y + x y^2
    TorsionModule W1 = TorsionModule::free_module(f3, 1, 1);
    CocycleData c3 = frobenius_cocycle(W1);
    ModuleElem u(W1);
    u.coords[0] = GRElem::one(f3, 1);
    auto val3 = c3.value(u, u);  // x = y = 1: 1 + 1 = 2
    REQUIRE(val3.size() == 1);
    CHECK(val3[0] == GRElem::scalar(f3, 1, 2));

    for (uint32_t p : {2u, 3u}) {
        FieldSpec fs = field_spec(p, 1);
        for (uint32_t d = 1; d <= 3; ++d) {
            if (p == 3 && d == 3) continue;  // kept small; covered at d <= 2
            TorsionModule V = TorsionModule::free_module(fs, 1, d);
            CocycleData c = frobenius_cocycle(V);
            CHECK(c.check_identities());
            // extension invariants match Gamma^p(V)
            GammaBasis gb = GammaBasis::gamma(V, p);
            std::vector<uint32_t> expect;
            for (uint32_t e2 : gb.ord)
                if (e2 > 0) expect.push_back(e2);
            std::sort(expect.begin(), expect.end());
            CHECK(c.extension_invariants() == expect);
        }
    }
    // dim 3, p = 3 included per the spec sweep
    TorsionModule V33 = TorsionModule::free_module(f3, 1, 3);
    CocycleData c33 = frobenius_cocycle(V33);
    GammaBasis gb33 = GammaBasis::gamma(V33, 3);
    std::vector<uint32_t> expect33;
    for (uint32_t e2 : gb33.ord)
        if (e2 > 0) expect33.push_back(e2);
    std::sort(expect33.begin(), expect33.end());
    CHECK(c33.extension_invariants() == expect33);
}

TEST_CASE("PD lift criterion") {
    // perfect: I = 0, criterion true, lift = frobenius
    FieldSpec f2 = field_spec(2, 1);
    EtaleAlgebra E{f2, {field_spec(2, 2)}};
    FpAlgebra A = etale_fp_algebra(E);
    WrinkledAlgebra Wp{A, Subspace{A.module(), {}}, {ModuleElem(A.module())}, true};
    FrobLiftReport r1 = frobenius_lift_criterion(Wp);
    CHECK(r1.gamma_preserves_I);
    CHECK(r1.lift_exists);

    // psi2(Z/4[x]/(x^2 - 2)): gamma_2(x) = 1 not in I: criterion false
    WrinkledAlgebra w2 = psi2(poly_flat_algebra(2, {2, 0, 1}));
    FrobLiftReport r2 = frobenius_lift_criterion(w2);
    CHECK(!r2.gamma_preserves_I);
    CHECK(!r2.lift_exists);

    // psi2(Z/4[x]/(x^2)): gamma_2(x) = 0 in I: criterion true with a lift
    WrinkledAlgebra w3 = psi2(poly_flat_algebra(2, {0, 0, 1}));
    FrobLiftReport r3 = frobenius_lift_criterion(w3);
    CHECK(r3.gamma_preserves_I);
    CHECK(r3.lift_exists);
}
