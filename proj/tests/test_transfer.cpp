#include <doctest.h>

#include <random>

#include "wittgamma/transfer.hpp"

using namespace wg;

namespace {

Subspace span_subspace(const TorsionModule& V, const std::vector<ModuleElem>& gens) {
    // reduce to an RREF basis through the enumeration (desk scale)
    for (const Subspace& s : subspaces_of_dim(V, static_cast<uint32_t>(gens.size()))) {
        bool all = true;
        for (const auto& g : gens) all &= subspace_contains(s, g);
        if (all) return s;
    }
    throw std::logic_error("span_subspace: not found");
}

}  // namespace

TEST_CASE("lambda one var: vanishing and wedge examples") {
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V = TorsionModule::free_module(f2, 1, 2);

    // lambda^1 = identity law
    PolyLaw l1 = lambda_one_var(V, {0});
    CHECK(l1 == PolyLaw::identity(V));

    // lambda^2(v) = v ^ F(v) vanishes at rational points
    PolyLaw l2 = lambda_one_var(V, {0, 1});
    for (const auto& v : module_elements(V)) CHECK(l2.evaluate(v.coords).is_zero());

    // v = (omega, 1) over F_4: v ^ F(v) has determinant omega + omega^2 = 1
    FieldSpec f4 = field_spec(2, 2);
    FieldEmbedding emb(f2, f4);
    std::vector<GRElem> pt{GRElem::gen(f4, 1), GRElem::one(f4, 1)};
    ModuleElem val = l2.evaluate_embedded(emb, pt);
    CHECK(val.coords[0] == GRElem::one(f4, 1));

    // vanishing locus of lambda^m: points in a rational subspace of dim < m
    TorsionModule V3 = TorsionModule::free_module(f2, 1, 3);
    PolyLaw l2v3 = lambda_one_var(V3, {0, 1});
    for (const auto& v : module_elements(V3)) CHECK(l2v3.evaluate(v.coords).is_zero());
}

TEST_CASE("det one: product of linear forms, degree, vanishing on hyperplanes") {
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V = TorsionModule::free_module(f2, 1, 2);
    PolyLaw det = det_one(V);
    CHECK(det.degree == 3);  // 1 + q
    // det^1(x, y) = xy(x+y) = x^2 y + x y^2 over F_2
    MPoly expect(f2, 1, 2);
    expect.add_term({2, 1}, GRElem::one(f2, 1));
    expect.add_term({1, 2}, GRElem::one(f2, 1));
    CHECK(det.components()[0] == expect);
    CHECK(det_one_product_check(V));

    // d = 1: det^1 = identity
    TorsionModule L = TorsionModule::free_module(f2, 1, 1);
    CHECK(det_one(L) == PolyLaw::identity(L));

    // vanishes identically on each rational hyperplane
    for (const Subspace& H : subspaces_of_dim(V, 1))
        for (const auto& w : subspace_vectors(H)) CHECK(det.evaluate(w.coords).is_zero());

    for (uint32_t q : {2u, 3u}) {
        TorsionModule V3 = TorsionModule::free_module(field_spec(q, 1), 1, 3);
        CHECK(det_one_product_check(V3));
    }
    CHECK(det_one_product_check(TorsionModule::free_module(field_spec(2, 2), 1, 2)));
}

TEST_CASE("hyperplane transfer: rational evaluations and the F_4 point") {
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V = TorsionModule::free_module(f2, 1, 2);
    // H = {y = 0} = span(e_0)
    Subspace H = span_subspace(V, {ModuleElem::basis(V, 0)});
    PolyLaw T = hyperplane_transfer(H);
    CHECK(T.degree == 2);
    // at rational (1,0) -> (1,0); at (1,1) -> 0
    ModuleElem v10(V, {GRElem::one(f2, 1), GRElem(f2, 1)});
    ModuleElem v11(V, {GRElem::one(f2, 1), GRElem::one(f2, 1)});
    CHECK(from_subspace_coords(H, T.evaluate(v10.coords).coords) == v10);
    CHECK(T.evaluate(v11.coords).is_zero());

    // at (omega, 1) over F_4 -> (omega^2 + omega, 0) = (1, 0)
    FieldSpec f4 = field_spec(2, 2);
    FieldEmbedding emb(f2, f4);
    std::vector<GRElem> pt{GRElem::gen(f4, 1), GRElem::one(f4, 1)};
    ModuleElem img = T.evaluate_embedded(emb, pt);
    CHECK(img.coords[0] == GRElem::one(f4, 1));

    // restriction to H equals F (Prop on T o incl)
    for (const auto& w : subspace_vectors(H)) {
        ModuleElem timg = T.evaluate(w.coords);
        CHECK(from_subspace_coords(H, timg.coords) == w);  // F = id on rational points
    }
}

TEST_CASE("transfer is flag independent and satisfies the cocycle rule") {
    struct Case { uint32_t q, d, c; };
    for (auto cs : std::vector<Case>{{2, 2, 1}, {2, 3, 1}, {2, 3, 2}, {3, 2, 1}, {3, 3, 2}}) {
        FieldSpec fs = field_spec(cs.q, 1);
        TorsionModule V = TorsionModule::free_module(fs, 1, cs.d);
        for (const Subspace& W : subspaces_of_dim(V, cs.d - cs.c)) {
            auto flags = complete_flags(W, V);
            PolyLaw first = transfer_law_via_flag(flags.front());
            for (size_t i = 1; i < flags.size(); ++i)
                CHECK(transfer_law_via_flag(flags[i]) == first);
        }
    }

    // cocycle: T_{Z,W} o T_{W,V} = T_{Z,V} for a line Z inside a plane W in F_2^3
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V = TorsionModule::free_module(f2, 1, 3);
    for (const Subspace& W : subspaces_of_dim(V, 2)) {
        PolyLaw TWV = transfer_law(W);
        for (const Subspace& Zamb : subspaces_of_dim(V, 1)) {
            if (!subspace_contains(W, Zamb.basis[0])) continue;
            PolyLaw TZV = transfer_law(Zamb);
            // Z inside W's coordinates
            TorsionModule Wmod = TorsionModule::free_module(f2, 1, 2);
            Subspace Zin{Wmod, {ModuleElem(Wmod, subspace_coords(W, Zamb.basis[0]))}};
            PolyLaw TZW = transfer_law(Zin);
            PolyLaw comp = TZW.compose(TWV);
            // both są valued in Z-coordinates; align the bases
            // TZV lands in Zamb's RREF coords; comp in Zin's coords over Wmod
            // which is the same one-dimensional space: compare via inclusion
            ModuleMap inc_in(Zin.basis[0].mod, V);
            // comp target gen = Zin basis vector, in ambient coords:
            ModuleElem gen_comp(V);
            {
                ModuleElem inW = Zin.basis[0];
                for (size_t t = 0; t < 2; ++t)
                    gen_comp = gen_comp + W.basis[t].scale(inW.coords[t]);
            }
            ModuleElem gen_direct = Zamb.basis[0];
            // write comp and TZV into ambient coordinates and compare laws
            TorsionModule Zmod = TorsionModule::free_module(f2, 1, 1);
            ModuleMap to_amb_comp(Zmod, V), to_amb_direct(Zmod, V);
            for (size_t j = 0; j < 3; ++j) {
                to_amb_comp.mat.at(j, 0) = gen_comp.coords[j];
                to_amb_direct.mat.at(j, 0) = gen_direct.coords[j];
            }
            CHECK(comp.map_target(to_amb_comp) == TZV.map_target(to_amb_direct));
        }
    }
}

TEST_CASE("division route agrees with the flag route") {
    struct Case { uint32_t q, d, c; };
    for (auto cs : std::vector<Case>{{2, 2, 1}, {2, 3, 1}, {2, 3, 2}, {3, 2, 1}}) {
        FieldSpec fs = field_spec(cs.q, 1);
        TorsionModule V = TorsionModule::free_module(fs, 1, cs.d);
        for (const Subspace& W : subspaces_of_dim(V, cs.d - cs.c)) {
            CHECK(transfer_law_via_division(W) == transfer_law(W));
        }
    }
}

TEST_CASE("exterior transfer: hyperplane formula and retraction independence") {
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V = TorsionModule::free_module(f2, 1, 2);
    // W = H a line: v ^ w -> pi(v) w - pi(w) v
    Subspace H = span_subspace(V, {ModuleElem::basis(V, 0)});
    ChainMatrix lt = exterior_transfer(H, 2, subspace_retraction(H));
    // Lambda^2(F_2^2) is 1-dimensional: e_0 ^ e_1 -> pi(e_0) rho(e_1) - pi(e_1) rho(e_0)
    // with pi the quotient by H: pi(e_0) = 0, pi(e_1) = 1; rho(e_0) = e_0
    REQUIRE(lt.rows() == 1);
    REQUIRE(lt.cols() == 1);
    CHECK(lt.at(0, 0) == GRElem::one(f2, 1));  //-rho(e_0) = e_0 over F_2

    // retraction independence: V = F_2^3, c = 1, m = 2, all retractions
    TorsionModule V3 = TorsionModule::free_module(f2, 1, 3);
    for (const Subspace& W : subspaces_of_dim(V3, 2)) {
        ModuleMap base = subspace_retraction(W);
        ChainMatrix ref = exterior_transfer(W, 2, base);
        // every retraction differs by an arbitrary map on a complement; probe
        // them all: retractions = left inverses of the inclusion
        ModuleMap inc = inclusion_map(W);
        TorsionModule Wmod = TorsionModule::free_module(f2, 1, 2);
        // enumerate all maps V3 -> W, keep the retractions
        auto wvecs = module_elements(Wmod);
        std::vector<size_t> idx(3, 0);
        size_t count = 0;
        while (true) {
            ModuleMap rho(V3, Wmod);
            for (size_t j = 0; j < 3; ++j)
                for (size_t i = 0; i < 2; ++i) rho.mat.at(i, j) = wvecs[idx[j]].coords[i];
            bool is_retraction = rho.compose(inc) == ModuleMap::identity(Wmod);
            if (is_retraction) {
                ++count;
                CHECK(exterior_transfer(W, 2, rho) == ref);
            }
            size_t k = 0;
            for (; k < 3; ++k) {
                if (++idx[k] < wvecs.size()) break;
                idx[k] = 0;
            }
            if (k == 3) break;
        }
        CHECK(count > 1);
    }
}

TEST_CASE("T o incl = F^c across the acceptance sweep") {
    struct Case { uint32_t p, r, d, c; };
    for (auto cs : std::vector<Case>{{2, 1, 2, 1}, {2, 1, 3, 1}, {2, 1, 3, 2}, {3, 1, 2, 1}, {2, 2, 2, 1}}) {
        FieldSpec fs = field_spec(cs.p, cs.r);
        TorsionModule V = TorsionModule::free_module(fs, 1, cs.d);
        for (const Subspace& W : subspaces_of_dim(V, cs.d - cs.c)) {
            PolyLaw T = transfer_law(W);
            // restrict: substitute the parametrization of W
            TorsionModule Wmod = TorsionModule::free_module(fs, 1, W.dim());
            std::vector<MPoly> param;
            for (size_t j = 0; j < V.dim(); ++j) {
                MPoly row(fs, 1, W.dim());
                for (size_t t = 0; t < W.dim(); ++t) {
                    std::vector<uint32_t> e(W.dim(), 0);
                    e[t] = 1;
                    row.add_term(e, W.basis[t].coords[j]);
                }
                param.push_back(std::move(row));
            }
            PolyLaw incl = PolyLaw::from_components(fs, W.dim(), V, 1, param);
            PolyLaw restricted = T.compose(incl);
            CHECK(restricted == PolyLaw::frobenius_power(Wmod, cs.c));
        }
    }
}

TEST_CASE("gamma transfer: rational symbol values and the restriction composite") {
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V = TorsionModule::free_module(f2, 1, 2);
    Subspace W = span_subspace(V, {ModuleElem::basis(V, 0)});
    uint32_t n = 0;
    ModuleMap gt = gamma_transfer(W, n);
    GammaBasis gdom = GammaBasis::gamma(V, 2);
    GammaBasis gcod = GammaBasis::gamma(TorsionModule::free_module(f2, 1, 1), 1);
    // on [v]_2 with v in W: value (v); v rational outside W: 0
    for (const auto& v : module_elements(V)) {
        ModuleElem img = gt.apply(symbol(gdom, v));
        if (subspace_contains(W, v)) {
            ModuleElem expect(gcod.mod(), {v.coords[0]});
            CHECK(img == expect);
        } else {
            CHECK(img.is_zero());
        }
    }
    // GammaT o Gamma(incl) = Gamma(F^c): on W-symbols [w] -> [F w] = [w]
    ModuleMap ginc = gamma_functor(inclusion_map(W), 2);
    ModuleMap composite = gt.compose(ginc);
    GammaBasis gw = GammaBasis::gamma(TorsionModule::free_module(f2, 1, 1), 2);
    // Gamma(F) at degree 2 over W: F = id on the prime field
    // composite [w]_2 -> [w]_1: equals the Frobenius of divided powers
    ModuleMap gfrob = gamma_frobenius(gw, GammaBasis::gamma(TorsionModule::free_module(f2, 1, 1).twisted(1), 1));
    for (size_t j = 0; j < gw.size(); ++j)
        CHECK(composite.mat.at(0, j).reduce(1) == gfrob.mat.at(0, j).reduce(1));
}

TEST_CASE("small transfers: DT/AT formulas, functoriality, cartesian squares") {
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V = TorsionModule::free_module(f2, 1, 2);
    TorsionModule L = TorsionModule::free_module(f2, 1, 1);

    // DT on an injective inclusion: (v) -> (v) if v in W else 0  (certified in
    // construction); AT against the explicit formula
    Subspace W = span_subspace(V, {ModuleElem::basis(V, 0)});
    SmallMap dt = small_descending(W, 1);
    CHECK(dt.dom_n == 2);
    CHECK(dt.cod_n == 1);

    // AT for pi: F_2^2 -> F_2, exhaustive against Prop formulaAT
    ModuleMap pi(V, L);
    pi.mat.at(0, 0) = GRElem::one(f2, 1);
    SmallMap at = small_ascending(pi, 1);
    auto velems = module_elements(V);
    auto lelems = module_elements(L);
    for (size_t wi = 0; wi < lelems.size(); ++wi) {
        // -X_pi + sum over fiber
        std::map<size_t, int64_t> expect;
        for (size_t i = 0; i < velems.size(); ++i) {
            if (pi.apply(velems[i]) == lelems[wi]) expect[i] += 1;
            if (pi.apply(velems[i]).is_zero()) expect[i] -= 1;
        }
        for (auto it = expect.begin(); it != expect.end();)
            it = it->second == 0 ? expect.erase(it) : std::next(it);
        CHECK(at.expr[wi] == expect);
    }

    // T(g o f) = T(f) o T(g): over F_3 for arbitrary maps; over F_2 the X_f
    // terms obstruct compositions that drop image (see the counterexample
    // below), so there we exercise the always-valid classes
    TorsionModule V3 = TorsionModule::free_module(f2, 1, 3);
    std::mt19937_64 rng(71);
    {
        FieldSpec f3s = field_spec(3, 1);
        TorsionModule A = TorsionModule::free_module(f3s, 1, 2);
        TorsionModule B = TorsionModule::free_module(f3s, 1, 2);
        TorsionModule C = TorsionModule::free_module(f3s, 1, 1);
        for (int trial = 0; trial < 8; ++trial) {
            ModuleMap f(A, B), g(B, C);
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j) f.mat.at(i, j) = GRElem::scalar(f3s, 1, rng() % 3);
            for (size_t j = 0; j < 2; ++j) g.mat.at(0, j) = GRElem::scalar(f3s, 1, rng() % 3);
            SmallMap tf = small_transfer(f, 1);
            SmallMap tg = small_transfer(g, 1);
            SmallMap tgf = small_transfer(g.compose(f), 1);
            SmallMap comp = tf.compose(tg);
            CHECK(small_maps_equal(comp, tgf, GRElem::one(f3s, comp.cod_parent().mod().m)));
        }
    }
    // F_2, both maps surjective
    for (int trial = 0; trial < 12; ++trial) {
        ModuleMap f(V3, V);
        ModuleMap g(V, L);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 3; ++j) f.mat.at(i, j) = GRElem::scalar(f2, 1, rng() % 2);
        for (size_t j = 0; j < 2; ++j) g.mat.at(0, j) = GRElem::scalar(f2, 1, rng() % 2);
        // surjectivity checks
        Submodule imf = span_of(V, {f.column(0), f.column(1), f.column(2)});
        if (imf.size_log() != V.size_log()) continue;
        if (g.mat.is_zero()) continue;
        SmallMap tf = small_transfer(f, 1);
        SmallMap tg = small_transfer(g, 1);
        SmallMap tgf = small_transfer(g.compose(f), 1);
        SmallMap comp = tf.compose(tg);
        CHECK(small_maps_equal(comp, tgf, GRElem::one(f2, comp.cod_parent().mod().m)));
    }
    // F_2, both maps injective
    {
        TorsionModule L1 = TorsionModule::free_module(f2, 1, 1);
        ModuleMap f(L1, V);   // e -> e_0
        f.mat.at(0, 0) = GRElem::one(f2, 1);
        ModuleMap g(V, V3);   // inclusion into the first two coordinates
        g.mat.at(0, 0) = GRElem::one(f2, 1);
        g.mat.at(1, 1) = GRElem::one(f2, 1);
        SmallMap tf = small_transfer(f, 1);
        SmallMap tg = small_transfer(g, 1);
        SmallMap tgf = small_transfer(g.compose(f), 1);
        SmallMap comp = tf.compose(tg);
        CHECK(small_maps_equal(comp, tgf, GRElem::one(f2, comp.cod_parent().mod().m)));
    }
    // the documented F_2 counterexample: g o f = 0 but T(f) o T(g) != 0
    {
        ModuleMap f(V3, V);
        f.mat.at(0, 0) = GRElem::one(f2, 1);
        f.mat.at(0, 1) = GRElem::one(f2, 1);   // image = span(e_0), not surjective
        ModuleMap g(V, L);
        g.mat.at(0, 1) = GRElem::one(f2, 1);   // kills the image of f
        SmallMap tf = small_transfer(f, 1);
        SmallMap tg = small_transfer(g, 1);
        SmallMap tgf = small_transfer(g.compose(f), 1);
        SmallMap comp = tf.compose(tg);
        CHECK(!small_maps_equal(comp, tgf, GRElem::one(f2, comp.cod_parent().mod().m)));
    }

    // composite T(f) o Omega(f) = Frob^{r(delta V - delta W)} for injective f
    // (Prop i: start from the small space)
    ModuleMap finc = inclusion_map(W);
    SmallMap tf2 = small_transfer(finc, 1);          // smallOmega^3(V) -> smallOmega^2(W)
    SmallMap of2 = small_omega_of(finc, tf2.dom_n);  // smallOmega^3(W) -> smallOmega^3(V)
    SmallMap comp2 = tf2.compose(of2);               // smallOmega^3(W) -> smallOmega^2(W)
    SmallMap frob_cmp = small_frobenius_power(finc.dom, comp2.cod_n, 1);
    CHECK(small_maps_equal(comp2, frob_cmp, GRElem::one(f2, comp2.cod_parent().mod().m)));

    // cartesian squares (Prop formulatransfer2): pullback of g1: W2 -> Z and
    // g2: W1 -> Z
    TorsionModule Z = L;
    for (int trial = 0; trial < 8; ++trial) {
        ModuleMap g1(V, Z), g2(V, Z);
        for (size_t j = 0; j < 2; ++j) {
            g1.mat.at(0, j) = GRElem::scalar(f2, 1, rng() % 2);
            g2.mat.at(0, j) = GRElem::scalar(f2, 1, rng() % 2);
        }
        // the degree bookkeeping of the Prop needs the pullback of surjections
        if (g1.mat.is_zero() || g2.mat.is_zero()) continue;
        // pullback P = {(x, y) : g1 x = g2 y} inside V + V
        TorsionModule VV = TorsionModule::free_module(f2, 1, 4);
        std::vector<ModuleElem> pbasis;
        for (const auto& x : module_elements(V))
            for (const auto& y : module_elements(V)) {
                if (!(g1.apply(x) == g2.apply(y))) continue;
                std::vector<GRElem> c = x.coords;
                c.insert(c.end(), y.coords.begin(), y.coords.end());
                pbasis.push_back(ModuleElem(VV, c));
            }
        Submodule P = span_of(VV, pbasis);
        uint32_t pdim = static_cast<uint32_t>(P.size_log());
        TorsionModule Pmod = TorsionModule::free_module(f2, 1, pdim);
        // projections from the pullback
        std::vector<ModuleElem> pgens;
        {
            // extract a basis from the Howell span
            for (size_t rr = 0; rr < P.span.mat.rows(); ++rr)
                pgens.push_back(unembed(VV, P.span.mat.row(rr)));
        }
        ModuleMap f1(Pmod, V), f2m(Pmod, V);
        for (size_t j = 0; j < pdim; ++j) {
            for (size_t i = 0; i < 2; ++i) {
                f1.mat.at(i, j) = pgens[j].coords[i];      // first factor
                f2m.mat.at(i, j) = pgens[j].coords[2 + i]; // second factor
            }
        }
        // Omega(f2) o T(f1) = T(g2) o Omega(g1)
        SmallMap t_f1 = small_transfer(f1, 1);
        SmallMap o_f2 = small_omega_of(f2m, t_f1.cod_n);
        SmallMap lhs = o_f2.compose(t_f1);
        uint32_t base_n = t_f1.dom_n - 1 * V.dim() * 0;  // dom_n = 1 + r delta(V)... recompute
        // T(g2): smallOmega^{\tilde n + r delta(Z)}(Z) -> smallOmega^{\tilde n + r delta(W1)}(W1)
        // align: lhs dom = smallOmega^{1 + r delta(V)}(V)... use g1 side:
        SmallMap o_g1 = small_omega_of(g1, t_f1.dom_n);
        SmallMap t_g2 = small_transfer(g2, t_f1.dom_n - 1);  // base so that dom degrees align
        (void)base_n;
        SmallMap rhs = t_g2.compose(o_g1);
        CHECK(small_maps_equal(lhs, rhs, GRElem::one(f2, lhs.cod_parent().mod().m)));
    }

    // X_f vanishes when |k| >= 3
    FieldSpec f3 = field_spec(3, 1);
    TorsionModule V3b = TorsionModule::free_module(f3, 1, 2);
    TorsionModule L3 = TorsionModule::free_module(f3, 1, 1);
    ModuleMap pi3(V3b, L3);
    pi3.mat.at(0, 0) = GRElem::one(f3, 1);
    GammaBasis xgb = GammaBasis::omega(V3b, 1 + 1);
    ModuleElem xf(xgb.mod());
    for (const auto& v : module_elements(V3b))
        if (pi3.apply(v).is_zero()) xf = xf + symbol(xgb, v);
    CHECK(xf.is_zero());
    FieldSpec f4 = field_spec(2, 2);
    TorsionModule V4 = TorsionModule::free_module(f4, 1, 2);
    TorsionModule L4 = TorsionModule::free_module(f4, 1, 1);
    ModuleMap pi4(V4, L4);
    pi4.mat.at(0, 0) = GRElem::one(f4, 1);
    GammaBasis xgb4 = GammaBasis::omega(V4, 1 + 2);
    ModuleElem xf4(xgb4.mod());
    for (const auto& v : module_elements(V4))
        if (pi4.apply(v).is_zero()) xf4 = xf4 + symbol(xgb4, v);
    CHECK(xf4.is_zero());
}

TEST_CASE("integral formulas") {
    // polynomial-law Frobenius integral: (q,d,c) small sweep
    struct Case { uint32_t p, r, d, c; };
    for (auto cs : std::vector<Case>{{2, 1, 2, 1}, {2, 1, 3, 1}, {2, 1, 3, 2}, {3, 1, 2, 1}}) {
        TorsionModule V = TorsionModule::free_module(field_spec(cs.p, cs.r), 1, cs.d);
        IntegralReport rep = frobenius_integral_law(V, cs.c);
        CHECK(rep.ok);
    }
    // |Gr_{F_2}(1,2)| = 3 = 1 mod 2
    CHECK(grassmannian_count(2, 1, 2) == 3);

    // small-Omega integral formulas
    FieldSpec f2 = field_spec(2, 1);
    TorsionModule V2 = TorsionModule::free_module(f2, 1, 2);
    CHECK(frobenius_integral_small(V2, 1, 1).ok);
    CHECK(verschiebung_integral_small(V2, 1, 1).ok);
}

TEST_CASE("degree guard rejects oversized laws") {
    FieldSpec f5 = field_spec(5, 1);
    TorsionModule V = TorsionModule::free_module(f5, 1, 4);
    CHECK_THROWS_AS(det_one(V), DegreeGuardError);
}
