#include "wittgamma/wrinkle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wg {

namespace {

constexpr size_t kAlgebraCap = 512;  // elements enumerated exhaustively

// The ring Gamma^p_Z(M) for a Z_p-module algebra: product [x]_p [y]_p = [xy]_p
// extended bilinearly through the divided-power pairing machinery.
struct GammaRing {
    GammaBasis gb;
    std::vector<std::vector<ModuleElem>> mul;  // per basis pair
    ModuleElem one;

    ModuleElem multiply(const ModuleElem& x, const ModuleElem& y) const {
        ModuleElem out(gb.mod());
        for (size_t i = 0; i < gb.size(); ++i) {
            if (x.coords[i].is_zero()) continue;
            for (size_t j = 0; j < gb.size(); ++j) {
                if (y.coords[j].is_zero()) continue;
                ModuleElem term = mul[i][j];
                for (size_t k = 0; k < term.coords.size(); ++k) {
                    uint32_t lvl = term.coords[k].level();
                    term.coords[k] =
                        term.coords[k] * at_level(x.coords[i], lvl) * at_level(y.coords[j], lvl);
                }
                out = out + term;
            }
        }
        return out;
    }
};

GammaRing gamma_ring(const TorsionModule& M, const std::vector<std::vector<ModuleElem>>& multable,
                     const ModuleElem& one) {
    GammaBasis gb = GammaBasis::gamma(M, M.fs.p);
    auto table = gamma_bilinear(gb, gb, gb, multable);
    return GammaRing{gb, std::move(table), symbol(gb, one)};
}

}  // namespace

ModuleElem FpAlgebra::multiply(const ModuleElem& x, const ModuleElem& y) const {
    ModuleElem out(module());
    for (size_t i = 0; i < dim; ++i) {
        if (x.coords[i].is_zero()) continue;
        for (size_t j = 0; j < dim; ++j) {
            if (y.coords[j].is_zero()) continue;
            out = out + mul[i][j].scale(x.coords[i] * y.coords[j]);
        }
    }
    return out;
}

ModuleElem FpAlgebra::power(const ModuleElem& x, uint64_t e) const {
    ModuleElem out = one;
    for (uint64_t i = 0; i < e; ++i) out = multiply(out, x);
    return out;
}

ModuleMap FpAlgebra::frobenius() const {
    ModuleMap f(module(), module());
    for (size_t j = 0; j < dim; ++j) {
        ModuleElem ej = ModuleElem::basis(module(), j);
        ModuleElem pj = power(ej, fs.p);
        for (size_t i = 0; i < dim; ++i) f.mat.at(i, j) = pj.coords[i];
    }
    return f;
}

void FpAlgebra::check_axioms() const {
    TorsionModule M = module();
    for (size_t i = 0; i < dim; ++i) {
        ModuleElem ei = ModuleElem::basis(M, i);
        if (!(multiply(one, ei) == ei)) throw std::invalid_argument("FpAlgebra: unit fails");
        for (size_t j = 0; j < dim; ++j) {
            ModuleElem ej = ModuleElem::basis(M, j);
            if (!(multiply(ei, ej) == multiply(ej, ei)))
                throw std::invalid_argument("FpAlgebra: not commutative");
            for (size_t k = 0; k < dim; ++k) {
                ModuleElem ek = ModuleElem::basis(M, k);
                if (!(multiply(multiply(ei, ej), ek) == multiply(ei, multiply(ej, ek))))
                    throw std::invalid_argument("FpAlgebra: not associative");
            }
        }
    }
}

FpAlgebra etale_fp_algebra(const EtaleAlgebra& E) {
    TorsionModule M = etale_module(E, 1);
    FpAlgebra A{E.base, static_cast<uint32_t>(M.dim()), {}, ModuleElem(M)};
    for (size_t i = 0; i < M.dim(); ++i) {
        A.mul.emplace_back();
        for (size_t j = 0; j < M.dim(); ++j) {
            auto ci = coords_to_etale(E, 1, ModuleElem::basis(M, i));
            auto cj = coords_to_etale(E, 1, ModuleElem::basis(M, j));
            std::vector<GRElem> prod;
            for (size_t t = 0; t < ci.size(); ++t) prod.push_back(ci[t] * cj[t]);
            A.mul[i].push_back(etale_to_coords(E, 1, prod));
        }
    }
    std::vector<GRElem> one;
    for (const auto& c : E.components) one.push_back(GRElem::one(c, 1));
    A.one = etale_to_coords(E, 1, one);
    A.check_axioms();
    return A;
}

namespace {

template <typename Alg>
Alg poly_algebra(uint32_t p, const std::vector<uint32_t>& f, uint32_t level) {
    // note: the caller sets dim/rank and runs check_axioms
    // basis 1, x, ..., x^{deg-1}; multiplication reduced by the monic f
    FieldSpec fs = field_spec(p, 1);
    uint32_t d = static_cast<uint32_t>(f.size()) - 1;
    if (f.back() != 1) throw std::invalid_argument("poly_algebra: monic polynomial required");
    Alg A;
    A.fs = fs;
    TorsionModule M(fs, level, std::vector<uint32_t>(d, 0));
    uint64_t mod = pow_u64(p, level);
    auto reduce = [&](std::vector<uint64_t> c) {
        for (size_t i = c.size(); i-- > d;) {
            uint64_t t = c[i] % mod;
            if (!t) continue;
            c[i] = 0;
            for (uint32_t j = 0; j < d; ++j)
                c[i - d + j] = (c[i - d + j] + (mod - t * f[j] % mod)) % mod;
        }
        c.resize(d);
        return c;
    };
    for (uint32_t i = 0; i < d; ++i) {
        A.mul.emplace_back();
        for (uint32_t j = 0; j < d; ++j) {
            std::vector<uint64_t> c(i + j + 1, 0);
            c[i + j] = 1;
            auto red = reduce(std::move(c));
            std::vector<GRElem> coords;
            for (uint32_t t = 0; t < d; ++t) coords.push_back(GRElem::scalar(fs, level, red[t]));
            A.mul[i].push_back(ModuleElem(M, coords));
        }
    }
    ModuleElem one(M);
    one.coords[0] = GRElem::one(fs, level);
    A.one = one;
    return A;
}

}  // namespace

FpAlgebra poly_fp_algebra(uint32_t p, const std::vector<uint32_t>& f) {
    FpAlgebra A = poly_algebra<FpAlgebra>(p, f, 1);
    A.dim = static_cast<uint32_t>(f.size()) - 1;
    A.check_axioms();
    return A;
}

FlatAlgebra poly_flat_algebra(uint32_t p, const std::vector<uint32_t>& f) {
    FlatAlgebra A = poly_algebra<FlatAlgebra>(p, f, 2);
    A.rank = static_cast<uint32_t>(f.size()) - 1;
    A.check_axioms();
    return A;
}

ModuleElem FlatAlgebra::multiply(const ModuleElem& x, const ModuleElem& y) const {
    ModuleElem out(module());
    for (size_t i = 0; i < rank; ++i) {
        if (x.coords[i].is_zero()) continue;
        for (size_t j = 0; j < rank; ++j) {
            if (y.coords[j].is_zero()) continue;
            out = out + mul[i][j].scale(x.coords[i] * y.coords[j]);
        }
    }
    return out;
}

ModuleElem FlatAlgebra::power(const ModuleElem& x, uint64_t e) const {
    ModuleElem out = one;
    for (uint64_t i = 0; i < e; ++i) out = multiply(out, x);
    return out;
}

void FlatAlgebra::check_axioms() const {
    TorsionModule M = module();
    for (size_t i = 0; i < rank; ++i) {
        ModuleElem ei = ModuleElem::basis(M, i);
        if (!(multiply(one, ei) == ei)) throw std::invalid_argument("FlatAlgebra: unit fails");
        for (size_t j = 0; j < rank; ++j) {
            ModuleElem ej = ModuleElem::basis(M, j);
            if (!(multiply(ei, ej) == multiply(ej, ei)))
                throw std::invalid_argument("FlatAlgebra: not commutative");
            for (size_t k = 0; k < rank; ++k) {
                ModuleElem ek = ModuleElem::basis(M, k);
                if (!(multiply(multiply(ei, ej), ek) == multiply(ei, multiply(ej, ek))))
                    throw std::invalid_argument("FlatAlgebra: not associative");
            }
        }
    }
}

FpAlgebra FlatAlgebra::reduction() const {
    FpAlgebra A{fs, rank, {}, ModuleElem()};
    TorsionModule M = A.module();
    for (size_t i = 0; i < rank; ++i) {
        A.mul.emplace_back();
        for (size_t j = 0; j < rank; ++j) {
            std::vector<GRElem> c;
            for (size_t t = 0; t < rank; ++t) c.push_back(mul[i][j].coords[t].reduce(1));
            A.mul[i].push_back(ModuleElem(M, c));
        }
    }
    std::vector<GRElem> oc;
    for (size_t t = 0; t < rank; ++t) oc.push_back(one.coords[t].reduce(1));
    A.one = ModuleElem(M, oc);
    return A;
}

ModuleElem WrinkledAlgebra::gamma_p(const ModuleElem& x) const {
    auto vecs = subspace_vectors(I);
    for (size_t i = 0; i < vecs.size(); ++i)
        if (vecs[i] == x) return gamma_table[i];
    throw std::invalid_argument("gamma_p: element not in Ker(Frob)");
}

void WrinkledAlgebra::check_axioms() const {
    uint32_t p = A.fs.p;
    auto ivecs = subspace_vectors(I);
    auto elems = module_elements(A.module());
    if (elems.size() > kAlgebraCap) throw std::invalid_argument("WrinkledAlgebra: algebra cap");
    // gamma_i(x) = x^i / i! for i < p
    auto gamma_low = [&](const ModuleElem& x, uint32_t i) {
        if (i == 0) return A.one;
        uint64_t inv_fact = mod_inv_u64(static_cast<uint64_t>(factorial(i) % p), p);
        return A.power(x, i).scale_u64(inv_fact);
    };
    for (const auto& x : ivecs) {
        for (const auto& a : elems) {
            ModuleElem lhs = gamma_p(A.multiply(a, x));
            ModuleElem rhs = A.multiply(A.power(a, p), gamma_p(x));
            if (!(lhs == rhs)) throw std::invalid_argument("wrinkle axiom gamma_p(ax) = a^p gamma_p(x) fails");
        }
        for (const auto& y : ivecs) {
            ModuleElem lhs = gamma_p(x + y);
            ModuleElem rhs(A.module());
            for (uint32_t i = 0; i <= p; ++i) {
                ModuleElem gi = (i == p) ? gamma_p(x) : gamma_low(x, i);
                ModuleElem gj = (p - i == p) ? gamma_p(y) : gamma_low(y, p - i);
                rhs = rhs + A.multiply(gi, gj);
            }
            if (!(lhs == rhs)) throw std::invalid_argument("wrinkle addition law fails");
        }
    }
}

WrinkledAlgebra psi2(const FlatAlgebra& R) {
    FpAlgebra A = R.reduction();
    A.check_axioms();
    uint32_t p = R.fs.p;
    ModuleMap frob = A.frobenius();
    HowellForm ker = kernel_span(frob);
    Subspace I{A.module(), {}};
    for (size_t i = 0; i < ker.mat.rows(); ++i) I.basis.push_back(unembed(A.module(), ker.mat.row(i)));
    // surjectivity of Frobenius
    SpanBuilder img(A.fs, 1, A.dim);
    for (size_t j = 0; j < A.dim; ++j) img.insert(embed_elem(frob.column(j)));
    WrinkledAlgebra W{A, I, {}, img.size_log() == A.dim};
    for (const auto& x : subspace_vectors(I)) {
        // lift X, compute X^p = pY, gamma_p(x) = -(Y mod p)
        ModuleElem X(R.module());
        for (size_t t = 0; t < A.dim; ++t) X.coords[t] = x.coords[t].lift(2);
        ModuleElem Xp = R.power(X, p);
        ModuleElem y(A.module());
        for (size_t t = 0; t < A.dim; ++t) {
            if (Xp.coords[t].valuation() < 1)
                throw std::logic_error("psi2: X^p not divisible by p for x in Ker(Frob)");
            y.coords[t] = Xp.coords[t].div_pow_p(1);
        }
        W.gamma_table.push_back(-y);
    }
    W.check_axioms();
    return W;
}

namespace {

// ideal generators of the wrinkle presentation, for families of size <= fam
std::vector<ModuleElem> wrinkle_ideal_generators(const WrinkledAlgebra& W, const GammaRing& ring,
                                                 uint32_t fam) {
    const FpAlgebra& A = W.A;
    uint32_t p = A.fs.p;
    auto elems = module_elements(A.module());
    if (elems.size() > kAlgebraCap) throw std::invalid_argument("lift_2flat: algebra cap");
    std::vector<ModuleElem> gens;
    auto in_I = [&](const ModuleElem& x) { return A.power(x, p).is_zero(); };
    // m = 2 family (contains m = 1 at y = 0):
    //   [x]_p + [y]_p with x + y in I and
    //   -gamma_p(x+y) = sum_{0<i<p} C_{i,p-i} x^i y^{p-i}
    for (const auto& x : elems)
        for (const auto& y : elems) {
            ModuleElem s = x + y;
            if (!in_I(s)) continue;
            ModuleElem rhs(A.module());
            for (uint32_t i = 1; i < p; ++i) {
                bigint Cb = multinomial({i, p - i}) / p;  // exact: v_p(binom) = 1
                ModuleElem term = A.multiply(A.power(x, i), A.power(y, p - i));
                rhs = rhs + term.scale_u64(static_cast<uint64_t>(Cb % p));
            }
            if (!((-W.gamma_p(s)) == rhs)) continue;
            gens.push_back(symbol(ring.gb, x) + symbol(ring.gb, y));
        }
    if (fam >= 3) {
        for (const auto& x : elems)
            for (const auto& y : elems)
                for (const auto& z : elems) {
                    ModuleElem s = x + y + z;
                    if (!in_I(s)) continue;
                    ModuleElem rhs(A.module());
                    for (const auto& C3 : compositions(p, 3)) {
                        if (C3[0] >= p || C3[1] >= p || C3[2] >= p) continue;
                        bigint Cb = multinomial({C3[0], C3[1], C3[2]}) / p;
                        ModuleElem term = A.multiply(
                            A.multiply(A.power(x, C3[0]), A.power(y, C3[1])), A.power(z, C3[2]));
                        rhs = rhs + term.scale_u64(static_cast<uint64_t>(Cb % p));
                    }
                    if (!((-W.gamma_p(s)) == rhs)) continue;
                    gens.push_back(symbol(ring.gb, x) + symbol(ring.gb, y) + symbol(ring.gb, z));
                }
    }
    return gens;
}

SpanBuilder ideal_span(const WrinkledAlgebra& W, const GammaRing& ring,
                       const std::vector<ModuleElem>& gens) {
    // close under the ring action: multiply by every pure symbol (symbols
    // additively generate the ring since |k| = p)
    SpanBuilder sb(W.A.fs, ring.gb.mod().m, ring.gb.size());
    auto elems = module_elements(W.A.module());
    for (const auto& g : gens) {
        for (const auto& a : elems) sb.insert(embed_elem(ring.multiply(g, symbol(ring.gb, a))));
    }
    return sb;
}

}  // namespace

LiftResult lift_2flat(const WrinkledAlgebra& W) {
    LiftResult res;
    const FpAlgebra& A = W.A;
    uint32_t p = A.fs.p, d = A.dim;
    W.check_axioms();
    // non-surjective Frobenius inputs are accepted; the certificates decide
    GammaRing ring = gamma_ring(A.module(), A.mul, A.one);
    for (uint32_t fam = 2; fam <= 3; ++fam) {
        auto gens = wrinkle_ideal_generators(W, ring, fam);
        SpanBuilder sb = ideal_span(W, ring, gens);
        HowellForm ideal = sb.finish();
        res.ideal_log = ideal.span_size_log();
        res.generator_family = fam;
        // quotient must be free of rank d over Z/p^2
        Submodule sub{ring.gb.mod(), ideal};
        TorsionModule quot = sub.quotient();
        std::vector<uint32_t> sig = quot.signature();
        uint64_t free_count = 0;
        bool clean = true;
        for (uint32_t w : sig) {
            if (w == 0)
                ++free_count;
            else if (w != 2)
                clean = false;  // a factor of order p: not free
        }
        if (!clean || free_count != d) {
            if (fam == 3) {
                res.detail = "quotient is not a free Z/p^2-module of rank d (family m<=3)";
                return res;
            }
            continue;
        }
        // basis: Frobenius preimages of the A-basis
        ModuleMap frob = A.frobenius();
        ChainMatrix frows(A.fs, 1, d, d);
        for (size_t j = 0; j < d; ++j)
            for (size_t i = 0; i < d; ++i) frows.at(j, i) = frob.mat.at(i, j);
        LeftSolver fsolve(frows);
        std::vector<ModuleElem> f_basis;
        for (size_t i = 0; i < d; ++i) {
            auto sol = fsolve.solve(ModuleElem::basis(A.module(), i).coords);
            if (!sol) {
                res.detail = "Frobenius is not surjective: no preimage for a basis vector";
                return res;
            }
            f_basis.push_back(ModuleElem(A.module(), *sol));
        }
        // solve structure constants modulo the ideal
        ChainMatrix rows(A.fs, 2, 0, ring.gb.size());
        for (size_t i = 0; i < d; ++i) rows.append_row(embed_elem(symbol(ring.gb, f_basis[i])));
        for (size_t r = 0; r < ideal.mat.rows(); ++r) rows.append_row(ideal.mat.row(r));
        LeftSolver solver(rows);
        TorsionModule Rmod = TorsionModule::free_module(A.fs, 2, d);
        auto express = [&](const ModuleElem& target) -> std::optional<ModuleElem> {
            auto sol = solver.solve(embed_elem(target));
            if (!sol) return std::nullopt;
            ModuleElem out(Rmod);
            for (size_t t = 0; t < d; ++t) out.coords[t] = (*sol)[t];
            return out;
        };
        FlatAlgebra R;
        R.fs = A.fs;
        R.rank = d;
        bool solved = true;
        for (size_t i = 0; i < d && solved; ++i) {
            R.mul.emplace_back();
            for (size_t j = 0; j < d && solved; ++j) {
                auto c = express(symbol(ring.gb, A.multiply(f_basis[i], f_basis[j])));
                if (!c) solved = false;
                else R.mul[i].push_back(*c);
            }
        }
        auto onec = express(ring.one);
        if (!solved || !onec) {
            res.detail = "quotient basis does not express the products";
            return res;
        }
        R.one = *onec;
        R.check_axioms();
        // reduction must match A in the chosen basis: pi(X_i) = f_i^p = e_i
        FpAlgebra Ared = R.reduction();
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                if (!(Ared.mul[i][j] == A.mul[i][j])) {
                    res.detail = "reduction of the lift differs from A";
                    return res;
                }
        if (!(Ared.one == A.one)) {
            res.detail = "reduction of the unit differs";
            return res;
        }
        res.lifted = std::move(R);
        res.ok = true;
        return res;
    }
    return res;
}

bool wrinkle_round_trip(const WrinkledAlgebra& W, std::string* detail) {
    LiftResult lr = lift_2flat(W);
    if (!lr.ok) {
        if (detail) *detail = "lift failed: " + lr.detail;
        return false;
    }
    WrinkledAlgebra back = psi2(lr.lifted);
    // same algebra (reduction was checked inside lift_2flat); compare I and
    // the gamma tables
    if (back.I.basis.size() != W.I.basis.size()) {
        if (detail) *detail = "Ker(Frob) changed across the round trip";
        return false;
    }
    auto vecs = subspace_vectors(W.I);
    for (size_t i = 0; i < vecs.size(); ++i) {
        if (!(back.gamma_p(vecs[i]) == W.gamma_p(vecs[i]))) {
            if (detail) *detail = "gamma_p changed across the round trip";
            return false;
        }
    }
    return true;
}

GaloisRingIso lift_is_galois_ring(const FlatAlgebra& R, const FieldSpec& target) {
    GaloisRingIso out;
    if (R.rank != target.r) {
        out.detail = "rank mismatch";
        return out;
    }
    // Hensel-lift a root of the target modulus inside R, starting from the
    // generator of the residue field (basis vector 1 when r >= 2)
    TorsionModule M = R.module();
    auto eval_modulus = [&](const ModuleElem& z) {
        ModuleElem acc(M);
        ModuleElem power = R.one;
        for (uint32_t j = 0; j <= target.r; ++j) {
            acc = acc + power.scale_u64(target.modulus[j]);
            power = R.multiply(power, z);
        }
        return acc;
    };
    auto eval_derivative = [&](const ModuleElem& z) {
        ModuleElem acc(M);
        ModuleElem power = R.one;
        for (uint32_t j = 1; j <= target.r; ++j) {
            acc = acc + power.scale_u64(uint64_t(j) * target.modulus[j] % pow_u64(target.p, 2));
            power = R.multiply(power, z);
        }
        return acc;
    };
    ModuleElem zeta = target.r >= 2 ? ModuleElem::basis(M, 1) : ModuleElem(M);
    if (target.r == 1) {
        // a root of x + c is -c
        uint64_t c = target.modulus[0];
        zeta = R.one.scale_u64((pow_u64(target.p, 2) - c) % pow_u64(target.p, 2));
    }
    for (int iter = 0; iter < 4 && !eval_modulus(zeta).is_zero(); ++iter) {
        ModuleElem fz = eval_modulus(zeta);
        ModuleElem dz = eval_derivative(zeta);
        // invert dz in R: solve u * M_dz = 1
        ChainMatrix mult(R.fs, 2, R.rank, R.rank);
        for (size_t j = 0; j < R.rank; ++j) {
            ModuleElem img = R.multiply(ModuleElem::basis(M, j), dz);
            for (size_t i = 0; i < R.rank; ++i) mult.at(j, i) = img.coords[i];
        }
        auto inv = solve_left(mult, R.one.coords);
        if (!inv) {
            out.detail = "derivative not invertible";
            return out;
        }
        ModuleElem dzi(M, *inv);
        zeta = zeta - R.multiply(fz, dzi);
    }
    if (!eval_modulus(zeta).is_zero()) {
        out.detail = "no root of the modulus found by Hensel lifting";
        return out;
    }
    // powers of zeta must form a free basis
    SpanBuilder sb(R.fs, 2, R.rank);
    ModuleElem power = R.one;
    for (uint32_t j = 0; j < target.r; ++j) {
        sb.insert(embed_elem(power));
        power = R.multiply(power, zeta);
    }
    if (sb.size_log() != uint64_t(2) * target.r) {
        out.detail = "powers of the root do not form a free basis";
        return out;
    }
    out.ok = true;
    return out;
}

WittPresentation witt_from_divided_powers(uint32_t p, uint32_t m) {
    WittPresentation out;
    out.p = p;
    out.m = m;
    FieldSpec fs = field_spec(p, 1);
    TorsionModule V(fs, m, {0});
    std::vector<std::vector<ModuleElem>> multable{{ModuleElem::basis(V, 0)}};
    GammaRing ring = gamma_ring(V, multable, ModuleElem::basis(V, 0));
    // span the stated generators [x]_1 [y]_{p-1} - [x y^{p-1}]_1 [1]_{p-1}
    GammaBasis g1 = GammaBasis::gamma(V, 1);
    GammaBasis gp1 = GammaBasis::gamma(V, p - 1);
    SpanBuilder sb(fs, ring.gb.mod().m, ring.gb.size());
    auto elems = module_elements(V);
    for (const auto& x : elems)
        for (const auto& y : elems) {
            ModuleElem a = basis_mul(g1, symbol(g1, x), gp1, symbol(gp1, y), ring.gb);
            GRElem xy = x.coords[0] * y.coords[0].pow(p - 1);
            ModuleElem xye(V, {xy});
            ModuleElem b = basis_mul(g1, symbol(g1, xye), gp1, symbol(gp1, ModuleElem::basis(V, 0)),
                                     ring.gb);
            sb.insert(embed_elem(a - b));
        }
    out.ideal_log = sb.size_log();
    out.quotient_log = ring.gb.mod().size_log() - out.ideal_log;
    // ring isomorphism onto W_{m+1}(F_p): c [e]_p -> c, with symbols going to
    // tau_bar; verify multiplicativity and the additive order of 1
    bool iso = out.quotient_log == m + 1;
    ModuleElem one_sym = ring.one;
    iso = iso && one_sym.coords[0] == GRElem::one(fs, m + 1);
    for (const auto& x : elems)
        for (const auto& y : elems) {
            ModuleElem prod = ring.multiply(symbol(ring.gb, x), symbol(ring.gb, y));
            GRElem lhs = prod.coords[0];
            GRElem rhs = tau_bar(x.coords[0], 1) * tau_bar(y.coords[0], 1);
            iso = iso && lhs == rhs;
            // additivity of the correspondence: [x]_p + [y]_p maps to
            // tau_bar(x) + tau_bar(y) by construction of the coefficient map
        }
    out.ring_iso = iso;
    out.ok = iso;
    if (!iso) out.detail = "certification failed";
    return out;
}

std::vector<GRElem> CocycleData::value(const ModuleElem& x, const ModuleElem& y) const {
    uint32_t p = V.fs.p;
    size_t d = V.dim();
    MPoly linx(V.fs, 1, d), liny(V.fs, 1, d);
    for (size_t j = 0; j < d; ++j) {
        std::vector<uint32_t> e(d, 0);
        e[j] = 1;
        linx.add_term(e, x.coords[j]);
        liny.add_term(e, y.coords[j]);
    }
    MPoly acc(V.fs, 1, d);
    for (uint32_t i = 1; i < p; ++i) {
        uint64_t inv = mod_inv_u64(i, p);
        uint64_t coef = (i % 2 == 1) ? inv : (p - inv) % p;  // (-1)^{i-1}/i
        acc = acc + (linx.pow(i) * liny.pow(p - i)).scale(GRElem::scalar(V.fs, 1, coef));
    }
    std::vector<GRElem> out(monomials.size(), GRElem(V.fs, 1));
    for (const auto& [e, c] : acc.terms()) {
        Composition A(e.begin(), e.end());
        auto it = std::lower_bound(monomials.begin(), monomials.end(), A);
        out[static_cast<size_t>(it - monomials.begin())] = c;
    }
    return out;
}

bool CocycleData::check_identities() const {
    auto elems = module_elements(V);
    auto add = [&](std::vector<GRElem> a, const std::vector<GRElem>& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
    for (const auto& x : elems) {
        // c(x, 0) = 0
        for (const auto& v : value(x, ModuleElem(V)))
            if (!v.is_zero()) return false;
        for (const auto& y : elems) {
            if (!(value(x, y) == value(y, x))) return false;
            for (const auto& z : elems) {
                auto lhs = add(value(x, y), value(x + y, z));
                auto rhs = add(value(y, z), value(x, y + z));
                if (!(lhs == rhs)) return false;
            }
        }
    }
    return true;
}

std::vector<uint32_t> CocycleData::extension_invariants() const {
    // G = V x_c S^p(V): exponent <= p^2; count |G[p]| via
    // p * (v, s) = (0, sum_{j=1}^{p-1} c(jv, v))
    uint32_t p = V.fs.p;
    uint64_t count = 0;
    auto elems = module_elements(V);
    for (const auto& v : elems) {
        std::vector<GRElem> acc(monomials.size(), GRElem(V.fs, 1));
        for (uint32_t j = 1; j < p; ++j) {
            auto t = value(v.scale_u64(j), v);
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
        }
        bool zero = std::all_of(acc.begin(), acc.end(), [](const GRElem& g) { return g.is_zero(); });
        if (zero) ++count;
    }
    uint64_t d = V.dim(), D = monomials.size();
    // count must be a p-power
    uint32_t logcount = 0;
    uint64_t t = count;
    while (t > 1) {
        if (t % p) throw std::logic_error("extension_invariants: |G[p]| not a p-power");
        t /= p;
        ++logcount;
    }
    uint64_t total = d + D;              // log |G|
    uint64_t torsion = logcount + D;     // log |G[p]|
    uint64_t a = total - torsion;        // (Z/p^2)^a
    uint64_t b = torsion - a;            // (Z/p)^b
    std::vector<uint32_t> lv(a, 2);
    lv.insert(lv.end(), b, 1);
    std::sort(lv.begin(), lv.end());
    return lv;
}

CocycleData frobenius_cocycle(const TorsionModule& V) {
    if (!V.is_vector_space() || V.fs.r != 1)
        throw std::invalid_argument("frobenius_cocycle: F_p-vector space required");
    return CocycleData{V, compositions(V.fs.p, V.dim())};
}

FrobLiftReport frobenius_lift_criterion(const WrinkledAlgebra& W) {
    FrobLiftReport rep;
    uint32_t p = W.A.fs.p;
    rep.gamma_preserves_I = true;
    for (const auto& x : subspace_vectors(W.I))
        if (!W.A.power(W.gamma_p(x), p).is_zero()) rep.gamma_preserves_I = false;
    if (!rep.gamma_preserves_I) {
        rep.detail = "gamma_p leaves Ker(Frob)";
        return rep;
    }
    LiftResult lr = lift_2flat(W);
    if (!lr.ok) {
        rep.detail = "lift construction failed: " + lr.detail;
        return rep;
    }
    const FlatAlgebra& R = lr.lifted;
    // lift of Frobenius: phi(X_i) = [f_i^p]_p expressed in the basis; here we
    // exhibit it directly on R by phi(x) = the basis-expressed [Frob rep];
    // verify it is a ring map reducing to Frobenius
    FpAlgebra A = R.reduction();
    ModuleMap frob = A.frobenius();
    // phi on basis: X_i -> lift of e_i along the Gamma presentation equals the
    // class of [e_i]_p; reconstruct via another lift: phi(X_i) must be an
    // element of R reducing to e_i^p... here f_i^p = e_i, so phi(X_i) reduces
    // to Frob(e_i) = e_i^p.  Search the (finite) fibers for a multiplicative
    // choice via the canonical Gamma-functor route:
    GammaRing ring = gamma_ring(A.module(), A.mul, A.one);
    auto gens = wrinkle_ideal_generators(W, ring, lr.generator_family);
    SpanBuilder sb = ideal_span(W, ring, gens);
    HowellForm ideal = sb.finish();
    // Gamma^p(Frob) must stabilize the ideal
    ModuleMap gfrob = gamma_functor(frob, p);
    for (size_t r = 0; r < ideal.mat.rows(); ++r) {
        ModuleElem row = unembed(ring.gb.mod(), ideal.mat.row(r));
        ModuleElem img = gfrob.apply(row);
        if (!ideal.contains(embed_elem(img))) {
            rep.detail = "Gamma^p(Frob) does not preserve the wrinkle ideal";
            return rep;
        }
    }
    // induced endomorphism on the quotient, in the X-basis
    ModuleMap frobA = A.frobenius();
    ChainMatrix frows(A.fs, 1, A.dim, A.dim);
    for (size_t j = 0; j < A.dim; ++j)
        for (size_t i = 0; i < A.dim; ++i) frows.at(j, i) = frobA.mat.at(i, j);
    LeftSolver fsolve(frows);
    std::vector<ModuleElem> f_basis;
    for (size_t i = 0; i < A.dim; ++i) {
        auto sol = fsolve.solve(ModuleElem::basis(A.module(), i).coords);
        if (!sol) {
            rep.detail = "Frobenius not surjective";
            return rep;
        }
        f_basis.push_back(ModuleElem(A.module(), *sol));
    }
    ChainMatrix rows(A.fs, 2, 0, ring.gb.size());
    for (size_t i = 0; i < A.dim; ++i) rows.append_row(embed_elem(symbol(ring.gb, f_basis[i])));
    for (size_t r = 0; r < ideal.mat.rows(); ++r) rows.append_row(ideal.mat.row(r));
    LeftSolver solver(rows);
    TorsionModule Rmod = R.module();
    std::vector<ModuleElem> phi;  // phi(X_i) in the X-basis
    for (size_t i = 0; i < A.dim; ++i) {
        ModuleElem target = gfrob.apply(symbol(ring.gb, f_basis[i]));
        auto sol = solver.solve(embed_elem(target));
        if (!sol) {
            rep.detail = "lifted Frobenius image not expressible in the basis";
            return rep;
        }
        ModuleElem img(Rmod);
        for (size_t t = 0; t < A.dim; ++t) img.coords[t] = (*sol)[t];
        phi.push_back(std::move(img));
    }
    auto apply_phi = [&](const ModuleElem& x) {
        ModuleElem out(Rmod);
        for (size_t i = 0; i < A.dim; ++i) out = out + phi[i].scale(x.coords[i]);
        return out;
    };
    // ring map: phi(X_i X_j) = phi(X_i) phi(X_j); reduction = Frobenius
    bool okring = true;
    for (size_t i = 0; i < A.dim && okring; ++i)
        for (size_t j = 0; j < A.dim && okring; ++j)
            okring = apply_phi(R.mul[i][j]) == R.multiply(phi[i], phi[j]);
    for (size_t i = 0; i < A.dim && okring; ++i) {
        ModuleElem red(A.module());
        for (size_t t = 0; t < A.dim; ++t) red.coords[t] = phi[i].coords[t].reduce(1);
        okring = red == frobA.column(i);
    }
    rep.lift_exists = okring;
    if (!okring) rep.detail = "exhibited endomorphism failed certification";
    return rep;
}

}  // namespace wg
