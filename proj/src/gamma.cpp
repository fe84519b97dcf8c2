#include "wittgamma/gamma.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace wg {

GRElem at_level(const GRElem& x, uint32_t level) {
    return level >= x.level() ? x.lift(level) : x.reduce(level);
}

std::vector<Composition> compositions(uint64_t n, size_t d) {
    uint64_t count = composition_count(n, d);
    if (count > gamma_config().max_basis)
        throw std::invalid_argument("compositions: basis-count guard exceeded");
    std::vector<Composition> out;
    out.reserve(count);
    if (d == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    Composition a(d, 0);
    a[d - 1] = static_cast<uint32_t>(n);
    // lexicographic enumeration from (0,...,0,n) up to (n,0,...,0)
    while (true) {
        out.push_back(a);
        // find rightmost index < d-1 that can be incremented by moving mass
        // from the tail
        size_t i = d - 1;
        bool done = true;
        while (i-- > 0) {
            uint64_t tail = 0;
            for (size_t j = i + 1; j < d; ++j) tail += a[j];
            if (tail > 0) {
                a[i] += 1;
                for (size_t j = i + 1; j < d; ++j) a[j] = 0;
                a[d - 1] = static_cast<uint32_t>(tail - 1);
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return out;
}

uint64_t composition_count(uint64_t n, size_t d) {
    if (d == 0) return n == 0 ? 1 : 0;
    // C(n+d-1, d-1), computed exactly in small integers
    bigint c = 1;
    for (size_t i = 1; i < d; ++i) {
        c *= (n + i);
        c /= i;
    }
    if (c > std::numeric_limits<uint64_t>::max()) throw std::overflow_error("composition_count");
    return static_cast<uint64_t>(c);
}

GammaConfig& gamma_config() {
    static GammaConfig cfg;
    return cfg;
}

namespace {

uint32_t gamma_order_exp(const TorsionModule& base, uint64_t degree, const Composition& A) {
    // m + v_p(n) - max_i { v_p(n) - v_p(a_i) + w_i } over nonzero parts
    uint32_t vn = vp_u64(degree, base.fs.p);
    int64_t wtil = -1;
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i] == 0) continue;
        int64_t t = int64_t(vn) - int64_t(vp_u64(A[i], base.fs.p)) + base.weights[i];
        wtil = std::max(wtil, t);
    }
    if (wtil < 0) throw std::logic_error("gamma_order_exp: empty composition");
    int64_t e = int64_t(base.m) + vn - wtil;
    return e < 0 ? 0 : static_cast<uint32_t>(e);
}

uint32_t omega_order_exp(const TorsionModule& base, uint64_t degree, const Composition& A) {
    // (m+n) - min{ m+n, v_p(binom(p^n; A)) + sum w_i a_i }
    uint32_t mn = base.m + vp_u64(degree, base.fs.p);
    std::vector<uint64_t> parts(A.begin(), A.end());
    uint64_t wsum = 0;
    for (size_t i = 0; i < A.size(); ++i) wsum += uint64_t(base.weights[i]) * A[i];
    uint64_t W = std::min<uint64_t>(mn, multinomial_val(parts, base.fs.p) + wsum);
    return mn - static_cast<uint32_t>(W);
}

}  // namespace

void GammaBasis::finish() {
    std::vector<uint32_t> w;
    for (uint32_t e : ord) w.push_back(ambient - e);
    mod_ = TorsionModule(base.fs, ambient == 0 ? 1 : ambient, std::move(w), base.twist);
    if (ambient == 0) throw std::logic_error("GammaBasis: ambient 0");
}

GammaBasis GammaBasis::gamma(const TorsionModule& base, uint64_t degree) {
    if (degree > pow_u64(base.fs.p, gamma_config().degree_exponent_cap))
        throw std::invalid_argument("GammaBasis: degree cap exceeded (configurable)");
    GammaBasis gb;
    gb.base = base;
    gb.degree = degree;
    gb.delta_quotient = false;
    if (degree == 0) {
        gb.ambient = base.m;
        gb.comps = {Composition(base.dim(), 0)};
        gb.ord = {base.m};
        gb.finish();
        return gb;
    }
    gb.ambient = base.m + vp_u64(degree, base.fs.p);
    gb.comps = compositions(degree, base.dim());
    for (const auto& A : gb.comps) gb.ord.push_back(gamma_order_exp(base, degree, A));
    gb.finish();
    return gb;
}

GammaBasis GammaBasis::omega(const TorsionModule& base, uint32_t n) {
    uint64_t degree = pow_u64(base.fs.p, n);
    if (degree > pow_u64(base.fs.p, gamma_config().degree_exponent_cap))
        throw std::invalid_argument("GammaBasis: degree cap exceeded (configurable)");
    GammaBasis gb;
    gb.base = base;
    gb.degree = degree;
    gb.delta_quotient = true;
    gb.ambient = base.m + n;
    gb.comps = compositions(degree, base.dim());
    for (const auto& A : gb.comps) gb.ord.push_back(omega_order_exp(base, degree, A));
    gb.finish();
    return gb;
}

size_t GammaBasis::index_of(const Composition& A) const {
    auto it = std::lower_bound(comps.begin(), comps.end(), A);
    if (it == comps.end() || *it != A) throw std::invalid_argument("GammaBasis: unknown composition");
    return static_cast<size_t>(it - comps.begin());
}

ModuleElem gamma_zero(const GammaBasis& gb) { return ModuleElem(gb.mod()); }

ModuleElem gamma_one(const GammaBasis& gb0) {
    if (gb0.degree != 0) throw std::invalid_argument("gamma_one: degree 0 required");
    return ModuleElem::basis(gb0.mod(), 0);
}

ModuleElem symbol(const GammaBasis& gb, const ModuleElem& x) {
    if (!(x.mod.fs == gb.base.fs) || x.mod.m != gb.base.m || x.mod.weights != gb.base.weights)
        throw std::invalid_argument("symbol: element not in the base module");
    ModuleElem out(gb.mod());
    for (size_t k = 0; k < gb.size(); ++k) {
        uint32_t lvl = gb.mod().gen_level(k);
        if (lvl == 0) continue;
        GRElem c = GRElem::one(gb.base.fs, lvl);
        for (size_t i = 0; i < gb.base.dim(); ++i) {
            uint32_t a = gb.comps[k][i];
            if (a == 0) continue;
            c = c * at_level(x.coords[i], lvl).pow(a);
        }
        out.coords[k] = c;
    }
    return out;
}

ModuleElem basis_mul(const GammaBasis& ga, const ModuleElem& X,
                     const GammaBasis& gb, const ModuleElem& Y, const GammaBasis& gout) {
    if (ga.degree + gb.degree != gout.degree)
        throw std::invalid_argument("basis_mul: degree mismatch");
    ModuleElem out(gout.mod());
    for (size_t i = 0; i < ga.size(); ++i) {
        if (X.coords[i].is_zero()) continue;
        for (size_t j = 0; j < gb.size(); ++j) {
            if (Y.coords[j].is_zero()) continue;
            Composition C = ga.comps[i];
            bigint factor = 1;
            for (size_t t = 0; t < C.size(); ++t) {
                uint32_t a = C[t], b = gb.comps[j][t];
                if (a && b) factor *= multinomial({a, b});
                C[t] = a + b;
            }
            size_t k = gout.index_of(C);
            uint32_t lvl = gout.mod().gen_level(k);
            if (lvl == 0) continue;
            GRElem term = at_level(X.coords[i], lvl) * at_level(Y.coords[j], lvl);
            out.coords[k] += term.mul_big(factor);
        }
    }
    return out;
}

bigint gamma_op_basis_coeff(const Composition& A, uint32_t i) {
    // gamma_i([e]_A) = (1/i!) prod_t (i a_t)!/(a_t!)^i * [e]_{iA}
    bigint num = 1;
    for (uint32_t a : A) {
        if (a == 0) continue;
        bigint m = factorial(uint64_t(i) * a);
        bigint d = factorial(a);
        bigint dp = 1;
        for (uint32_t k = 0; k < i; ++k) dp *= d;
        if (m % dp != 0) throw std::logic_error("gamma_op_basis_coeff: not integral");
        num *= m / dp;
    }
    const bigint& fi = factorial(i);
    if (num % fi != 0) throw std::logic_error("gamma_op_basis_coeff: i! does not divide");
    return num / fi;
}

ModuleElem gamma_op(const GammaBasis& gb, const ModuleElem& X, uint32_t i,
                    const GammaBasis& gout) {
    if (gb.degree == 0) throw std::invalid_argument("gamma_op: degree 0 input rejected");
    if (gout.degree != gb.degree * i) throw std::invalid_argument("gamma_op: target degree");
    if (i == 0) throw std::invalid_argument("gamma_op: i >= 1 required");

    // nonzero terms of X
    std::vector<size_t> terms;
    for (size_t k = 0; k < gb.size(); ++k)
        if (!X.coords[k].is_zero()) terms.push_back(k);

    ModuleElem out(gout.mod());
    if (terms.empty()) return out;  // gamma_i(0) = 0 for i >= 1

    // gamma_i(sum_T c_T [e]_{A_T}) = sum over (j_T), sum j_T = i, of
    //   prod_T c_T^{j_T} gamma_{j_T}([e]_{A_T})
    for (const Composition& J : compositions(i, terms.size())) {
        Composition C(gb.base.dim(), 0);
        bigint factor = 1;
        for (size_t t = 0; t < terms.size(); ++t) {
            if (J[t] == 0) continue;
            factor *= gamma_op_basis_coeff(gb.comps[terms[t]], J[t]);
            for (size_t u = 0; u < C.size(); ++u) C[u] += J[t] * gb.comps[terms[t]][u];
        }
        // product of the basis elements [e]_{j_T A_T}: columnwise multinomials
        for (size_t u = 0; u < C.size(); ++u) {
            std::vector<uint64_t> col;
            for (size_t t = 0; t < terms.size(); ++t)
                if (J[t] * gb.comps[terms[t]][u] > 0) col.push_back(uint64_t(J[t]) * gb.comps[terms[t]][u]);
            if (col.size() > 1) factor *= multinomial(col);
        }
        size_t k = gout.index_of(C);
        uint32_t lvl = gout.mod().gen_level(k);
        if (lvl == 0) continue;
        GRElem scal = GRElem::one(gb.base.fs, lvl);
        for (size_t t = 0; t < terms.size(); ++t) {
            if (J[t] == 0) continue;
            scal = scal * at_level(X.coords[terms[t]], lvl).pow(J[t]);
        }
        out.coords[k] += scal.mul_big(factor);
    }
    return out;
}

PairedBasis PairedBasis::plain(const TorsionModule& M) {
    PairedBasis pb{M, {}};
    for (size_t i = 0; i < M.dim(); ++i)
        pb.diag.push_back(GRElem::scalar(M.fs, M.m, pow_u64(M.fs.p, M.weights[i])));
    return pb;
}

std::vector<GRElem> pairing_diag(const PairedBasis& base, uint64_t degree) {
    const TorsionModule& M = base.mod;
    uint32_t lvl = M.m + vp_u64(degree, M.fs.p);
    std::vector<GRElem> out;
    for (const auto& A : compositions(degree, M.dim())) {
        std::vector<uint64_t> parts(A.begin(), A.end());
        GRElem d = GRElem::one(M.fs, lvl).mul_big(multinomial(parts));
        for (size_t i = 0; i < A.size(); ++i)
            if (A[i] > 0) d = d * at_level(base.diag[i], lvl).pow(A[i]);
        out.push_back(d);
    }
    return out;
}

GRElem gamma_pair(const GammaBasis& gx, const ModuleElem& X, const ModuleElem& Y,
                  const std::vector<GRElem>& diag) {
    GRElem acc(gx.base.fs, gx.ambient);
    for (size_t k = 0; k < gx.size(); ++k) {
        if (X.coords[k].is_zero() || Y.coords[k].is_zero()) continue;
        acc += at_level(X.coords[k], gx.ambient) * at_level(Y.coords[k], gx.ambient) * diag[k];
    }
    return acc;
}

ModuleMap gamma_frobenius(const GammaBasis& from, const GammaBasis& to) {
    if (!from.base.is_vector_space())
        throw std::invalid_argument("gamma_frobenius: base must be a k-vector space");
    uint32_t p = from.base.fs.p;
    if (from.degree != to.degree * p || to.base.twist != (from.base.twist + 1) % from.base.fs.r)
        throw std::invalid_argument("gamma_frobenius: shape mismatch");
    ModuleMap f(from.mod(), to.mod());
    for (size_t k = 0; k < from.size(); ++k) {
        bool divisible = true;
        Composition B = from.comps[k];
        for (auto& a : B) {
            if (a % p) { divisible = false; break; }
            a /= p;
        }
        if (!divisible) continue;
        f.mat.at(to.index_of(B), k) = GRElem::one(from.base.fs, to.mod().m);
    }
    f.require_well_defined();
    return f;
}

ModuleMap gamma_verschiebung(const GammaBasis& from, const GammaBasis& to) {
    if (!to.base.is_vector_space())
        throw std::invalid_argument("gamma_verschiebung: base must be a k-vector space");
    uint32_t p = to.base.fs.p;
    if (to.degree != from.degree * p || from.base.twist != (to.base.twist + 1) % to.base.fs.r)
        throw std::invalid_argument("gamma_verschiebung: shape mismatch");
    ModuleMap f(from.mod(), to.mod());
    for (size_t k = 0; k < from.size(); ++k) {
        Composition B = from.comps[k];
        for (auto& a : B) a *= p;
        f.mat.at(to.index_of(B), k) = GRElem::scalar(from.base.fs, to.mod().m, p);
    }
    f.require_well_defined();
    return f;
}

ModuleMap gamma_functor(const ModuleMap& f, uint64_t c) {
    GammaBasis gdom = GammaBasis::gamma(f.dom, c);
    GammaBasis gcod = GammaBasis::gamma(f.cod, c);
    ModuleMap out(gdom.mod(), gcod.mod());
    // precompute [f(e_i)]_a for the needed degrees
    std::vector<ModuleElem> cols;
    for (size_t i = 0; i < f.dom.dim(); ++i) cols.push_back(f.column(i));
    for (size_t k = 0; k < gdom.size(); ++k) {
        const Composition& A = gdom.comps[k];
        GammaBasis acc_gb = GammaBasis::gamma(f.cod, 0);
        ModuleElem acc = gamma_one(acc_gb);
        for (size_t i = 0; i < A.size(); ++i) {
            if (A[i] == 0) continue;
            GammaBasis gi = GammaBasis::gamma(f.cod, A[i]);
            ModuleElem si = symbol(gi, cols[i]);
            GammaBasis gnext = GammaBasis::gamma(f.cod, acc_gb.degree + A[i]);
            acc = basis_mul(acc_gb, acc, gi, si, gnext);
            acc_gb = gnext;
        }
        for (size_t row = 0; row < gcod.size(); ++row)
            out.mat.at(row, k) = at_level(acc.coords[row], gcod.mod().m);
    }
    out.require_well_defined();
    return out;
}

ModuleMap alpha_p_map(const TorsionModule& M, uint32_t n) {
    uint32_t p = M.fs.p;
    GammaBasis inner = GammaBasis::gamma(M, pow_u64(p, n));
    GammaBasis big = GammaBasis::gamma(M, pow_u64(p, n + 1));
    GammaBasis outer = GammaBasis::gamma(inner.mod(), p);
    ModuleMap out(big.mod(), outer.mod());
    for (size_t c = 0; c < outer.size(); ++c) {
        // multidegree of the outer composition: sum c_B * B
        Composition A(M.dim(), 0);
        for (size_t b = 0; b < inner.size(); ++b)
            for (size_t u = 0; u < M.dim(); ++u) A[u] += outer.comps[c][b] * inner.comps[b][u];
        out.mat.at(c, big.index_of(A)) += GRElem::one(M.fs, outer.mod().m);
    }
    out.require_well_defined();
    return out;
}

ModuleMap gtilde_p_map(const TorsionModule& M, uint32_t n) {
    uint32_t p = M.fs.p;
    GammaBasis inner = GammaBasis::gamma(M, pow_u64(p, n));
    GammaBasis big = GammaBasis::gamma(M, pow_u64(p, n + 1));
    GammaBasis outer = GammaBasis::gamma(inner.mod(), p);
    ModuleMap out(outer.mod(), big.mod());
    for (size_t c = 0; c < outer.size(); ++c) {
        // value on [E]_C: prod_B gamma_{c_B}([e]_B)
        Composition A(M.dim(), 0);
        bigint factor = 1;
        for (size_t b = 0; b < inner.size(); ++b) {
            uint32_t cb = outer.comps[c][b];
            if (cb == 0) continue;
            factor *= gamma_op_basis_coeff(inner.comps[b], cb);
            for (size_t u = 0; u < M.dim(); ++u) A[u] += cb * inner.comps[b][u];
        }
        // cross multinomials between the blocks
        for (size_t u = 0; u < M.dim(); ++u) {
            std::vector<uint64_t> col;
            for (size_t b = 0; b < inner.size(); ++b)
                if (outer.comps[c][b] * inner.comps[b][u] > 0)
                    col.push_back(uint64_t(outer.comps[c][b]) * inner.comps[b][u]);
            if (col.size() > 1) factor *= multinomial(col);
        }
        size_t k = big.index_of(A);
        out.mat.at(k, c) = GRElem::one(M.fs, big.mod().m).mul_big(factor);
    }
    out.require_well_defined();
    return out;
}

GammaTower gamma_tower(const TorsionModule& M, uint32_t n) {
    GammaTower t{M, {}};
    TorsionModule cur = M;
    for (uint32_t i = 0; i < n; ++i) {
        t.layers.push_back(GammaBasis::gamma(cur, M.fs.p));
        cur = t.layers.back().mod();
    }
    return t;
}

namespace {

std::map<std::string, ModuleMap>& fg_cache() {
    static std::map<std::string, ModuleMap> cache;
    return cache;
}
std::shared_mutex& fg_mutex() {
    static std::shared_mutex mu;
    return mu;
}

ModuleMap cached(const std::string& key, const std::function<ModuleMap()>& make) {
    {
        std::shared_lock lk(fg_mutex());
        auto it = fg_cache().find(key);
        if (it != fg_cache().end()) return it->second;
    }
    ModuleMap m = make();
    std::unique_lock lk(fg_mutex());
    return fg_cache().emplace(key, std::move(m)).first->second;
}

}  // namespace

ModuleMap fn_map(const TorsionModule& M, uint32_t n) {
    if (n == 0) throw std::invalid_argument("fn_map: n >= 1");
    std::string key = "F" + std::to_string(n) + ":" + M.key();
    return cached(key, [&]() {
        if (n == 1) return ModuleMap::identity(GammaBasis::gamma(M, M.fs.p).mod());
        // F_{n} = gtilde_p o Gamma^p(F_{n-1})
        ModuleMap prev = fn_map(M, n - 1);
        ModuleMap gp = gamma_functor(prev, M.fs.p);
        ModuleMap gt = gtilde_p_map(M, n - 1);
        return gt.compose(gp);
    });
}

ModuleMap gn_map(const TorsionModule& M, uint32_t n) {
    if (n == 0) throw std::invalid_argument("gn_map: n >= 1");
    std::string key = "G" + std::to_string(n) + ":" + M.key();
    return cached(key, [&]() {
        if (n == 1) return ModuleMap::identity(GammaBasis::gamma(M, M.fs.p).mod());
        ModuleMap prev = gn_map(M, n - 1);
        ModuleMap gp = gamma_functor(prev, M.fs.p);
        ModuleMap ap = alpha_p_map(M, n - 1);
        return gp.compose(ap);
    });
}

std::vector<std::vector<GRElem>> tower_pairing_diag(const GammaTower& t) {
    std::vector<std::vector<GRElem>> out;
    PairedBasis pb = PairedBasis::plain(t.base);
    for (const auto& layer : t.layers) {
        std::vector<GRElem> diag = pairing_diag(pb, t.base.fs.p);
        out.push_back(diag);
        pb = PairedBasis{layer.mod(), diag};
    }
    return out;
}

ModuleMap map_from_coefficients(const GammaBasis& gb, const TorsionModule& target,
                                const std::map<Composition, ModuleElem>& coeffs) {
    std::vector<ModuleElem> cols;
    for (size_t k = 0; k < gb.size(); ++k) {
        auto it = coeffs.find(gb.comps[k]);
        cols.push_back(it == coeffs.end() ? ModuleElem(target) : it->second);
    }
    ModuleMap f = ModuleMap::from_columns(gb.mod(), target, cols);
    f.require_well_defined();
    return f;
}

std::vector<std::vector<ModuleElem>> gamma_bilinear(
    const GammaBasis& gm, const GammaBasis& gn, const GammaBasis& gl,
    const std::vector<std::vector<ModuleElem>>& table) {
    size_t dm = gm.base.dim(), dn = gn.base.dim();
    if (gm.degree != gn.degree || gm.degree != gl.degree)
        throw std::invalid_argument("gamma_bilinear: degrees must agree");
    std::vector<std::vector<ModuleElem>> out(
        gm.size(), std::vector<ModuleElem>(gn.size(), ModuleElem(gl.mod())));
    // [sum X_i Y_j z_ij]_deg expanded over matrix compositions (c_ij)
    for (const Composition& flat : compositions(gm.degree, dm * dn)) {
        Composition A(dm, 0), B(dn, 0);
        for (size_t i = 0; i < dm; ++i)
            for (size_t j = 0; j < dn; ++j) {
                A[i] += flat[i * dn + j];
                B[j] += flat[i * dn + j];
            }
        // product over ij of [z_ij]_{c_ij}
        GammaBasis acc_gb = GammaBasis::gamma(gl.base, 0);
        ModuleElem acc = gamma_one(acc_gb);
        for (size_t i = 0; i < dm; ++i)
            for (size_t j = 0; j < dn; ++j) {
                uint32_t c = flat[i * dn + j];
                if (c == 0) continue;
                GammaBasis gc = GammaBasis::gamma(gl.base, c);
                ModuleElem s = symbol(gc, table[i][j]);
                GammaBasis gnext = GammaBasis::gamma(gl.base, acc_gb.degree + c);
                acc = basis_mul(acc_gb, acc, gc, s, gnext);
                acc_gb = gnext;
            }
        ModuleElem& cell = out[gm.index_of(A)][gn.index_of(B)];
        cell = cell + acc;
    }
    return out;
}

}  // namespace wg
