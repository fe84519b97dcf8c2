#pragma once

#include <map>
#include <memory>
#include <vector>

#include "wittgamma/wmodule.hpp"

namespace wg {

using Composition = std::vector<uint32_t>;

// All compositions of n into d nonnegative parts, in lexicographic order on
// (a_1,...,a_d).  This ordering is the single source of truth shared by the
// divided-power and Omega bases.
std::vector<Composition> compositions(uint64_t n, size_t d);
uint64_t composition_count(uint64_t n, size_t d);

// Configurable degree guard; exceeding it is a hard error, never truncation.
struct GammaConfig {
    uint32_t degree_exponent_cap = 4;   // degrees up to p^cap
    uint64_t max_basis = 2000000;       // composition-count guard
    uint64_t max_symbols = 4096;        // small-Omega symbol enumeration guard
};
GammaConfig& gamma_config();

// The composition basis of Gamma^n(M) (orders from the W~ formula) or of its
// duality quotient Omega (orders from the W formula, degree a p-power).
struct GammaBasis {
    TorsionModule base;  // (m, w, d), possibly twisted
    uint64_t degree = 1;
    bool delta_quotient = false;
    uint32_t ambient = 1;  // m + v_p(degree)
    std::vector<Composition> comps;
    std::vector<uint32_t> ord;  // order exponent per basis element

    static GammaBasis gamma(const TorsionModule& base, uint64_t degree);
    static GammaBasis omega(const TorsionModule& base, uint32_t n);  // degree p^n

    // the basis as a torsion module: generator k has weight ambient - ord[k]
    const TorsionModule& mod() const { return mod_; }
    size_t index_of(const Composition& A) const;
    size_t size() const { return comps.size(); }

  private:
    TorsionModule mod_;
    void finish();
};

// Elements of Gamma^n(M) are ModuleElems over gb.mod().
ModuleElem gamma_zero(const GammaBasis& gb);
ModuleElem gamma_one(const GammaBasis& gb0);  // degree 0 unit

// [x]_degree expanded in the composition basis; lift-independent.
ModuleElem symbol(const GammaBasis& gb, const ModuleElem& x);

// product Gamma^i x Gamma^j -> Gamma^{i+j};
// [e]_A [e]_B = prod_t binom(a_t + b_t, a_t) [e]_{A+B}, extended bilinearly.
ModuleElem basis_mul(const GammaBasis& ga, const ModuleElem& X,
                     const GammaBasis& gb, const ModuleElem& Y, const GammaBasis& gout);

// gamma_i(X) for X in Gamma^N (N >= 1), landing in Gamma^{iN}.
ModuleElem gamma_op(const GammaBasis& gb, const ModuleElem& X, uint32_t i,
                    const GammaBasis& gout);
// gamma_i on a single basis element: coefficient (1/i!) prod_t (i a_t)!/(a_t!)^i
bigint gamma_op_basis_coeff(const Composition& A, uint32_t i);

// Diagonal duality pairing data: <g_k, g_k^v> = diag[k] in W_{mod.m}.
struct PairedBasis {
    TorsionModule mod;
    std::vector<GRElem> diag;

    static PairedBasis plain(const TorsionModule& M);  // diag = p^{w_i}
};

// Pairing diagonal of Gamma^{p^n} (or Omega^n) over a paired base:
// D_A = binom(p^n; A) * prod_i diag_i^{a_i} in W_{m+n}.
std::vector<GRElem> pairing_diag(const PairedBasis& base, uint64_t degree);

// <X, Y> for X over Gamma(M), Y over Gamma(M^v), with aligned bases.
GRElem gamma_pair(const GammaBasis& gx, const ModuleElem& X, const ModuleElem& Y,
                  const std::vector<GRElem>& diag);

// Frobenius Gamma^{np}(V) -> Gamma^n(V^{(1)}) and Verschiebung
// Gamma^n(V^{(1)}) -> Gamma^{np}(V), for k-vector spaces V.
ModuleMap gamma_frobenius(const GammaBasis& from, const GammaBasis& to);
ModuleMap gamma_verschiebung(const GammaBasis& from, const GammaBasis& to);

// functoriality: Gamma^c(f) on the composition bases
ModuleMap gamma_functor(const ModuleMap& f, uint64_t c);

// alpha_p: Gamma^{p^{n+1}}(M) -> Gamma^p(Gamma^{p^n}(M)), [x] -> [[x]]
ModuleMap alpha_p_map(const TorsionModule& M, uint32_t n);
// gamma-tilde_p: Gamma^p(Gamma^{p^n}(M)) -> Gamma^{p^{n+1}}(M), [X]_p -> gamma_p(X)
ModuleMap gtilde_p_map(const TorsionModule& M, uint32_t n);

// Iterated divided powers Gamma^{(n)} = Gamma^p o ... o Gamma^p.
struct GammaTower {
    TorsionModule base;
    std::vector<GammaBasis> layers;  // layer i: Gamma^p of layer i-1's module
    const TorsionModule& top() const { return layers.back().mod(); }
};
GammaTower gamma_tower(const TorsionModule& M, uint32_t n);

// F_n: Gamma^{(n)}(M) -> Gamma^{p^n}(M) and G_n in the other direction;
// F_n G_n = C_n Id with C_n the unit of chainring::big_c_constant.  Cached.
ModuleMap fn_map(const TorsionModule& M, uint32_t n);
ModuleMap gn_map(const TorsionModule& M, uint32_t n);

// recursive pairing diagonal on the Gamma tower layers
std::vector<std::vector<GRElem>> tower_pairing_diag(const GammaTower& t);

// linear map out of Gamma^N(M) given by per-composition coefficients (the
// law-to-matrix correspondence); missing compositions map to zero.
ModuleMap map_from_coefficients(const GammaBasis& gb, const TorsionModule& target,
                                const std::map<Composition, ModuleElem>& coeffs);

// Bilinear pairing at the divided-power level: value on basis pairs of
// Gamma^{deg}(M) x Gamma^{deg}(N) for B: M x N -> L given by its generator
// table.  Entry (A, B-comp) is an element of Gamma^{deg}(L).
std::vector<std::vector<ModuleElem>> gamma_bilinear(
    const GammaBasis& gm, const GammaBasis& gn, const GammaBasis& gl,
    const std::vector<std::vector<ModuleElem>>& table);

GRElem at_level(const GRElem& x, uint32_t level);  // canonical lift or reduce

}  // namespace wg
