#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittgamma/chainmat.hpp"
#include "wittgamma/galois.hpp"

namespace wg {

// A finite torsion W_m(k)-module M = (+)_{i} W_{m-w_i}(k) e_i in invariant
// factor form.  Weights are kept in generator order; signature() sorts them
// for module equality.  `twist` labels a Frobenius twist M^{(twist)} of the
// generators (only meaningful for r > 1).
struct TorsionModule {
    FieldSpec fs;
    uint32_t m = 1;
    std::vector<uint32_t> weights;  // 0 <= w_i <= m
    uint32_t twist = 0;

    TorsionModule() : fs(field_spec(2, 1)) {}
    TorsionModule(const FieldSpec& f, uint32_t level, std::vector<uint32_t> w, uint32_t tw = 0);

    static TorsionModule free_module(const FieldSpec& f, uint32_t level, uint32_t rank);

    size_t dim() const { return weights.size(); }             // delta(M)
    uint32_t gen_level(size_t i) const { return m - weights[i]; }
    uint64_t size_log() const;                                 // log_p |M|
    bool is_free() const;
    bool is_vector_space() const;                              // m = 1, w = 0
    bool is_zero() const;
    std::vector<uint32_t> signature() const;                   // sorted weights
    std::string key() const;                                   // cache/identity key
    TorsionModule twisted(uint32_t s) const;
    TorsionModule canonical() const;                           // sorted weights, twist 0

    bool operator==(const TorsionModule& o) const;
};

// Element of a TorsionModule; coordinate i is canonically reduced mod
// p^{m-w_i}.
struct ModuleElem {
    TorsionModule mod;
    std::vector<GRElem> coords;

    ModuleElem() = default;
    explicit ModuleElem(const TorsionModule& M);
    ModuleElem(const TorsionModule& M, std::vector<GRElem> c);

    static ModuleElem basis(const TorsionModule& M, size_t i);

    bool is_zero() const;
    bool operator==(const ModuleElem& o) const;
    ModuleElem operator+(const ModuleElem& o) const;
    ModuleElem operator-(const ModuleElem& o) const;
    ModuleElem operator-() const;
    // scalar action of W_m(k) (scalar given at any level >= needed)
    ModuleElem scale(const GRElem& s) const;
    ModuleElem scale_u64(uint64_t s) const;
    // coordinate i lifted canonically to the ambient level m (or higher)
    GRElem lifted_coord(size_t i, uint32_t level) const;
    // Frobenius twist relabeling: coordinates mapped by frob^s
    ModuleElem twist_map(uint32_t s) const;
};

// All |M| elements (desk scale).
std::vector<ModuleElem> module_elements(const TorsionModule& M);

// Dual module: same weights; pairing <e_i, e_j^dual> = p^{w_i} delta_{ij}.
TorsionModule dual_module(const TorsionModule& M);
GRElem mod_pairing(const ModuleElem& x, const ModuleElem& phi);

// W_m(k)-linear map; entry (i, j) is the e'_i coordinate of f(e_j), stored at
// the codomain ambient level and reduced mod the generator order on use.
struct ModuleMap {
    TorsionModule dom, cod;
    ChainMatrix mat;  // cod.dim() x dom.dim() at level cod.m

    ModuleMap(const TorsionModule& d, const TorsionModule& c);
    static ModuleMap identity(const TorsionModule& M);
    static ModuleMap zero(const TorsionModule& d, const TorsionModule& c);
    static ModuleMap from_columns(const TorsionModule& d, const TorsionModule& c,
                                  const std::vector<ModuleElem>& images);

    // order-divisibility invariant: p^{ord dom_j} f(e_j) = 0 in cod
    bool well_defined() const;
    void require_well_defined() const;

    ModuleElem apply(const ModuleElem& x) const;
    ModuleMap compose(const ModuleMap& inner) const;  // this o inner
    ModuleMap dual_map() const;                       // <f x, phi> = <x, f^dual phi>
    ModuleMap operator+(const ModuleMap& o) const;
    ModuleMap operator-(const ModuleMap& o) const;
    ModuleMap scale(const GRElem& s) const;
    bool operator==(const ModuleMap& o) const;
    ModuleElem column(size_t j) const;

    bool is_identity_on_generators() const;
};

// Canonical submodule description: Howell span of the embedded coordinates
// (coordinate i scaled by p^{w_i} inside W_m^d).
struct Submodule {
    TorsionModule ambient;
    HowellForm span;  // rows embedded at level m

    uint64_t size_log() const { return span.span_size_log(); }
    bool contains(const ModuleElem& x) const;
    // invariant-factor exponents of the span as an abstract module
    std::vector<uint32_t> invariants() const;
    // weights of the quotient M / span (as a canonical TorsionModule)
    TorsionModule quotient() const;
};

std::vector<GRElem> embed_elem(const ModuleElem& x);  // scaled coordinates at level m
Submodule span_of(const TorsionModule& M, const std::vector<ModuleElem>& gens);

// kernel of a module map, as an embedded Howell span in the domain
HowellForm kernel_span(const ModuleMap& f);
// recover the element from an embedded row
ModuleElem unembed(const TorsionModule& M, const std::vector<GRElem>& row);

}  // namespace wg
