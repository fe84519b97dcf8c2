#pragma once

#include "wittgamma/fqlinalg.hpp"
#include "wittgamma/omega.hpp"
#include "wittgamma/polylaw.hpp"

namespace wg {

// Laws with degree above q^guard are rejected (configurable).
struct TransferConfig {
    uint32_t degree_guard_exp = 3;
};
TransferConfig& transfer_config();

struct DegreeGuardError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------- laws in one variable ----------

// lambda-bar^S: v -> F^{s_0}(v) ^ ... ^ F^{s_{m-1}}(v) into Lambda^m(V)
// (basis: index subsets in lex order); degree sum q^{s_i}
PolyLaw lambda_one_var(const TorsionModule& V, const std::vector<uint32_t>& S);

// det^1 = lambda-bar^{{0..d-1}}, into Det(V) (one-dimensional)
PolyLaw det_one(const TorsionModule& V);

// det^1 equals the product of one linear form per rational hyperplane up to a
// scalar; exact polynomial comparison
bool det_one_product_check(const TorsionModule& V);

// ---------- the Transfer as a polynomial law ----------

// quotient map V -> V/W in complement coordinates (non-pivot columns)
ModuleMap quotient_map(const Subspace& W);

// hyperplane transfer T_{H,V}: v -> F(v) - pi(v)^{q-1} v, in H's basis
PolyLaw hyperplane_transfer(const Subspace& H);

// flag-composed transfer T_{W,V} (canonical: composed along the given flag,
// expressed in W's RREF basis); all flags give the same law (Lemma-checked)
PolyLaw transfer_law_via_flag(const std::vector<Subspace>& flag);
PolyLaw transfer_law(const Subspace& W);  // uses the first complete flag

// exterior transfer Lambda^m(V) -> Det(V/W) (x) Lambda^{m-c}(W), as a matrix
// on the wedge bases (Det generator: wedge of complement images, in quotient
// coordinates)
ChainMatrix exterior_transfer(const Subspace& W, uint32_t m, const ModuleMap& retraction);

// division-based transfer: the unique T with
// lambdaT^{c+1} o lambda-bar^{c+1} = (det^1_{V/W} o pi) (x) T
PolyLaw transfer_law_via_division(const Subspace& W);

// ---------- divided-power transfer ----------

// GammaT^n: Gamma^{p^{n+rc}}(V) -> Gamma^{p^n}(W), [v] -> [T(v)]
ModuleMap gamma_transfer(const Subspace& W, uint32_t n);

// ---------- small-Omega transfers ----------

// A linear map between small Omega powers carried by its values on pure
// symbols, as integer combinations of codomain symbols.  Linearity on the
// span is certified on construction (hard error with a witness otherwise).
struct SmallMap {
    TorsionModule domV, codV;
    uint32_t dom_n = 1, cod_n = 1;  // Omega indices
    // expr[i]: image of the symbol of module_elements(domV)[i]
    std::vector<std::map<size_t, int64_t>> expr;

    GammaBasis dom_parent() const { return GammaBasis::omega(domV, dom_n); }
    GammaBasis cod_parent() const { return GammaBasis::omega(codV, cod_n); }
    ModuleElem image_coords(size_t idx) const;  // in Omega^{cod_n}(codV)
    SmallMap compose(const SmallMap& inner) const;
    SmallMap operator+(const SmallMap& o) const;
    SmallMap scale_int(int64_t c) const;
};

// certifies that relations among domain symbols map to relations; throws with
// a witness coefficient vector otherwise
void certify_small_map(const SmallMap& f);

// maps agree on all symbols after scaling the left side by `left_scalar`
bool small_maps_equal(const SmallMap& a, const SmallMap& b, const GRElem& left_scalar);

// functorial small Omega of a linear map: (v) -> (f v)
SmallMap small_omega_of(const ModuleMap& f, uint32_t n);
// Frobenius power (v)_{n + s} -> (v^{(s)})_n (with V = V^{(r)} applied)
SmallMap small_frobenius_power(const TorsionModule& V, uint32_t n, uint32_t s);
// Verschiebung power (v)_n -> p^s (v)_{n+s}
SmallMap small_verschiebung_power(const TorsionModule& V, uint32_t n, uint32_t s);

// descending transfer DT_{W,V}: smallOmega^{n+rc}(V) -> smallOmega^n(W)
SmallMap small_descending(const Subspace& W, uint32_t n);
// ascending transfer AT_{V,W} for a surjection pi: V -> W
SmallMap small_ascending(const ModuleMap& pi, uint32_t n);
// T(f) for an arbitrary linear map, by the closed formula
SmallMap small_transfer(const ModuleMap& f, uint32_t n);

// ---------- integral formulas ----------

struct IntegralReport {
    bool ok = false;
    std::string detail;
};

// sum over codim-c subspaces of incl o T_{W,V} = F^c, coefficient-wise
IntegralReport frobenius_integral_law(const TorsionModule& V, uint32_t c);
// (1/|Gr(m, d-1)|) sum_W smallOmega(i_W) o DT = Frob^{mr} on smallOmega^{n+mr}(V)
IntegralReport frobenius_integral_small(const TorsionModule& V, uint32_t m, uint32_t n);
// (1/|Gr(m-1, d-1)|) sum_W AT o smallOmega(pi_W) = Ver^{mr} on smallOmega^n(V)
IntegralReport verschiebung_integral_small(const TorsionModule& V, uint32_t m, uint32_t n);

}  // namespace wg
