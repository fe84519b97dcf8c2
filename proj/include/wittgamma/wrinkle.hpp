#pragma once

#include "wittgamma/omega.hpp"
#include "wittgamma/polylaw.hpp"

namespace wg {

// Finite commutative unital F_p-algebra by structure constants.
struct FpAlgebra {
    FieldSpec fs;  // r = 1
    uint32_t dim = 1;
    std::vector<std::vector<ModuleElem>> mul;  // mul[i][j] = e_i e_j
    ModuleElem one;

    TorsionModule module() const { return TorsionModule::free_module(fs, 1, dim); }
    ModuleElem multiply(const ModuleElem& x, const ModuleElem& y) const;
    ModuleElem power(const ModuleElem& x, uint64_t e) const;
    ModuleMap frobenius() const;  // x -> x^p, F_p-linear
    void check_axioms() const;    // associative, commutative, unital
};

// from a product of finite fields over F_p
FpAlgebra etale_fp_algebra(const EtaleAlgebra& E);
// polynomial quotient F_p[x]/(f), f monic given by coefficients
FpAlgebra poly_fp_algebra(uint32_t p, const std::vector<uint32_t>& f);

// (A, gamma_p) with gamma_p on Ker(Frob) tabulated on every element of I.
struct WrinkledAlgebra {
    FpAlgebra A;
    Subspace I;                              // Ker(Frob_A)
    std::vector<ModuleElem> gamma_table;     // aligned with subspace_vectors(I)
    bool frob_surjective = false;

    ModuleElem gamma_p(const ModuleElem& x) const;
    void check_axioms() const;  // gamma_p(ax) = a^p gamma_p(x), addition law
};

// Free Z/p^2-algebra by structure constants.
struct FlatAlgebra {
    FieldSpec fs;
    uint32_t rank = 1;
    std::vector<std::vector<ModuleElem>> mul;  // over the free level-2 module
    ModuleElem one;

    TorsionModule module() const { return TorsionModule::free_module(fs, 2, rank); }
    ModuleElem multiply(const ModuleElem& x, const ModuleElem& y) const;
    ModuleElem power(const ModuleElem& x, uint64_t e) const;
    void check_axioms() const;
    FpAlgebra reduction() const;  // mod p
};

// quotient Z/p^2[x]/(f) with f monic of integer coefficients
FlatAlgebra poly_flat_algebra(uint32_t p, const std::vector<uint32_t>& f);

// Psi_2: a 2-flat ring yields (A, gamma_p): gamma_p(x) = -(X^p / p) mod p.
WrinkledAlgebra psi2(const FlatAlgebra& R);

// The divided-power presentation of the lift: Gamma^p_Z(A) / ideal.
struct LiftResult {
    bool ok = false;
    std::string detail;
    FlatAlgebra lifted;
    uint32_t generator_family = 2;   // 2 or 3 (escalation)
    uint64_t ideal_log = 0;          // log_p |ideal span|
};

LiftResult lift_2flat(const WrinkledAlgebra& W);

// round trip psi2(lift_2flat(W)) == W, on the nose in the produced basis
bool wrinkle_round_trip(const WrinkledAlgebra& W, std::string* detail = nullptr);

// explicit isomorphism lift_2flat(F_q) = GR(p^2, r), by Hensel-lifting the
// field generator inside the constructed flat algebra
struct GaloisRingIso {
    bool ok = false;
    std::string detail;
};
GaloisRingIso lift_is_galois_ring(const FlatAlgebra& R, const FieldSpec& target);

// Prop: Gamma^p_Z(Z/p^m) / I = Z/p^{m+1} as rings, I spanned by
// [x]_1[y]_{p-1} - [x y^{p-1}]_1 [1]_{p-1}
struct WittPresentation {
    bool ok = false;
    uint32_t p = 2, m = 1;
    uint64_t ideal_log = 0;        // the stated generators span this much
    uint64_t quotient_log = 0;     // log_p |Gamma/I|
    bool ring_iso = false;         // certified against GR arithmetic
    std::string detail;
};
WittPresentation witt_from_divided_powers(uint32_t p, uint32_t m);

// Frobenius cocycle c(x,y) = sum_{i=1}^{p-1} ((-1)^{i-1}/i) x^i y^{p-i} into
// S^p(V); values on concrete vectors in the monomial basis
struct CocycleData {
    TorsionModule V;
    std::vector<Composition> monomials;  // degree-p monomials (lex)
    std::vector<GRElem> value(const ModuleElem& x, const ModuleElem& y) const;
    bool check_identities() const;       // symmetry + cocycle + c(x,0) = 0
    // abelian invariants (levels) of V x_c S^p(V)
    std::vector<uint32_t> extension_invariants() const;
};
CocycleData frobenius_cocycle(const TorsionModule& V);

// PD-lift-of-Frobenius criterion: gamma_p(I) in I iff Frob lifts; when it
// does, the lifted endomorphism is exhibited and certified.
struct FrobLiftReport {
    bool gamma_preserves_I = false;
    bool lift_exists = false;
    std::string detail;
};
FrobLiftReport frobenius_lift_criterion(const WrinkledAlgebra& W);

}  // namespace wg
