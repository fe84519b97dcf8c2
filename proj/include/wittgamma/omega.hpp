#pragma once

#include "wittgamma/fqlinalg.hpp"
#include "wittgamma/gamma.hpp"

namespace wg {

// ---------- medium Omega ----------

// Omega^n(M) = Gamma^{p^n}(M)/Ker(Delta), with closed-form orders.
GammaBasis medium_omega(const TorsionModule& M, uint32_t n);

// the projection Gamma^{p^n}(M) -> Omega^n(M) (identity on compositions,
// coefficients truncated)
ModuleMap omega_project(const TorsionModule& M, uint32_t n);

// pure symbol (x)_n
ModuleElem omega_symbol(const GammaBasis& om, const ModuleElem& x);

// coefficients reduced onto a quotient presentation with the same generators
ModuleElem project_coords(const ModuleElem& x, const TorsionModule& target);

// Generic pairing-kernel oracle: invariant-factor levels of
// Gamma^{p^n}(M)/Ker(Delta), computed over an extension k' with |k'| >= p^n
// from tau-bar values on symbol pairs only (no use of the closed form).
std::vector<uint32_t> omega_invariants_oracle(const TorsionModule& M, uint32_t n,
                                              const FieldSpec& bigfield);

// functoriality of Omega on a linear map (Gamma^{p^n}(f) reduced)
ModuleMap omega_functor(const ModuleMap& f, uint32_t n);

// ---------- big Omega ----------

struct BigOmega {
    TorsionModule base;
    uint32_t n = 1;
    std::vector<GammaBasis> layers;            // layer i: Omega^1 over layer i-1
    std::vector<std::vector<GRElem>> diag;     // pairing diagonal per layer
    const TorsionModule& top() const { return layers.back().mod(); }
};

BigOmega big_omega(const TorsionModule& M, uint32_t n);

// Gamma^{(n)}(M) -> big Omega^n(M)
ModuleMap big_projection(const TorsionModule& M, uint32_t n);

// Psi^n: Omega^n(M) -> big Omega^n(M), induced by G_n
ModuleMap psi_embedding(const TorsionModule& M, uint32_t n);

// orthogonal complement of Psi(Omega^n(M^v)) inside big Omega^n(M), as an
// embedded Howell span at the top ambient level
HowellForm psi_complement(const TorsionModule& M, uint32_t n);

// ---------- Frobenius / Verschiebung ----------

ModuleMap medium_frobenius(const TorsionModule& V, uint32_t n);      // Omega^n -> Omega^{n-1}
ModuleMap medium_verschiebung(const TorsionModule& V, uint32_t n);   // Omega^{n-1} -> Omega^n
ModuleMap big_frobenius(const TorsionModule& V, uint32_t n);
ModuleMap big_verschiebung(const TorsionModule& V, uint32_t n);

// ---------- small Omega ----------

struct SmallOmega {
    GammaBasis parent;  // the ambient medium Omega
    HowellForm span;    // embedded symbol span at level m+n
    uint64_t size_log() const { return span.span_size_log(); }
    bool contains(const ModuleElem& x) const { return span.contains(embed_elem(x)); }
    std::vector<uint32_t> invariants() const;
};

SmallOmega small_omega(const TorsionModule& M, uint32_t n);

// perfectness certificate for a restricted pairing between two spans: both
// sizes equal the row-span size of the Gram matrix (Smith route)
struct PairingCertificate {
    bool perfect = false;
    uint64_t left_log = 0, right_log = 0, gram_log = 0;
};
PairingCertificate pairing_perfect(const HowellForm& left, const HowellForm& right,
                                   const std::vector<GRElem>& diag, uint32_t level);

// ---------- Omega of pairings and algebras ----------

struct OmegaBilinear {
    GammaBasis gm, gn, gl;
    std::vector<std::vector<ModuleElem>> table;  // per basis pair, in gl.mod()
    ModuleElem apply(const ModuleElem& X, const ModuleElem& Y) const;
};

// B given by its values on generator pairs of M x N, landing in L
OmegaBilinear omega_of_pairing(const TorsionModule& M, const TorsionModule& N,
                               const TorsionModule& L,
                               const std::vector<std::vector<ModuleElem>>& B, uint32_t n);

struct OmegaAlgebra {
    OmegaBilinear mul;
    ModuleElem one;  // (1)_n
};
// A an algebra on the module M with multiplication table and unit vector
OmegaAlgebra omega_algebra(const TorsionModule& M,
                           const std::vector<std::vector<ModuleElem>>& mul_table,
                           const ModuleElem& one, uint32_t n);

// ---------- etale algebras and rho ----------

struct EtaleAlgebra {
    FieldSpec base;                    // k
    std::vector<FieldSpec> components; // k_i with r | r_i
};

// W_m(E) as a free W_m(k)-module with generators x_i^j (component i, power j)
TorsionModule etale_module(const EtaleAlgebra& E, uint32_t m);

struct RhoData {
    EtaleAlgebra E;
    uint32_t m = 1, n = 1;
    GammaBasis omega;        // Omega^n(W_m(E))
    TorsionModule target;    // W_{n+m}(E) as a free W_{n+m}(k)-module
    ModuleMap rho;           // (x)_n -> tau_bar_n(x)
    bool surjective = false;
    uint64_t kernel_log = 0;   // |ker| = |Omega| / |target| when surjective
    // multiplication table of W_{n+m}(E) in the module generators
    std::vector<std::vector<ModuleElem>> target_mul;
};

RhoData rho_map(const EtaleAlgebra& E, uint32_t m, uint32_t n);

// element of W_m(E) by components -> module coordinates and back
ModuleElem etale_to_coords(const EtaleAlgebra& E, uint32_t m, const std::vector<GRElem>& x);
std::vector<GRElem> coords_to_etale(const EtaleAlgebra& E, uint32_t m, const ModuleElem& v);

// ---------- induced-from-dimension-one decomposition ----------

struct InducedDecomposition {
    bool ok = false;
    uint32_t lines = 0;
    uint64_t span_log = 0;
    std::string detail;
};

// Prop: (+)_{L in P(V)} smallOmega^n(L)/p^m = smallOmega^n(V)/p^m, requires
// n - m >= r(delta(V)-1) - 1 and delta(V) >= 2
InducedDecomposition induced_decomposition(const TorsionModule& V, uint32_t n, uint32_t m);

}  // namespace wg
