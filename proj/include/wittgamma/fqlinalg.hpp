#pragma once

#include "wittgamma/wmodule.hpp"

namespace wg {

// Linear algebra over F_q for vector spaces presented as TorsionModules with
// m = 1, w = 0.  A subspace is carried by an RREF basis; enumeration order is
// deterministic.
struct Subspace {
    TorsionModule ambient;
    std::vector<ModuleElem> basis;  // RREF rows
    uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
};

std::vector<Subspace> subspaces_of_dim(const TorsionModule& V, uint32_t t);
std::vector<ModuleElem> all_vectors(const TorsionModule& V);
std::vector<ModuleElem> line_reps(const TorsionModule& V);  // first nonzero coord = 1

// |Gr_q(t, d)| by the Gaussian binomial.
bigint grassmannian_count(uint64_t q, uint32_t t, uint32_t d);

bool subspace_contains(const Subspace& W, const ModuleElem& v);
std::vector<ModuleElem> subspace_vectors(const Subspace& W);
// coordinates of v in the subspace basis (v must lie in W)
std::vector<GRElem> subspace_coords(const Subspace& W, const ModuleElem& v);
ModuleElem from_subspace_coords(const Subspace& W, const std::vector<GRElem>& c);

// all complete flags V = U_0 > U_1 > ... > U_c = W refining W < V
std::vector<std::vector<Subspace>> complete_flags(const Subspace& W, const TorsionModule& V);

// a linear form with kernel H (H a hyperplane of V), as dual coordinates
std::vector<GRElem> hyperplane_form(const Subspace& H, const TorsionModule& V);

// some retraction V -> W (left inverse of the inclusion), as a ModuleMap
ModuleMap subspace_retraction(const Subspace& W);

ModuleMap inclusion_map(const Subspace& W);  // W-coords -> ambient

// intersection of two row spans inside the same free module
HowellForm span_intersection(const FieldSpec& fs, uint32_t level, size_t cols,
                             const std::vector<std::vector<GRElem>>& a,
                             const std::vector<std::vector<GRElem>>& b);

}  // namespace wg
