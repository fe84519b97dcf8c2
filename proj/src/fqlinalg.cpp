#include "wittgamma/fqlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace wg {

namespace {

void require_vs(const TorsionModule& V, const char* who) {
    if (!V.is_vector_space()) throw std::invalid_argument(std::string(who) + ": k-vector space required");
}

}  // namespace

std::vector<ModuleElem> all_vectors(const TorsionModule& V) { return module_elements(V); }

std::vector<Subspace> subspaces_of_dim(const TorsionModule& V, uint32_t t) {
    require_vs(V, "subspaces_of_dim");
    uint32_t d = static_cast<uint32_t>(V.dim());
    if (t > d) return {};
    std::vector<Subspace> out;
    if (t == 0) {
        out.push_back(Subspace{V, {}});
        return out;
    }
    auto field = field_elements(V.fs);
    // choose pivot columns 0 <= c_1 < ... < c_t < d, then free entries
    std::vector<uint32_t> piv(t);
    for (uint32_t i = 0; i < t; ++i) piv[i] = i;
    while (true) {
        // free positions: row i, column j with j > piv[i] and j not a pivot
        std::vector<std::pair<uint32_t, uint32_t>> free_pos;
        for (uint32_t i = 0; i < t; ++i)
            for (uint32_t j = piv[i] + 1; j < d; ++j)
                if (std::find(piv.begin(), piv.end(), j) == piv.end()) free_pos.emplace_back(i, j);
        std::vector<size_t> idx(free_pos.size(), 0);
        while (true) {
            Subspace s{V, {}};
            for (uint32_t i = 0; i < t; ++i) {
                ModuleElem row(V);
                row.coords[piv[i]] = GRElem::one(V.fs, 1);
                s.basis.push_back(row);
            }
            for (size_t k = 0; k < free_pos.size(); ++k)
                s.basis[free_pos[k].first].coords[free_pos[k].second] = field[idx[k]];
            out.push_back(std::move(s));
            size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < field.size()) break;
                idx[k] = 0;
            }
            if (k == idx.size()) break;
            if (idx.empty()) break;
        }
        // next pivot set
        int32_t i = static_cast<int32_t>(t) - 1;
        while (i >= 0 && piv[i] == d - t + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (uint32_t j = i + 1; j < t; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

std::vector<ModuleElem> line_reps(const TorsionModule& V) {
    require_vs(V, "line_reps");
    std::vector<ModuleElem> out;
    for (const auto& v : module_elements(V)) {
        if (v.is_zero()) continue;
        size_t lead = 0;
        while (v.coords[lead].is_zero()) ++lead;
        if (v.coords[lead] == GRElem::one(V.fs, 1)) out.push_back(v);
    }
    return out;
}

bigint grassmannian_count(uint64_t q, uint32_t t, uint32_t d) {
    if (t > d) return 0;
    bigint num = 1, den = 1;
    for (uint32_t i = 0; i < t; ++i) {
        bigint qn = 1, qd = 1;
        for (uint32_t j = 0; j < d - i; ++j) qn *= q;
        for (uint32_t j = 0; j < t - i; ++j) qd *= q;
        num *= qn - 1;
        den *= qd - 1;
    }
    if (num % den != 0) throw std::logic_error("grassmannian_count");
    return num / den;
}

bool subspace_contains(const Subspace& W, const ModuleElem& v) {
    if (v.is_zero()) return true;
    if (W.basis.empty()) return false;
    ChainMatrix m(W.ambient.fs, 1, W.basis.size(), W.ambient.dim());
    for (size_t i = 0; i < W.basis.size(); ++i) m.set_row(i, W.basis[i].coords);
    return solve_left(m, v.coords).has_value();
}

std::vector<ModuleElem> subspace_vectors(const Subspace& W) {
    std::vector<ModuleElem> out;
    auto field = field_elements(W.ambient.fs);
    std::vector<size_t> idx(W.basis.size(), 0);
    while (true) {
        ModuleElem v(W.ambient);
        for (size_t i = 0; i < W.basis.size(); ++i) v = v + W.basis[i].scale(field[idx[i]]);
        out.push_back(std::move(v));
        size_t k = 0;
        for (; k < idx.size(); ++k) {
            if (++idx[k] < field.size()) break;
            idx[k] = 0;
        }
        if (k == idx.size()) break;
        if (idx.empty()) break;
    }
    return out;
}

std::vector<GRElem> subspace_coords(const Subspace& W, const ModuleElem& v) {
    // works for any basis, not just RREF rows
    ChainMatrix m(W.ambient.fs, 1, W.basis.size(), W.ambient.dim());
    for (size_t i = 0; i < W.basis.size(); ++i) m.set_row(i, W.basis[i].coords);
    auto sol = solve_left(m, v.coords);
    if (!sol) throw std::invalid_argument("subspace_coords: vector not in the subspace");
    return *sol;
}

ModuleElem from_subspace_coords(const Subspace& W, const std::vector<GRElem>& c) {
    ModuleElem v(W.ambient);
    for (size_t i = 0; i < W.basis.size(); ++i) v = v + W.basis[i].scale(c[i]);
    return v;
}

std::vector<std::vector<Subspace>> complete_flags(const Subspace& W, const TorsionModule& V) {
    require_vs(V, "complete_flags");
    uint32_t d = static_cast<uint32_t>(V.dim());
    if (W.dim() >= d) throw std::invalid_argument("complete_flags: W must be proper");
    std::vector<std::vector<Subspace>> out;
    // flags from V down to W: choose intermediate subspaces one dimension at a time
    if (W.dim() + 1 == d) {
        out.push_back({W});
        return out;
    }
    for (const Subspace& H : subspaces_of_dim(V, d - 1)) {
        // H must contain W
        bool contains = true;
        for (const auto& b : W.basis) contains &= subspace_contains(H, b);
        if (!contains) continue;
        // recurse inside H: express W in H coordinates
        TorsionModule VH = TorsionModule::free_module(V.fs, 1, H.dim());
        Subspace Win{VH, {}};
        for (const auto& b : W.basis) {
            auto c = subspace_coords(H, b);
            Win.basis.push_back(ModuleElem(VH, c));
        }
        for (auto flag : complete_flags(Win, VH)) {
            // map the inner flag back to ambient coordinates
            std::vector<Subspace> full{H};
            for (const auto& s : flag) {
                Subspace amb{V, {}};
                for (const auto& b : s.basis) amb.basis.push_back(from_subspace_coords(H, b.coords));
                full.push_back(std::move(amb));
            }
            out.push_back(std::move(full));
        }
    }
    return out;
}

std::vector<GRElem> hyperplane_form(const Subspace& H, const TorsionModule& V) {
    if (H.dim() + 1 != V.dim()) throw std::invalid_argument("hyperplane_form: codimension 1 required");
    // solve for phi with phi(row) = 0 for the RREF rows; the kernel of the
    // basis matrix acting on dual coordinates
    ChainMatrix m(V.fs, 1, H.dim(), V.dim());
    for (size_t i = 0; i < H.basis.size(); ++i)
        for (size_t j = 0; j < V.dim(); ++j) m.at(i, j) = H.basis[i].coords[j];
    ChainMatrix ker = kernel_rows(m.transpose());
    if (ker.rows() != 1) throw std::logic_error("hyperplane_form: expected a one-dimensional kernel");
    std::vector<GRElem> phi = ker.row(0);
    // normalize: first nonzero coefficient = 1
    for (auto& c : phi)
        if (!c.is_zero()) {
            GRElem inv = c.inv();
            for (auto& x : phi) x = x * inv;
            break;
        }
    return phi;
}

ModuleMap subspace_retraction(const Subspace& W) {
    // choose the pivot-column projection: v -> coordinates at the pivots
    const TorsionModule& V = W.ambient;
    TorsionModule Wmod = TorsionModule::free_module(V.fs, 1, W.dim());
    ModuleMap rho(V, Wmod);
    for (size_t i = 0; i < W.basis.size(); ++i) {
        size_t lead = 0;
        while (lead < V.dim() && W.basis[i].coords[lead].is_zero()) ++lead;
        rho.mat.at(i, lead) = GRElem::one(V.fs, 1);
    }
    return rho;
}

ModuleMap inclusion_map(const Subspace& W) {
    const TorsionModule& V = W.ambient;
    TorsionModule Wmod = TorsionModule::free_module(V.fs, 1, W.dim());
    ModuleMap inc(Wmod, V);
    for (size_t i = 0; i < W.basis.size(); ++i)
        for (size_t j = 0; j < V.dim(); ++j) inc.mat.at(j, i) = W.basis[i].coords[j];
    return inc;
}

HowellForm span_intersection(const FieldSpec& fs, uint32_t level, size_t cols,
                             const std::vector<std::vector<GRElem>>& a,
                             const std::vector<std::vector<GRElem>>& b) {
    // stack rows of a and b; left-kernel coefficients (u | v) give the
    // intersection elements u * a
    ChainMatrix stacked(fs, level, a.size() + b.size(), cols);
    for (size_t i = 0; i < a.size(); ++i) stacked.set_row(i, a[i]);
    for (size_t j = 0; j < b.size(); ++j) stacked.set_row(a.size() + j, b[j]);
    ChainMatrix ker = kernel_rows(stacked);
    SpanBuilder sb(fs, level, cols);
    for (size_t r = 0; r < ker.rows(); ++r) {
        std::vector<GRElem> v(cols, GRElem(fs, level));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t c = 0; c < cols; ++c) v[c] += ker.at(r, i) * a[i][c];
        sb.insert(v);
    }
    return sb.finish();
}

}  // namespace wg
