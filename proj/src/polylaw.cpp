#include "wittgamma/polylaw.hpp"

#include <algorithm>
#include <stdexcept>

namespace wg {

MPoly MPoly::var(const FieldSpec& fs, uint32_t level, size_t nvars, size_t i) {
    MPoly p(fs, level, nvars);
    std::vector<uint32_t> e(nvars, 0);
    e[i] = 1;
    p.add_term(e, GRElem::one(fs, level));
    return p;
}

MPoly MPoly::constant(const FieldSpec& fs, uint32_t level, size_t nvars, const GRElem& c) {
    MPoly p(fs, level, nvars);
    p.add_term(std::vector<uint32_t>(nvars, 0), c);
    return p;
}

void MPoly::add_term(const std::vector<uint32_t>& e, const GRElem& c) {
    if (e.size() != nvars_) throw std::invalid_argument("MPoly: exponent width");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

uint64_t MPoly::total_degree() const {
    uint64_t d = 0;
    for (const auto& [e, c] : terms_) {
        uint64_t t = 0;
        for (uint32_t x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

bool MPoly::is_homogeneous(uint64_t deg) const {
    for (const auto& [e, c] : terms_) {
        uint64_t t = 0;
        for (uint32_t x : e) t += x;
        if (t != deg) return false;
    }
    return true;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly out(fs_, level_, nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<uint32_t> e(nvars_);
            for (size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

MPoly MPoly::scale(const GRElem& c) const {
    MPoly out(fs_, level_, nvars_);
    for (const auto& [e, x] : terms_) out.add_term(e, x * c);
    return out;
}

MPoly MPoly::pow(uint64_t e) const {
    MPoly out = constant(fs_, level_, nvars_, GRElem::one(fs_, level_));
    MPoly base = *this;
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

MPoly MPoly::compose(const std::vector<MPoly>& subs) const {
    if (subs.size() != nvars_) throw std::invalid_argument("MPoly::compose: wrong count");
    size_t outvars = subs.empty() ? 0 : subs[0].nvars();
    MPoly out(fs_, level_, outvars);
    for (const auto& [e, c] : terms_) {
        MPoly term = MPoly::constant(fs_, level_, outvars, c);
        for (size_t i = 0; i < nvars_; ++i)
            if (e[i]) term = term * subs[i].pow(e[i]);
        out = out + term;
    }
    return out;
}

GRElem MPoly::evaluate(const std::vector<GRElem>& point) const {
    GRElem acc(fs_, level_);
    for (const auto& [e, c] : terms_) {
        GRElem t = c;
        for (size_t i = 0; i < nvars_; ++i)
            if (e[i]) t = t * point[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

GRElem MPoly::evaluate_embedded(const FieldEmbedding& emb, const std::vector<GRElem>& point) const {
    GRElem acc(emb.big(), level_);
    for (const auto& [e, c] : terms_) {
        GRElem t = emb.map(c);
        for (size_t i = 0; i < nvars_; ++i)
            if (e[i]) t = t * point[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

MPoly MPoly::divide_exact(const MPoly& q) const {
    if (q.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    MPoly rem = *this;
    MPoly quot(fs_, level_, nvars_);
    // lex leading term of q (largest exponent vector)
    const auto qlead = std::prev(q.terms_.end());
    GRElem qinv = qlead->second.inv();
    while (!rem.terms_.empty()) {
        const auto rlead = std::prev(rem.terms_.end());
        std::vector<uint32_t> diff(nvars_);
        bool divisible = true;
        for (size_t i = 0; i < nvars_; ++i) {
            if (rlead->first[i] < qlead->first[i]) { divisible = false; break; }
            diff[i] = rlead->first[i] - qlead->first[i];
        }
        if (!divisible) throw std::invalid_argument("divide_exact: not divisible");
        GRElem c = rlead->second * qinv;
        MPoly mono(fs_, level_, nvars_);
        mono.add_term(diff, c);
        quot = quot + mono;
        rem = rem - mono * q;
    }
    return quot;
}

PolyLaw PolyLaw::from_components(const FieldSpec& k, uint32_t src_dim,
                                 const TorsionModule& target, uint64_t degree,
                                 const std::vector<MPoly>& comps) {
    if (comps.size() != target.dim()) throw std::invalid_argument("PolyLaw: component count");
    PolyLaw law{k, src_dim, target, degree, {}};
    for (size_t g = 0; g < comps.size(); ++g) {
        if (!comps[g].is_homogeneous(degree))
            throw std::invalid_argument("PolyLaw: non-homogeneous component rejected");
        for (const auto& [e, c] : comps[g].terms()) {
            Composition A(e.begin(), e.end());
            auto it = law.coeffs.find(A);
            if (it == law.coeffs.end()) it = law.coeffs.emplace(A, ModuleElem(target)).first;
            it->second.coords[g] += at_level(c, target.gen_level(g));
        }
    }
    // drop zero entries
    for (auto it = law.coeffs.begin(); it != law.coeffs.end();)
        it = it->second.is_zero() ? law.coeffs.erase(it) : std::next(it);
    return law;
}

std::vector<MPoly> PolyLaw::components() const {
    std::vector<MPoly> comps;
    for (size_t g = 0; g < target.dim(); ++g) comps.emplace_back(k, target.m, src_dim);
    for (const auto& [A, val] : coeffs) {
        std::vector<uint32_t> e(A.begin(), A.end());
        for (size_t g = 0; g < target.dim(); ++g)
            comps[g].add_term(e, at_level(val.coords[g], target.m));
    }
    return comps;
}

PolyLaw PolyLaw::identity(const TorsionModule& V) {
    std::vector<MPoly> comps;
    for (size_t i = 0; i < V.dim(); ++i) comps.push_back(MPoly::var(V.fs, V.m, V.dim(), i));
    return from_components(V.fs, static_cast<uint32_t>(V.dim()), V, 1, comps);
}

PolyLaw PolyLaw::frobenius_power(const TorsionModule& V, uint32_t c) {
    uint64_t qc = pow_u64(pow_u64(V.fs.p, V.fs.r), c);
    std::vector<MPoly> comps;
    for (size_t i = 0; i < V.dim(); ++i) comps.push_back(MPoly::var(V.fs, V.m, V.dim(), i).pow(qc));
    return from_components(V.fs, static_cast<uint32_t>(V.dim()), V, qc, comps);
}

PolyLaw PolyLaw::operator+(const PolyLaw& o) const {
    if (degree != o.degree || src_dim != o.src_dim)
        throw std::invalid_argument("PolyLaw: shape mismatch in +");
    PolyLaw out = *this;
    for (const auto& [A, val] : o.coeffs) {
        auto it = out.coeffs.find(A);
        if (it == out.coeffs.end())
            out.coeffs.emplace(A, val);
        else {
            it->second = it->second + val;
            if (it->second.is_zero()) out.coeffs.erase(it);
        }
    }
    return out;
}

bool PolyLaw::operator==(const PolyLaw& o) const {
    if (degree != o.degree || src_dim != o.src_dim) return false;
    if (coeffs.size() != o.coeffs.size()) return false;
    auto a = coeffs.begin();
    auto b = o.coeffs.begin();
    for (; a != coeffs.end(); ++a, ++b)
        if (a->first != b->first || !(a->second == b->second)) return false;
    return true;
}

PolyLaw PolyLaw::compose(const PolyLaw& inner) const {
    if (inner.target.dim() != src_dim) throw std::invalid_argument("PolyLaw::compose: shape");
    std::vector<MPoly> mine = components();
    std::vector<MPoly> in = inner.components();
    std::vector<MPoly> out;
    for (auto& c : mine) out.push_back(c.compose(in));
    return from_components(k, inner.src_dim, target, degree * inner.degree, out);
}

PolyLaw PolyLaw::map_target(const ModuleMap& f) const {
    PolyLaw out{k, src_dim, f.cod, degree, {}};
    for (const auto& [A, val] : coeffs) {
        ModuleElem img = f.apply(val);
        if (!img.is_zero()) out.coeffs.emplace(A, img);
    }
    return out;
}

ModuleElem PolyLaw::evaluate(const std::vector<GRElem>& point) const {
    ModuleElem out(target);
    for (const auto& [A, val] : coeffs) {
        GRElem mono = GRElem::one(k, target.m);
        for (size_t i = 0; i < A.size(); ++i)
            if (A[i]) mono = mono * at_level(point[i], target.m).pow(A[i]);
        out = out + val.scale(mono);
    }
    return out;
}

ModuleElem PolyLaw::evaluate_embedded(const FieldEmbedding& emb,
                                      const std::vector<GRElem>& point) const {
    // result coordinates over the big field, at the target levels
    TorsionModule big_target(emb.big(), target.m, target.weights);
    ModuleElem out(big_target);
    for (const auto& [A, val] : coeffs) {
        GRElem mono = GRElem::one(emb.big(), target.m);
        for (size_t i = 0; i < A.size(); ++i)
            if (A[i]) mono = mono * at_level(point[i], target.m).pow(A[i]);
        for (size_t g = 0; g < target.dim(); ++g) {
            GRElem c = emb.map(at_level(val.coords[g], target.m));
            out.coords[g] += at_level(c * mono, big_target.gen_level(g));
        }
    }
    return out;
}

ModuleMap PolyLaw::to_linear_map() const {
    TorsionModule src = TorsionModule::free_module(k, 1, src_dim);
    GammaBasis gb = GammaBasis::gamma(src, degree);
    return map_from_coefficients(gb, target, coeffs);
}

}  // namespace wg
