#include "wittgamma/tense.hpp"

#include <algorithm>
#include <stdexcept>

namespace wg {

size_t TenseProduct::pair_index(size_t i, size_t j) const {
    for (size_t k = 0; k < factor_pairs.size(); ++k)
        if (factor_pairs[k] == std::make_pair(i, j)) return k;
    return SIZE_MAX;
}

TenseProduct tense_product(const TorsionModule& M, const TorsionModule& N) {
    if (!(M.fs == N.fs) || M.m != N.m)
        throw std::invalid_argument("tense_product: modules must share W_n(k)");
    uint32_t n = M.m;
    std::vector<uint32_t> wt, wp;
    std::vector<std::pair<size_t, size_t>> pairs, plain_pairs;
    for (size_t i = 0; i < M.dim(); ++i)
        for (size_t j = 0; j < N.dim(); ++j) {
            uint32_t a = M.gen_level(i), b = N.gen_level(j);
            plain_pairs.emplace_back(i, j);
            wp.push_back(n - std::min(a, b));   // ordinary tensor factor W_{min(a,b)}
            if (a + b > n) {
                wt.push_back(n - (a + b - n));  // tense factor W_{a+b-n}
                pairs.emplace_back(i, j);
            }
        }
    TenseProduct out{TorsionModule(M.fs, n, wt), TorsionModule(M.fs, n, wp),
                     ModuleMap(TorsionModule(M.fs, n, wp), TorsionModule(M.fs, n, wt)), pairs};
    // quotient map: generator (i, j) of the plain tensor maps to the matching
    // tense generator when it survives
    for (size_t col = 0; col < plain_pairs.size(); ++col) {
        size_t row = out.pair_index(plain_pairs[col].first, plain_pairs[col].second);
        if (row != SIZE_MAX) out.quotient.mat.at(row, col) = GRElem::one(M.fs, n);
    }
    out.quotient.require_well_defined();
    return out;
}

int32_t valuation(const TorsionModule& M) {
    int32_t n = static_cast<int32_t>(M.m);
    bool nonzero = false;
    uint32_t maxw = 0;
    for (size_t i = 0; i < M.dim(); ++i) {
        if (M.gen_level(i) == 0) continue;
        nonzero = true;
        maxw = std::max(maxw, M.weights[i]);
    }
    if (!nonzero) return -n;
    return -static_cast<int32_t>(maxw);
}

TraceData trace_map(const TorsionModule& M) {
    TenseProduct prod = tense_product(M, dual_module(M));
    int32_t v = valuation(M);
    uint32_t target = static_cast<uint32_t>(static_cast<int32_t>(M.m) + v);
    TraceData out{prod, target, {}, true};
    // evaluation e_i (x) e_j^v -> p^{n-a_i} delta_{ij}, reduced to the target
    for (auto [i, j] : prod.factor_pairs) {
        GRElem val(M.fs, target);
        if (i == j && target > 0)
            val = GRElem::scalar(M.fs, target, pow_u64(M.fs.p, M.m - M.gen_level(i)));
        out.values.push_back(val);
    }
    // The evaluation factors through Ker(Phi) at level n+i iff every diagonal
    // kernel generator p^{max(0, 2a-n)} e (x) e^v evaluates to zero there,
    // i.e. n+i <= max(n-a, a) for every factor level a.  The largest such
    // level equals n + v_n(M) exactly when the minimizing factor has 2a >= n.
    uint32_t max_level = M.m;  // free factors impose no constraint below n
    bool any = false;
    for (size_t i = 0; i < M.dim(); ++i) {
        uint32_t a = M.gen_level(i);
        if (a == 0) continue;
        any = true;
        max_level = std::min(max_level, std::max(M.m - a, a));
    }
    out.maximal = !any || max_level == target;
    return out;
}

ChernPoly chern(const TorsionModule& M) {
    ChernPoly c;
    c.n = M.m;
    c.a.assign(M.m, 0);
    for (size_t i = 0; i < M.dim(); ++i) {
        uint32_t lvl = M.gen_level(i);  // factor W_lvl
        if (lvl == 0) continue;
        c.a[M.m - lvl] += 1;  // coefficient of X^{-(m-lvl)}
    }
    return c;
}

ChernPoly chern_mul(const ChernPoly& x, const ChernPoly& y) {
    if (x.n != y.n) throw std::invalid_argument("chern_mul: levels differ");
    ChernPoly out;
    out.n = x.n;
    out.a.assign(x.n, 0);
    for (uint32_t i = 0; i < x.n; ++i)
        for (uint32_t j = 0; j < y.n; ++j)
            if (i + j < x.n) out.a[i + j] += x.a[i] * y.a[j];
    return out;
}

int32_t chern_vx(const ChernPoly& c) {
    // Laurent valuation in X^{-1}: the deepest pole present
    for (uint32_t i = c.n; i-- > 0;)
        if (c.a[i] != 0) return -static_cast<int32_t>(i);
    return -static_cast<int32_t>(c.n);
}

TorsionModule theta(const TorsionModule& M) {
    if (M.m < 2) throw std::invalid_argument("theta: level >= 2 required");
    uint32_t n = M.m - 1;
    std::vector<uint32_t> w;
    for (size_t i = 0; i < M.dim(); ++i) {
        uint32_t lvl = std::min(M.gen_level(i), n);
        w.push_back(n - lvl);
    }
    return TorsionModule(M.fs, n, w);
}

bool theta_comparison_exists(uint32_t a, uint32_t b, uint32_t n) {
    auto lvl = [](int32_t x) { return std::max<int32_t>(x, 0); };
    int32_t lhs = lvl(static_cast<int32_t>(std::min(a, n)) + std::min(b, n) - n);
    int32_t rhs = std::min<int32_t>(lvl(static_cast<int32_t>(a) + b - (n + 1)), n);
    return lhs >= rhs;
}

}  // namespace wg
