#include "wittgamma/wmodule.hpp"

#include <algorithm>

#include "wittgamma/fqlinalg.hpp"
#include <sstream>
#include <stdexcept>

namespace wg {

TorsionModule::TorsionModule(const FieldSpec& f, uint32_t level, std::vector<uint32_t> w, uint32_t tw)
    : fs(f), m(level), weights(std::move(w)), twist(tw % f.r) {
    if (m == 0) throw std::invalid_argument("TorsionModule: m >= 1 required");
    for (uint32_t wi : weights)
        if (wi > m) throw std::invalid_argument("TorsionModule: weight above ambient level");
}

TorsionModule TorsionModule::free_module(const FieldSpec& f, uint32_t level, uint32_t rank) {
    return TorsionModule(f, level, std::vector<uint32_t>(rank, 0));
}

uint64_t TorsionModule::size_log() const {
    uint64_t s = 0;
    for (uint32_t wi : weights) s += uint64_t(fs.r) * (m - wi);
    return s;
}

bool TorsionModule::is_free() const {
    return std::all_of(weights.begin(), weights.end(), [](uint32_t w) { return w == 0; });
}

bool TorsionModule::is_vector_space() const { return m == 1 && is_free(); }

bool TorsionModule::is_zero() const {
    return std::all_of(weights.begin(), weights.end(), [this](uint32_t w) { return w == m; });
}

std::vector<uint32_t> TorsionModule::signature() const {
    std::vector<uint32_t> s = weights;
    std::sort(s.begin(), s.end());
    return s;
}

std::string TorsionModule::key() const {
    std::ostringstream os;
    os << "p" << fs.p << "r" << fs.r << "m" << m << "t" << twist << "w";
    for (uint32_t wi : weights) os << wi << ".";
    return os.str();
}

TorsionModule TorsionModule::twisted(uint32_t s) const {
    TorsionModule t = *this;
    t.twist = (twist + s) % fs.r;
    return t;
}

TorsionModule TorsionModule::canonical() const {
    TorsionModule t = *this;
    t.weights = signature();
    t.twist = 0;
    return t;
}

bool TorsionModule::operator==(const TorsionModule& o) const {
    return fs == o.fs && m == o.m && weights == o.weights && twist == o.twist;
}

ModuleElem::ModuleElem(const TorsionModule& M) : mod(M) {
    for (size_t i = 0; i < M.dim(); ++i) coords.emplace_back(M.fs, M.gen_level(i));
}

ModuleElem::ModuleElem(const TorsionModule& M, std::vector<GRElem> c) : mod(M), coords(std::move(c)) {
    if (coords.size() != M.dim()) throw std::invalid_argument("ModuleElem: coordinate count");
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i].level() != M.gen_level(i))
            throw std::invalid_argument("ModuleElem: coordinate level mismatch");
}

ModuleElem ModuleElem::basis(const TorsionModule& M, size_t i) {
    ModuleElem e(M);
    if (M.gen_level(i) > 0) e.coords[i] = GRElem::one(M.fs, M.gen_level(i));
    return e;
}

bool ModuleElem::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const GRElem& c) { return c.is_zero(); });
}

bool ModuleElem::operator==(const ModuleElem& o) const {
    return mod == o.mod && coords == o.coords;
}

ModuleElem ModuleElem::operator+(const ModuleElem& o) const {
    ModuleElem out = *this;
    for (size_t i = 0; i < coords.size(); ++i) out.coords[i] += o.coords[i];
    return out;
}

ModuleElem ModuleElem::operator-(const ModuleElem& o) const {
    ModuleElem out = *this;
    for (size_t i = 0; i < coords.size(); ++i) out.coords[i] -= o.coords[i];
    return out;
}

ModuleElem ModuleElem::operator-() const {
    ModuleElem out = *this;
    for (auto& c : out.coords) c = -c;
    return out;
}

ModuleElem ModuleElem::scale(const GRElem& s) const {
    ModuleElem out = *this;
    for (auto& c : out.coords) c = c * s.reduce(c.level());
    return out;
}

ModuleElem ModuleElem::scale_u64(uint64_t s) const {
    ModuleElem out = *this;
    for (auto& c : out.coords) c = c.mul_scalar(s);
    return out;
}

GRElem ModuleElem::lifted_coord(size_t i, uint32_t level) const {
    // canonical lift upward; reduction downward is sound wherever the
    // consuming map satisfies the order-divisibility invariant
    return level >= coords[i].level() ? coords[i].lift(level) : coords[i].reduce(level);
}

ModuleElem ModuleElem::twist_map(uint32_t s) const {
    ModuleElem out = *this;
    out.mod = mod.twisted(s);
    for (auto& c : out.coords) c = c.frob_lift_iter(s);
    return out;
}

std::vector<ModuleElem> module_elements(const TorsionModule& M) {
    if (M.size_log() > 24) throw std::invalid_argument("module_elements: module too large");
    std::vector<ModuleElem> out;
    std::vector<std::vector<GRElem>> per_coord;
    for (size_t i = 0; i < M.dim(); ++i) per_coord.push_back(ring_elements(M.fs, M.gen_level(i)));
    std::vector<size_t> idx(M.dim(), 0);
    while (true) {
        std::vector<GRElem> c;
        for (size_t i = 0; i < M.dim(); ++i) c.push_back(per_coord[i][idx[i]]);
        out.emplace_back(M, std::move(c));
        size_t i = 0;
        for (; i < M.dim(); ++i) {
            if (++idx[i] < per_coord[i].size()) break;
            idx[i] = 0;
        }
        if (i == M.dim()) break;
        if (M.dim() == 0) break;
    }
    return out;
}

TorsionModule dual_module(const TorsionModule& M) { return M; }

GRElem mod_pairing(const ModuleElem& x, const ModuleElem& phi) {
    if (!(x.mod.fs == phi.mod.fs) || x.mod.m != phi.mod.m || x.mod.weights != phi.mod.weights)
        throw std::invalid_argument("mod_pairing: modules must share weights");
    const TorsionModule& M = x.mod;
    GRElem acc(M.fs, M.m);
    for (size_t i = 0; i < M.dim(); ++i) {
        GRElem t = x.lifted_coord(i, M.m) * phi.lifted_coord(i, M.m);
        acc += t.mul_scalar(pow_u64(M.fs.p, M.weights[i]));
    }
    return acc;
}

ModuleMap::ModuleMap(const TorsionModule& d, const TorsionModule& c)
    : dom(d), cod(c), mat(c.fs, c.m, c.dim(), d.dim()) {
    if (!(d.fs == c.fs)) throw std::invalid_argument("ModuleMap: field mismatch");
}

ModuleMap ModuleMap::identity(const TorsionModule& M) {
    ModuleMap f(M, M);
    for (size_t i = 0; i < M.dim(); ++i) f.mat.at(i, i) = GRElem::one(M.fs, M.m);
    return f;
}

ModuleMap ModuleMap::zero(const TorsionModule& d, const TorsionModule& c) { return ModuleMap(d, c); }

ModuleMap ModuleMap::from_columns(const TorsionModule& d, const TorsionModule& c,
                                  const std::vector<ModuleElem>& images) {
    if (images.size() != d.dim()) throw std::invalid_argument("from_columns: need one image per generator");
    ModuleMap f(d, c);
    for (size_t j = 0; j < images.size(); ++j)
        for (size_t i = 0; i < c.dim(); ++i) f.mat.at(i, j) = images[j].lifted_coord(i, c.m);
    return f;
}

bool ModuleMap::well_defined() const {
    for (size_t j = 0; j < dom.dim(); ++j)
        for (size_t i = 0; i < cod.dim(); ++i) {
            // p^{m_d - w_j} * entry must vanish mod p^{m_c - w'_i}
            uint32_t kill = dom.gen_level(j);
            uint32_t need = cod.gen_level(i);
            if (need > kill && mat.at(i, j).valuation() < need - kill) return false;
        }
    return true;
}

void ModuleMap::require_well_defined() const {
    if (!well_defined()) throw std::invalid_argument("ModuleMap: order-divisibility invariant violated");
}

ModuleElem ModuleMap::apply(const ModuleElem& x) const {
    ModuleElem out(cod);
    for (size_t i = 0; i < cod.dim(); ++i) {
        GRElem acc(cod.fs, cod.m);
        for (size_t j = 0; j < dom.dim(); ++j) acc += mat.at(i, j) * x.lifted_coord(j, cod.m);
        out.coords[i] = acc.reduce(cod.gen_level(i));
    }
    return out;
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
    if (!(inner.cod.fs == dom.fs) || inner.cod.m != dom.m || inner.cod.weights != dom.weights ||
        inner.cod.twist != dom.twist)
        throw std::invalid_argument("ModuleMap::compose: middle modules differ");
    ModuleMap out(inner.dom, cod);
    uint32_t lvl = cod.m;
    for (size_t i = 0; i < cod.dim(); ++i)
        for (size_t j = 0; j < inner.dom.dim(); ++j) {
            GRElem acc(cod.fs, lvl);
            for (size_t k = 0; k < dom.dim(); ++k) {
                GRElem a = mat.at(i, k);
                GRElem b = inner.mat.at(k, j);
                // inner entries are only defined mod the order of the middle
                // generator; the well-definedness of `this` makes the product
                // independent of the representative
                GRElem bl = (inner.cod.m >= lvl) ? b.reduce(lvl) : b.lift(lvl);
                acc += a * bl;
            }
            out.mat.at(i, j) = acc;
        }
    return out;
}

ModuleMap ModuleMap::dual_map() const {
    // <f e_j, e'_i^v> = p^{w'_i} f_{ij} and <e_j, g e'_i^v> = p^{w_j} g_{ji},
    // so g_{ji} = p^{w'_i} f_{ij} / p^{w_j}, exact by the order invariant.
    if (dom.m != cod.m) throw std::invalid_argument("dual_map: ambient levels must agree");
    ModuleMap g(cod, dom);
    for (size_t i = 0; i < cod.dim(); ++i)
        for (size_t j = 0; j < dom.dim(); ++j) {
            GRElem t = mat.at(i, j).mul_scalar(pow_u64(dom.fs.p, cod.weights[i]));
            if (t.valuation() < dom.weights[j])
                throw std::logic_error("dual_map: divisibility failure");
            g.mat.at(j, i) = t.div_pow_p(dom.weights[j]).lift(dom.m);
        }
    return g;
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
    ModuleMap out = *this;
    out.mat = mat + o.mat;
    return out;
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const {
    ModuleMap out = *this;
    out.mat = mat - o.mat;
    return out;
}

ModuleMap ModuleMap::scale(const GRElem& s) const {
    ModuleMap out = *this;
    out.mat = mat.mul_scalar(s.reduce(cod.m));
    return out;
}

bool ModuleMap::operator==(const ModuleMap& o) const {
    if (!(dom == o.dom && cod == o.cod)) return false;
    // compare entries modulo the codomain generator orders
    for (size_t i = 0; i < cod.dim(); ++i)
        for (size_t j = 0; j < dom.dim(); ++j)
            if (!(mat.at(i, j).reduce(cod.gen_level(i)) == o.mat.at(i, j).reduce(cod.gen_level(i))))
                return false;
    return true;
}

ModuleElem ModuleMap::column(size_t j) const {
    ModuleElem out(cod);
    for (size_t i = 0; i < cod.dim(); ++i) out.coords[i] = mat.at(i, j).reduce(cod.gen_level(i));
    return out;
}

bool ModuleMap::is_identity_on_generators() const {
    return *this == identity(dom);
}

std::vector<GRElem> embed_elem(const ModuleElem& x) {
    const TorsionModule& M = x.mod;
    std::vector<GRElem> v;
    for (size_t i = 0; i < M.dim(); ++i)
        v.push_back(x.lifted_coord(i, M.m).mul_scalar(pow_u64(M.fs.p, M.weights[i])));
    return v;
}

bool Submodule::contains(const ModuleElem& x) const { return span.contains(embed_elem(x)); }

std::vector<uint32_t> Submodule::invariants() const {
    // levels of the cyclic factors of the span: row span with Smith invariant
    // p^j contributes a factor W_{m-j}
    std::vector<uint32_t> exps = smith_exponents(span.mat);
    std::vector<uint32_t> lv;
    for (uint32_t j : exps) lv.push_back(ambient.m - j);
    std::sort(lv.begin(), lv.end());
    return lv;
}

TorsionModule Submodule::quotient() const {
    // M/S = W_m^d / (embedded S + diagonal p^{m-w_i}); a Smith pivot p^j on a
    // column leaves the quotient factor W_j there, i.e. weight m - j
    ChainMatrix rel = span.mat;
    for (size_t i = 0; i < ambient.dim(); ++i) {
        std::vector<GRElem> row(ambient.dim(), GRElem(ambient.fs, ambient.m));
        row[i] = GRElem::scalar(ambient.fs, ambient.m, pow_u64(ambient.fs.p, ambient.gen_level(i)));
        rel.append_row(row);
    }
    std::vector<uint32_t> exps = smith_exponents(rel);
    std::vector<uint32_t> w;
    for (uint32_t j : exps) w.push_back(ambient.m - j);
    while (w.size() < ambient.dim()) w.push_back(0);  // untouched free W_m factors
    std::sort(w.begin(), w.end());
    return TorsionModule(ambient.fs, ambient.m, w);
}

namespace {
GRElem at_level_w(const GRElem& x, uint32_t level) {
    return level >= x.level() ? x.lift(level) : x.reduce(level);
}
}  // namespace

ModuleElem unembed(const TorsionModule& M, const std::vector<GRElem>& row) {
    ModuleElem x(M);
    for (size_t k = 0; k < M.dim(); ++k) {
        if (row[k].valuation() < M.weights[k])
            throw std::invalid_argument("unembed: row not in the embedded module");
        x.coords[k] = row[k].div_pow_p_same_level(M.weights[k]).reduce(M.gen_level(k));
    }
    return x;
}

HowellForm kernel_span(const ModuleMap& f) {
    // condition on embedded coordinates y_k = p^{w_k} x_k:
    //   sum_k y_k * (p^{w'_i} f_{ik} / p^{w_k}) = 0 mod p^{m_cod}, all i
    const TorsionModule& D = f.dom;
    const TorsionModule& C = f.cod;
    uint32_t L = C.m;
    ChainMatrix cond(D.fs, L, D.dim(), C.dim());
    for (size_t k = 0; k < D.dim(); ++k)
        for (size_t i = 0; i < C.dim(); ++i) {
            GRElem t = f.mat.at(i, k).mul_scalar(pow_u64(D.fs.p, C.weights[i]));
            if (t.valuation() < D.weights[k]) throw std::logic_error("kernel_span: valuation");
            cond.at(k, i) = t.div_pow_p_same_level(D.weights[k]);
        }
    ChainMatrix ker = kernel_rows(cond);
    // intersect with the embedded lattice of the domain (at level L, then
    // restated at the domain ambient level)
    std::vector<std::vector<GRElem>> kerrows, lattice;
    for (size_t i = 0; i < ker.rows(); ++i) kerrows.push_back(ker.row(i));
    for (size_t i = 0; i < D.dim(); ++i) {
        std::vector<GRElem> row(D.dim(), GRElem(D.fs, L));
        row[i] = GRElem::scalar(D.fs, L, pow_u64(D.fs.p, D.weights[i]));
        lattice.push_back(row);
    }
    HowellForm inter = span_intersection(D.fs, L, D.dim(), kerrows, lattice);
    if (D.m == L) return inter;
    // restate at the domain level
    SpanBuilder sb(D.fs, D.m, D.dim());
    for (size_t i = 0; i < inter.mat.rows(); ++i) {
        std::vector<GRElem> row;
        for (size_t k = 0; k < D.dim(); ++k) row.push_back(at_level_w(inter.mat.at(i, k), D.m));
        sb.insert(row);
    }
    return sb.finish();
}

Submodule span_of(const TorsionModule& M, const std::vector<ModuleElem>& gens) {
    SpanBuilder sb(M.fs, M.m, M.dim());
    for (const auto& g : gens) {
        if (!(g.mod.fs == M.fs) || g.mod.m != M.m || g.mod.weights != M.weights)
            throw std::invalid_argument("span_of: generator from a different module");
        sb.insert(embed_elem(g));
    }
    return Submodule{M, sb.finish()};
}

}  // namespace wg
