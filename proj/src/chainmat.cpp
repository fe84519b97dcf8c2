#include "wittgamma/chainmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace wg {

ChainMatrix::ChainMatrix(const FieldSpec& fs, uint32_t level, size_t rows, size_t cols)
    : fs_(fs), level_(level), rows_(rows), cols_(cols),
      a_(rows * cols, GRElem(fs, level)) {}

ChainMatrix ChainMatrix::identity(const FieldSpec& fs, uint32_t level, size_t n) {
    ChainMatrix m(fs, level, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = GRElem::one(fs, level);
    return m;
}

ChainMatrix ChainMatrix::from_rows(const FieldSpec& fs, uint32_t level,
                                   const std::vector<std::vector<GRElem>>& rows, size_t cols) {
    ChainMatrix m(fs, level, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

ChainMatrix ChainMatrix::operator*(const ChainMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("ChainMatrix: shape mismatch in *");
    ChainMatrix out(fs_, level_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const GRElem& x = at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) out.at(i, j) += x * o.at(k, j);
        }
    return out;
}

ChainMatrix ChainMatrix::operator+(const ChainMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("ChainMatrix: shape mismatch in +");
    ChainMatrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
}

ChainMatrix ChainMatrix::operator-(const ChainMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("ChainMatrix: shape mismatch in -");
    ChainMatrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
}

ChainMatrix ChainMatrix::mul_scalar(const GRElem& s) const {
    ChainMatrix out = *this;
    for (auto& x : out.a_) x = x * s;
    return out;
}

ChainMatrix ChainMatrix::transpose() const {
    ChainMatrix out(fs_, level_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool ChainMatrix::operator==(const ChainMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && level_ == o.level_ && a_ == o.a_;
}

bool ChainMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const GRElem& x) { return x.is_zero(); });
}

std::vector<GRElem> ChainMatrix::row(size_t i) const {
    return std::vector<GRElem>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void ChainMatrix::set_row(size_t i, const std::vector<GRElem>& r) {
    if (r.size() != cols_) throw std::invalid_argument("set_row: width mismatch");
    std::copy(r.begin(), r.end(), a_.begin() + i * cols_);
}

void ChainMatrix::append_row(const std::vector<GRElem>& r) {
    if (r.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
}

namespace {

void row_sub_scaled(std::vector<GRElem>& v, const GRElem& t, const std::vector<GRElem>& row) {
    for (size_t j = 0; j < v.size(); ++j) v[j] -= t * row[j];
}

}  // namespace

SpanBuilder::SpanBuilder(const FieldSpec& fs, uint32_t level, size_t cols)
    : fs_(fs), level_(level), cols_(cols) {
    if (level == 0) throw std::invalid_argument("SpanBuilder: level >= 1 required");
}

bool SpanBuilder::insert(const std::vector<GRElem>& vin) {
    if (vin.size() != cols_) throw std::invalid_argument("SpanBuilder::insert: width mismatch");
    uint64_t before = size_log();
    pending_.push_back(vin);
    flush();
    return size_log() != before;
}

void SpanBuilder::flush() {
    while (!pending_.empty()) {
        std::vector<GRElem> v = std::move(pending_.back());
        pending_.pop_back();
        for (size_t col = 0; col < cols_; ++col) {
            uint32_t jv = v[col].valuation();
            if (jv >= level_) continue;  // zero entry
            // locate existing pivot at this column
            size_t idx = rows_.size();
            for (size_t k = 0; k < pivcol_.size(); ++k)
                if (pivcol_[k] == col) { idx = k; break; }
            if (idx < rows_.size()) {
                uint32_t e = pivexp_[idx];
                if (jv >= e) {
                    GRElem t = v[col].div_pow_p_same_level(e);
                    row_sub_scaled(v, t, rows_[idx]);
                    continue;  // entry now exactly zero
                }
                // incoming row has the smaller valuation: it becomes the pivot
                GRElem unit = v[col].div_pow_p_same_level(jv);
                GRElem ui = unit.inv();
                for (auto& x : v) x = x * ui;
                std::swap(v, rows_[idx]);
                pivexp_[idx] = jv;
                if (jv > 0) {
                    std::vector<GRElem> ann = rows_[idx];
                    GRElem s = GRElem::scalar(fs_, level_, pow_u64(fs_.p, level_ - jv));
                    for (auto& x : ann) x = x * s;
                    pending_.push_back(std::move(ann));
                }
                // keep reducing the displaced old pivot row (valuation e > jv here)
                GRElem t = v[col].div_pow_p_same_level(jv);
                row_sub_scaled(v, t, rows_[idx]);
                continue;
            }
            // new pivot column
            GRElem unit = v[col].div_pow_p_same_level(jv);
            GRElem ui = unit.inv();
            for (auto& x : v) x = x * ui;
            rows_.push_back(v);
            pivcol_.push_back(col);
            pivexp_.push_back(jv);
            if (jv > 0) {
                std::vector<GRElem> ann = v;
                GRElem s = GRElem::scalar(fs_, level_, pow_u64(fs_.p, level_ - jv));
                for (auto& x : ann) x = x * s;
                pending_.push_back(std::move(ann));
            }
            v.clear();
            break;
        }
    }
}

void SpanBuilder::reduce(std::vector<GRElem>& v) const {
    // pivots must be consumed in ascending column order; pivot rows vanish
    // before their own pivot column, so no earlier column is reintroduced
    std::vector<size_t> order(rows_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivcol_[a] < pivcol_[b]; });
    for (size_t k : order) {
        size_t col = pivcol_[k];
        uint32_t jv = v[col].valuation();
        if (jv >= level_) continue;
        if (jv < pivexp_[k]) continue;  // cannot be cleared; membership will fail
        GRElem t = v[col].div_pow_p_same_level(pivexp_[k]);
        row_sub_scaled(v, t, rows_[k]);
    }
}

bool SpanBuilder::contains(const std::vector<GRElem>& vin) const {
    std::vector<GRElem> v = vin;
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const GRElem& x) { return x.is_zero(); });
}

uint64_t SpanBuilder::size_log() const {
    uint64_t s = 0;
    for (uint32_t e : pivexp_) s += uint64_t(fs_.r) * (level_ - e);
    return s;
}

HowellForm SpanBuilder::finish() const {
    // order rows by pivot column, then reduce entries above each pivot
    std::vector<size_t> order(rows_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pivcol_[a] < pivcol_[b]; });
    std::vector<std::vector<GRElem>> rows;
    std::vector<size_t> pc;
    std::vector<uint32_t> pe;
    for (size_t i : order) {
        rows.push_back(rows_[i]);
        pc.push_back(pivcol_[i]);
        pe.push_back(pivexp_[i]);
    }
    for (size_t i = 0; i < rows.size(); ++i) {
        uint64_t pj = pow_u64(fs_.p, pe[i]);
        for (size_t k = 0; k < i; ++k) {
            const GRElem& e = rows[k][pc[i]];
            if (e.is_zero()) continue;
            // canonical reduction: leave the entry with coefficients in [0, p^exp)
            std::vector<uint64_t> q(e.coeffs());
            for (auto& x : q) x /= pj;
            GRElem t(fs_.p, fs_.r, level_, std::move(q));
            row_sub_scaled(rows[k], t, rows[i]);
        }
    }
    HowellForm h{ChainMatrix(fs_, level_, 0, cols_), pc, pe};
    for (auto& r : rows) h.mat.append_row(r);
    return h;
}

HowellForm howell_form(const ChainMatrix& m) {
    SpanBuilder sb(m.spec(), m.level(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i) sb.insert(m.row(i));
    return sb.finish();
}

uint64_t HowellForm::span_size_log() const {
    uint64_t s = 0;
    for (size_t i = 0; i < pivot_exp.size(); ++i)
        s += uint64_t(mat.spec().r) * (mat.level() - pivot_exp[i]);
    return s;
}

bool HowellForm::contains(const std::vector<GRElem>& v) const {
    return reduce_coeffs(v).has_value();
}

std::optional<std::vector<GRElem>> HowellForm::reduce_coeffs(const std::vector<GRElem>& vin) const {
    std::vector<GRElem> v = vin;
    std::vector<GRElem> t(mat.rows(), GRElem(mat.spec(), mat.level()));
    for (size_t i = 0; i < mat.rows(); ++i) {
        const GRElem& e = v[pivot_col[i]];
        if (e.is_zero()) continue;
        if (e.valuation() < pivot_exp[i]) return std::nullopt;
        t[i] = e.div_pow_p_same_level(pivot_exp[i]);
        row_sub_scaled(v, t[i], mat.row(i));
    }
    for (const auto& x : v)
        if (!x.is_zero()) return std::nullopt;
    return t;
}

std::vector<uint32_t> smith_exponents(const ChainMatrix& m) {
    ChainMatrix w = m;
    const uint32_t N = m.level();
    size_t top = 0;  // rows/cols before `top` are finished
    std::vector<uint32_t> exps;
    size_t nr = w.rows(), nc = w.cols();
    while (top < nr && top < nc) {
        uint32_t best = VP_INF;
        size_t bi = top, bj = top;
        for (size_t i = top; i < nr; ++i)
            for (size_t j = top; j < nc; ++j) {
                uint32_t v = w.at(i, j).valuation();
                if (v < best) { best = v; bi = i; bj = j; }
            }
        if (best >= N) break;  // remainder is zero
        // move pivot to (top, top)
        for (size_t j = 0; j < nc; ++j) std::swap(w.at(top, j), w.at(bi, j));
        for (size_t i = 0; i < nr; ++i) std::swap(w.at(i, top), w.at(i, bj));
        GRElem unit = w.at(top, top).div_pow_p_same_level(best);
        GRElem ui = unit.inv();
        for (size_t j = top; j < nc; ++j) w.at(top, j) = w.at(top, j) * ui;
        for (size_t i = top + 1; i < nr; ++i) {
            const GRElem& e = w.at(i, top);
            if (e.is_zero()) continue;
            GRElem t = e.div_pow_p_same_level(best);
            for (size_t j = top; j < nc; ++j) w.at(i, j) -= t * w.at(top, j);
        }
        // remaining entries in the pivot row die under column operations,
        // which leave the other rows untouched (their pivot-column is now 0)
        for (size_t j = top + 1; j < nc; ++j) w.at(top, j) = GRElem(m.spec(), N);
        exps.push_back(best);
        ++top;
    }
    std::sort(exps.begin(), exps.end());
    return exps;
}

namespace {

// Elimination with combination tracking over [S | aug].
struct Tracked {
    const FieldSpec fs;
    uint32_t level;
    size_t scols, acols;
    std::vector<std::vector<GRElem>> pivots;
    std::vector<size_t> pivcol;
    std::vector<uint32_t> pivexp;
    std::vector<std::vector<GRElem>> kernels;

    void process(std::vector<std::vector<GRElem>> work) {
        while (!work.empty()) {
            std::vector<GRElem> v = std::move(work.back());
            work.pop_back();
            bool placed = false;
            for (size_t col = 0; col < scols && !placed; ++col) {
                uint32_t jv = v[col].valuation();
                if (jv >= level) continue;
                size_t idx = pivots.size();
                for (size_t k = 0; k < pivcol.size(); ++k)
                    if (pivcol[k] == col) { idx = k; break; }
                if (idx < pivots.size()) {
                    uint32_t e = pivexp[idx];
                    if (jv >= e) {
                        GRElem t = v[col].div_pow_p_same_level(e);
                        row_sub_scaled(v, t, pivots[idx]);
                        continue;
                    }
                    GRElem ui = v[col].div_pow_p_same_level(jv).inv();
                    for (auto& x : v) x = x * ui;
                    std::swap(v, pivots[idx]);
                    pivexp[idx] = jv;
                    push_annihilator(work, pivots[idx], jv);
                    GRElem t = v[col].div_pow_p_same_level(jv);
                    row_sub_scaled(v, t, pivots[idx]);
                    continue;
                }
                GRElem ui = v[col].div_pow_p_same_level(jv).inv();
                for (auto& x : v) x = x * ui;
                pivots.push_back(v);
                pivcol.push_back(col);
                pivexp.push_back(jv);
                push_annihilator(work, pivots.back(), jv);
                placed = true;
            }
            if (!placed) {
                // the S-part is zero; the aug part is a kernel combination
                std::vector<GRElem> a(v.begin() + scols, v.end());
                if (std::any_of(a.begin(), a.end(), [](const GRElem& x) { return !x.is_zero(); }))
                    kernels.push_back(std::move(a));
            }
        }
    }

    void push_annihilator(std::vector<std::vector<GRElem>>& work,
                          const std::vector<GRElem>& row, uint32_t exp) {
        if (exp == 0) return;
        std::vector<GRElem> ann = row;
        GRElem s = GRElem::scalar(fs, level, pow_u64(fs.p, level - exp));
        for (auto& x : ann) x = x * s;
        work.push_back(std::move(ann));
    }

    uint64_t span_size_log() const {
        uint64_t s = 0;
        for (uint32_t e : pivexp) s += uint64_t(fs.r) * (level - e);
        return s;
    }
};

Tracked tracked_eliminate(const ChainMatrix& m) {
    Tracked tr{m.spec(), m.level(), m.cols(), m.rows(), {}, {}, {}, {}};
    std::vector<std::vector<GRElem>> work;
    for (size_t i = m.rows(); i-- > 0;) {
        std::vector<GRElem> v = m.row(i);
        for (size_t k = 0; k < m.rows(); ++k)
            v.push_back(k == i ? GRElem::one(m.spec(), m.level()) : GRElem(m.spec(), m.level()));
        work.push_back(std::move(v));
    }
    tr.process(std::move(work));
    return tr;
}

}  // namespace

ChainMatrix kernel_rows(const ChainMatrix& m) {
    Tracked tr = tracked_eliminate(m);
    SpanBuilder ker(m.spec(), m.level(), m.rows());
    for (const auto& k : tr.kernels) ker.insert(k);
    // completeness certificate: |span| * |ker| = |R|^rows
    uint64_t total = uint64_t(m.spec().r) * m.level() * m.rows();
    if (tr.span_size_log() + ker.size_log() != total)
        throw std::logic_error("kernel_rows: completeness certificate failed");
    return ker.finish().mat;
}

struct LeftSolver::Impl {
    ChainMatrix m;
    Tracked tr;
    std::vector<size_t> order;
    Impl(const ChainMatrix& mat) : m(mat), tr(tracked_eliminate(mat)) {
        order.resize(tr.pivots.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return tr.pivcol[a] < tr.pivcol[b]; });
    }
};

LeftSolver::LeftSolver(const ChainMatrix& m) : impl_(std::make_unique<Impl>(m)) {}
LeftSolver::~LeftSolver() = default;
LeftSolver::LeftSolver(LeftSolver&&) noexcept = default;

std::optional<std::vector<GRElem>> LeftSolver::solve(const std::vector<GRElem>& b) const {
    const ChainMatrix& m = impl_->m;
    const Tracked& tr = impl_->tr;
    if (b.size() != m.cols()) throw std::invalid_argument("LeftSolver: width mismatch");
    std::vector<GRElem> v = b;
    for (size_t k = 0; k < m.rows(); ++k) v.push_back(GRElem(m.spec(), m.level()));
    for (size_t i : impl_->order) {
        const GRElem& e = v[tr.pivcol[i]];
        if (e.is_zero()) continue;
        if (e.valuation() < tr.pivexp[i]) return std::nullopt;
        GRElem t = e.div_pow_p_same_level(tr.pivexp[i]);
        row_sub_scaled(v, t, tr.pivots[i]);
    }
    for (size_t j = 0; j < m.cols(); ++j)
        if (!v[j].is_zero()) return std::nullopt;
    std::vector<GRElem> x(v.begin() + m.cols(), v.end());
    for (auto& e : x) e = -e;
    // verify
    for (size_t j = 0; j < m.cols(); ++j) {
        GRElem acc(m.spec(), m.level());
        for (size_t i = 0; i < m.rows(); ++i) acc += x[i] * m.at(i, j);
        if (!(acc == b[j])) return std::nullopt;
    }
    return x;
}

std::optional<std::vector<GRElem>> solve_left(const ChainMatrix& m, const std::vector<GRElem>& b) {
    return LeftSolver(m).solve(b);
}

}  // namespace wg
