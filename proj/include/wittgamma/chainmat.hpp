#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wittgamma/galois.hpp"

namespace wg {

// Dense matrix over the chain ring GR(p^N, r).  Row-oriented; rows span
// submodules of the free module GR^cols.
class ChainMatrix {
  public:
    ChainMatrix(const FieldSpec& fs, uint32_t level, size_t rows, size_t cols);

    const FieldSpec& spec() const { return fs_; }
    uint32_t level() const { return level_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    GRElem& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const GRElem& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    static ChainMatrix identity(const FieldSpec& fs, uint32_t level, size_t n);
    static ChainMatrix from_rows(const FieldSpec& fs, uint32_t level,
                                 const std::vector<std::vector<GRElem>>& rows, size_t cols);

    ChainMatrix operator*(const ChainMatrix& o) const;
    ChainMatrix operator+(const ChainMatrix& o) const;
    ChainMatrix operator-(const ChainMatrix& o) const;
    ChainMatrix mul_scalar(const GRElem& s) const;
    ChainMatrix transpose() const;
    bool operator==(const ChainMatrix& o) const;
    bool is_zero() const;

    std::vector<GRElem> row(size_t i) const;
    void set_row(size_t i, const std::vector<GRElem>& r);
    void append_row(const std::vector<GRElem>& r);

  private:
    FieldSpec fs_;
    uint32_t level_;
    size_t rows_, cols_;
    std::vector<GRElem> a_;
};

// Canonical Howell form of the row span.  Pivot entries are exact powers p^j,
// entries above a pivot are reduced mod p^j, zero rows dropped.
struct HowellForm {
    ChainMatrix mat;
    std::vector<size_t> pivot_col;    // per row
    std::vector<uint32_t> pivot_exp;  // per row: pivot = p^exp

    // log_p of the span cardinality: sum over rows of r*(N - exp).
    uint64_t span_size_log() const;
    bool contains(const std::vector<GRElem>& v) const;
    // coefficients t with sum t_i * row_i == v, if v lies in the span
    std::optional<std::vector<GRElem>> reduce_coeffs(const std::vector<GRElem>& v) const;
};

HowellForm howell_form(const ChainMatrix& m);

// Incremental span builder: insert rows one at a time, keeping a Howell basis.
class SpanBuilder {
  public:
    SpanBuilder(const FieldSpec& fs, uint32_t level, size_t cols);
    // returns true if the row enlarged the span
    bool insert(const std::vector<GRElem>& v);
    bool contains(const std::vector<GRElem>& v) const;
    uint64_t size_log() const;
    HowellForm finish() const;  // canonical form of everything inserted
    size_t cols() const { return cols_; }

  private:
    FieldSpec fs_;
    uint32_t level_;
    size_t cols_;
    std::vector<std::vector<GRElem>> rows_;   // echelon rows, sorted by pivot col
    std::vector<size_t> pivcol_;
    std::vector<uint32_t> pivexp_;
    std::vector<std::vector<GRElem>> pending_;  // annihilator rows awaiting insertion
    void reduce(std::vector<GRElem>& v) const;
    void flush();
};

// Invariant-factor exponents j_1 <= j_2 <= ... of the row span viewed as an
// abstract module: span = (+) W_{N - j_i}.  Zero factors (j = N) dropped.
std::vector<uint32_t> smith_exponents(const ChainMatrix& m);

// Generators of { x : x * M = 0 } as rows; certified complete via
// |span(M)| * |kernel| = |R|^rows.
ChainMatrix kernel_rows(const ChainMatrix& m);

// One solution x with x * M = b, if any.
std::optional<std::vector<GRElem>> solve_left(const ChainMatrix& m, const std::vector<GRElem>& b);

// Repeated left-solves against a fixed matrix (eliminates once).
class LeftSolver {
  public:
    explicit LeftSolver(const ChainMatrix& m);
    ~LeftSolver();
    LeftSolver(LeftSolver&&) noexcept;
    std::optional<std::vector<GRElem>> solve(const std::vector<GRElem>& b) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace wg
