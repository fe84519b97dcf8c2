#pragma once

#include <map>

#include "wittgamma/gamma.hpp"

namespace wg {

// Exact multivariate polynomial with GR coefficients (usually field level).
class MPoly {
  public:
    MPoly(const FieldSpec& fs, uint32_t level, size_t nvars)
        : fs_(fs), level_(level), nvars_(nvars) {}

    static MPoly var(const FieldSpec& fs, uint32_t level, size_t nvars, size_t i);
    static MPoly constant(const FieldSpec& fs, uint32_t level, size_t nvars, const GRElem& c);

    const FieldSpec& spec() const { return fs_; }
    uint32_t level() const { return level_; }
    size_t nvars() const { return nvars_; }
    const std::map<std::vector<uint32_t>, GRElem>& terms() const { return terms_; }

    void add_term(const std::vector<uint32_t>& e, const GRElem& c);
    bool is_zero() const { return terms_.empty(); }
    uint64_t total_degree() const;
    bool is_homogeneous(uint64_t deg) const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly scale(const GRElem& c) const;
    MPoly pow(uint64_t e) const;
    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

    // substitute each variable by a polynomial (all with the same nvars)
    MPoly compose(const std::vector<MPoly>& subs) const;

    GRElem evaluate(const std::vector<GRElem>& point) const;
    // evaluate at a point over an extension; coefficients mapped along emb
    GRElem evaluate_embedded(const FieldEmbedding& emb, const std::vector<GRElem>& point) const;

    // exact division (throws if the division leaves a remainder)
    MPoly divide_exact(const MPoly& q) const;

  private:
    FieldSpec fs_;
    uint32_t level_;
    size_t nvars_;
    std::map<std::vector<uint32_t>, GRElem> terms_;
};

// Homogeneous polynomial law from k^d to a torsion module, stored by exact
// coefficients on the composition basis.  Law equality is coefficient
// equality.
struct PolyLaw {
    FieldSpec k;
    uint32_t src_dim = 1;
    TorsionModule target;
    uint64_t degree = 1;
    std::map<Composition, ModuleElem> coeffs;  // nonzero entries only

    static PolyLaw from_components(const FieldSpec& k, uint32_t src_dim,
                                   const TorsionModule& target, uint64_t degree,
                                   const std::vector<MPoly>& comps);
    std::vector<MPoly> components() const;

    static PolyLaw identity(const TorsionModule& V);
    // coordinates raised to the q^c power
    static PolyLaw frobenius_power(const TorsionModule& V, uint32_t c);

    PolyLaw operator+(const PolyLaw& o) const;
    bool operator==(const PolyLaw& o) const;

    // this o inner (inner's target generators feed this law's variables)
    PolyLaw compose(const PolyLaw& inner) const;
    // postcompose with a linear map on the target
    PolyLaw map_target(const ModuleMap& f) const;

    ModuleElem evaluate(const std::vector<GRElem>& point) const;
    ModuleElem evaluate_embedded(const FieldEmbedding& emb,
                                 const std::vector<GRElem>& point) const;

    // the induced linear map Gamma^degree(k^{src_dim}) -> target
    ModuleMap to_linear_map() const;
};

}  // namespace wg
