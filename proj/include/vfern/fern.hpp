#pragma once

#include "vfern/curve.hpp"
#include "vfern/gf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vfern {

// The space V of a fern as a subspace of an ambient F_q^n, with a flag basis.
// Marks are ambient vector codes; the mark of infinity is amb.infinity().
struct FernSpace {
    VectorSpace amb;
    std::vector<Vec> basis;
    Subspace V;
    std::vector<std::vector<Elem>> coords;  // flag-basis coordinates of members of V

    Vec infinity() const { return amb.infinity(); }
    unsigned dim() const { return V.dim(); }
};

FernSpace make_space(const VectorSpace& amb, const std::vector<Vec>& basis);
FernSpace standard_space(const ExtField& F, unsigned n);

struct Fern {
    MarkedTree tree;
    FernSpace space;
    std::vector<int> chain;  // components from the 0-component to the infinity-component
    Flag flag;

    bool smooth() const { return chain.size() == 1; }
};

struct FernCheck {
    std::optional<Fern> fern;
    std::vector<std::string> violations;
};

FernCheck validate_fern(const MarkedTree& t, const FernSpace& S);
// validate_fern, throwing std::runtime_error with the violations on failure
Fern require_fern(const MarkedTree& t, const FernSpace& S);

const Flag& associated_flag(const Fern& f);

Fern contract_fern(const Fern& f, const Subspace& W);

// Attach a copy of `sub` at each mark of `quot`. The space of `quot` and the
// span of `complement` must both be complements of the space of `sub`.
Fern graft(const Fern& sub, const Fern& quot, const std::vector<Vec>& complement);

// Values on V (LineData) or V minus 0 (RecipData), scaled so that the last
// flag-basis vector with nonzero value has value 1.
struct LineData {
    std::map<Vec, Elem> values;
};
struct RecipData {
    std::map<Vec, Elem> values;
};

LineData line_data(const Fern& f);
RecipData reciprocal_data(const Fern& f);

// Single projective line with the mark v at lambda(v) and infinity at (1:0).
Fern smooth_fern(const ExtFieldPtr& F, const FernSpace& S, const std::map<Vec, Elem>& lambda);
// lambda on a basis extended linearly
std::map<Vec, Elem> extend_linear(const ExtField& F, const FernSpace& S, const std::vector<Elem>& on_basis);

// psi_t = t * sum_k coeffs[k] x^k
struct AdditivePoly {
    std::vector<Elem> coeffs;
};

struct PsiCheck {
    bool q_powers = false;
    bool linear_is_t = false;
    bool degree = false;
    bool kills_lattice = false;
    bool kernel_exact = false;
    bool ok() const { return q_powers && linear_is_t && degree && kills_lattice && kernel_exact; }
};

// prod over v in V of (x - lambda_v), coefficients low to high
std::vector<Elem> lattice_poly(const Field& K, const std::vector<Elem>& lattice);
bool only_q_powers(const std::vector<Elem>& poly, unsigned q);
AdditivePoly drinfeld_psi(const ExtField& F, const FernSpace& S, const std::map<Vec, Elem>& lambda);
PsiCheck check_psi(const ExtField& F, const FernSpace& S, const std::map<Vec, Elem>& lambda,
                   const AdditivePoly& psi);
Elem poly_eval(const Field& K, const std::vector<Elem>& poly, Elem x);

}  // namespace vfern
