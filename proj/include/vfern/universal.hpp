#pragma once

#include "vfern/fern.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vfern {

// Chart data: the flag basis b_1..b_n of a fern space fixes a complete flag
// V_i = span(b_1..b_i); t holds t_1..t_{n-1}.

// Largest i with a nonzero coefficient on b_i (0 for the zero vector).
unsigned level(const FernSpace& S, Vec v);
// sum_{i<=k} c_i b_i
Vec truncate(const FernSpace& S, Vec v, unsigned k);

// Q^k_v = sum_{i=1}^k c_i prod_{j=i}^{k-1} T_j as (c_i, i) pairs.
struct QPoly {
    unsigned k = 0;
    std::vector<std::pair<Elem, unsigned>> terms;
};

QPoly q_poly(const FernSpace& S, Vec v, unsigned k);
Elem q_eval(const ExtField& F, const QPoly& Q, const std::vector<Elem>& t);
Elem q_eval(const ExtField& F, const FernSpace& S, Vec v, unsigned k, const std::vector<Elem>& t);

// Multivariate polynomials over F_q in T_1..T_{n-1}, keyed by exponent vectors.
using MPoly = std::map<std::vector<unsigned>, Elem>;
MPoly q_expand(const Field& Fq, const QPoly& Q, unsigned nvars);
MPoly mpoly_mul(const Field& Fq, const MPoly& a, const MPoly& b);
MPoly mpoly_monomial(unsigned nvars, unsigned from, unsigned to);  // prod_{j=from}^{to-1} T_j

struct Stratum {
    std::vector<unsigned> cuts;  // i_0 = 0 < i_1 < ... < i_m = n
    Flag flag;

    unsigned m() const { return static_cast<unsigned>(cuts.size() - 1); }
};

// Membership of t in the chart U_F for a flag F adapted to the basis of S
// (the complete flag of the basis when F is null), with the detected stratum.
std::optional<Stratum> chart_contains(const ExtField& F, const FernSpace& S, const std::vector<Elem>& t,
                                      const Flag* flag = nullptr);

// All chart points of the complete-flag chart of S over the big field.
std::vector<std::vector<Elem>> chart_points(const ExtField& F, const FernSpace& S);

struct SigmaIndex {
    Vec v = 0;
    unsigned k = 0;
    bool operator==(const SigmaIndex& o) const { return v == o.v && k == o.k; }
    bool operator<(const SigmaIndex& o) const { return k != o.k ? k < o.k : v < o.v; }
};

// A point of the product of projective lines indexed by the reduced index set.
using Assignment = std::vector<ProjPoint>;

struct Fiber {
    ExtFieldPtr field;
    FernSpace space;
    std::vector<Elem> t;
    Stratum stratum;
    std::vector<SigmaIndex> sigma;  // component i of the fern is E_{sigma[i]}
    Fern fern;

    int index(const SigmaIndex& s) const;
};

Fiber fiber(const ExtFieldPtr& F, const FernSpace& S, const std::vector<Elem>& t);

// Defining equations of the component E_{w,l}: nullopt marks the free index.
std::vector<std::optional<ProjPoint>> component_constraints(const Fiber& X, int comp);
// Intersection point of two components, if any.
std::optional<Assignment> components_meet(const Fiber& X, int a, int b);

// Coordinate (v,w) of the section lambda_u over the full index set V x (V - 0).
ProjPoint section_full(const Fiber& X, Vec u, Vec v, Vec w);
// Reduced coordinates of lambda_u, optionally after acting by g on indices.
Assignment section_assignment(const Fiber& X, Vec u);
Assignment translated_section(const Fiber& X, Vec u, const GroupElement& g);

std::pair<Vec, Vec> g_translate_index(const VectorSpace& V, std::pair<Vec, Vec> idx, const GroupElement& g);

bool check_equations(const Fiber& X, const Assignment& a);

// ---------------------------------------------------------------------------

struct Functional {
    Subspace W;
    std::vector<Elem> values;  // on the echelon basis of W, last nonzero scaled to 1
};

struct ClassPoint {
    std::vector<Functional> entries;  // every nonzero subspace of V, in subspace order

    const Functional* find(const Subspace& W) const;
};

void canonicalize_functional(const Field& K, std::vector<Elem>& values);
Elem functional_eval(const ExtField& F, const Functional& f, Vec x);

ClassPoint classify(const Fern& f);
std::vector<Elem> chart_coords(const ExtField& F, const ClassPoint& cp, const FernSpace& S);

bool proportional(const Field& K, const std::vector<Elem>& a, const std::vector<Elem>& b);
bool bv_member(const ExtField& F, const ClassPoint& cp);
bool uf_member(const ExtField& F, const ClassPoint& cp, const Flag& flag);

// Fern space on V with a basis adapted to a complete refinement of the fern's flag.
FernSpace adapted_space(const Fern& f);
// f is isomorphic to the fiber over its own chart coordinates
bool round_trip(const Fern& f);

}  // namespace vfern
