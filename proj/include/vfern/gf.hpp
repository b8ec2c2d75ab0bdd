#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace vfern {

// Field elements are packed base-p integers: coefficient i of the residue
// polynomial is digit i.
using Elem = std::uint32_t;

// Polynomials over F_p as little-endian coefficient lists.
using PrimePoly = std::vector<unsigned>;

bool is_prime(unsigned p);
// q = p^e; throws std::invalid_argument if q is not a prime power
std::pair<unsigned, unsigned> split_prime_power(unsigned q);
bool is_irreducible(const PrimePoly& f, unsigned p);

// F_{p^d} = F_p[x]/(modulus), with log/exp tables over a primitive element.
class Field {
public:
    Field(unsigned p, PrimePoly modulus);

    unsigned p() const { return p_; }
    unsigned degree() const { return d_; }
    Elem order() const { return order_; }
    const PrimePoly& modulus() const { return mod_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long k) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const;

    std::vector<unsigned> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<unsigned>& c) const;
    Elem generator() const { return gen_; }

private:
    Elem slow_mul(Elem a, Elem b) const;
    Elem slow_add(Elem a, Elem b) const;

    unsigned p_;
    unsigned d_;
    Elem order_;
    PrimePoly mod_;
    Elem gen_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> add_;
    std::vector<Elem> neg_;
};

using FieldPtr = std::shared_ptr<const Field>;

// F_{q^m} with q = p^e, together with the subfield F_q and its embedding.
struct ExtField {
    unsigned p = 0;
    unsigned e = 0;
    unsigned m = 0;
    FieldPtr big;
    FieldPtr small;
    std::vector<Elem> embed;

    unsigned q() const { return small->order(); }
    Elem lift(Elem a) const { return embed[a]; }
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

// Lexicographically smallest monic irreducible of degree d over F_p, where
// monics are ordered by the integer sum c_i p^i of their lower coefficients.
PrimePoly canonical_modulus(unsigned p, unsigned d);

ExtFieldPtr field_make(unsigned p, unsigned e, unsigned m);

// ---------------------------------------------------------------------------
// Vectors of F_q^n, packed base q with coordinate i at digit i.

using Vec = std::uint32_t;

class VectorSpace {
public:
    VectorSpace() = default;
    VectorSpace(FieldPtr fq, unsigned n);

    unsigned n() const { return n_; }
    unsigned q() const { return q_; }
    Vec size() const { return size_; }
    Vec infinity() const { return size_; }
    const Field& scalars() const { return *fq_; }
    const FieldPtr& scalars_ptr() const { return fq_; }

    Elem coord(Vec v, unsigned i) const;
    std::vector<Elem> coords(Vec v) const;
    Vec make(const std::vector<Elem>& c) const;
    Vec unit(unsigned i) const;

    Vec add(Vec a, Vec b) const;
    Vec neg(Vec a) const;
    Vec sub(Vec a, Vec b) const { return add(a, neg(b)); }
    Vec scale(Elem xi, Vec a) const;

    // v^{<=k} and v^{>k} in standard coordinates (k counts leading coordinates).
    Vec truncate_le(Vec v, unsigned k) const;
    Vec truncate_gt(Vec v, unsigned k) const { return sub(v, truncate_le(v, k)); }

    std::string str(Vec v) const;

private:
    FieldPtr fq_;
    unsigned n_ = 0;
    unsigned q_ = 0;
    Vec size_ = 0;
    std::vector<Vec> pw_;
};

class Subspace {
public:
    Subspace() = default;

    static Subspace span(const VectorSpace& V, const std::vector<Vec>& gens);
    static Subspace zero(const VectorSpace& V) { return span(V, {}); }
    static Subspace whole(const VectorSpace& V);

    unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<Vec>& elements() const { return elems_; }
    bool contains(Vec v) const { return v < member_.size() && member_[v]; }
    bool subset_of(const Subspace& o) const;
    std::string key(const VectorSpace& V) const;

    // coordinates of a member with respect to basis()
    std::vector<Elem> coords_of(Vec v) const { return coords_[v]; }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const;

private:
    std::vector<Vec> basis_;
    std::vector<Vec> elems_;
    std::vector<bool> member_;
    std::vector<std::vector<Elem>> coords_;
};

Subspace intersect(const VectorSpace& V, const Subspace& a, const Subspace& b);
Subspace sum(const VectorSpace& V, const Subspace& a, const Subspace& b);

// Reduced row echelon basis of span(gens): pivot is the first nonzero coordinate.
std::vector<Vec> echelon(const VectorSpace& V, const std::vector<Vec>& gens);

std::vector<Subspace> subspaces(const VectorSpace& V, unsigned d);
std::vector<Subspace> subspaces_of(const VectorSpace& V, const Subspace& W, unsigned d);
std::vector<Subspace> all_subspaces_of(const VectorSpace& V, const Subspace& W);

// Gaussian binomial [n choose d]_q.
std::uint64_t gaussian_binomial(unsigned n, unsigned d, std::uint64_t q);

using Flag = std::vector<Subspace>;

std::vector<Flag> flags(const VectorSpace& V);
// Depth-first walk over the flags of W without materializing them; steps
// index into all_subspaces_of(V, W), whose first entry is the zero subspace.
void visit_flags(const VectorSpace& V, const Subspace& W,
                 const std::function<void(const std::vector<Subspace>&, const std::vector<std::size_t>&)>& visit);
// Number of flags of an n-dimensional space over F_q.
std::uint64_t flag_count(unsigned n, std::uint64_t q);
std::vector<Flag> flags_of(const VectorSpace& V, const Subspace& W);
std::vector<Flag> complete_flags_of(const VectorSpace& V, const Subspace& W);
bool is_complete(const Flag& f);
Flag flag_intersect(const VectorSpace& V, const Flag& f, const Subspace& W);
std::string flag_key(const VectorSpace& V, const Flag& f);

// Basis b_1..b_k with span(b_1..b_i) equal to the i-th step of a complete flag.
std::vector<Vec> adapted_basis(const VectorSpace& V, const Flag& complete);
Flag flag_from_basis(const VectorSpace& V, const std::vector<Vec>& basis);

// ---------------------------------------------------------------------------
// G = V x| F_q^*

struct GroupElement {
    Vec v = 0;
    Elem xi = 1;
    bool operator==(const GroupElement& o) const { return v == o.v && xi == o.xi; }
};

GroupElement group_make(const VectorSpace& V, Vec v, Elem xi);
GroupElement group_mul(const VectorSpace& V, const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const VectorSpace& V, const GroupElement& a);
// action on the marks of V-hat; infinity is V.infinity()
Vec group_act(const VectorSpace& V, const GroupElement& a, Vec w);
std::vector<GroupElement> group_elements(const VectorSpace& V, const Subspace& W);

}  // namespace vfern
