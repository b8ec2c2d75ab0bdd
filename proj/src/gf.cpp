#include "vfern/gf.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace vfern {

namespace {

constexpr Elem kMaxOrder = 1u << 20;
constexpr Elem kAddTableOrder = 1024;

void trim(PrimePoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

PrimePoly poly_mod(PrimePoly a, const PrimePoly& b, unsigned p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    unsigned lead_inv = 1;
    while ((lead_inv * b.back()) % p != 1)
        ++lead_inv;
    while (a.size() >= b.size()) {
        const unsigned c = (a.back() * lead_inv) % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = (a[shift + i] + (p - (c * b[i]) % p)) % p;
        trim(a);
    }
    return a;
}

}  // namespace

bool is_prime(unsigned p)
{
    if (p < 2)
        return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::pair<unsigned, unsigned> split_prime_power(unsigned q)
{
    for (unsigned p = 2; p <= q; ++p) {
        if (q % p != 0)
            continue;
        unsigned e = 0;
        while (q % p == 0) {
            q /= p;
            ++e;
        }
        if (q != 1)
            break;
        return {p, e};
    }
    throw std::invalid_argument("q is not a prime power");
}

bool is_irreducible(const PrimePoly& f0, unsigned p)
{
    PrimePoly f = f0;
    trim(f);
    if (f.size() < 2)
        return false;
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg == 1)
        return true;
    for (unsigned k = 1; 2 * k <= deg; ++k) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < k; ++i)
            count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            PrimePoly g(k + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < k; ++i) {
                g[i] = static_cast<unsigned>(c % p);
                c /= p;
            }
            g[k] = 1;
            if (poly_mod(f, g, p).empty())
                return false;
        }
    }
    return true;
}

PrimePoly canonical_modulus(unsigned p, unsigned d)
{
    if (!is_prime(p))
        throw std::invalid_argument("p is not prime: " + std::to_string(p));
    if (d == 0)
        throw std::invalid_argument("degree must be positive");
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i)
        count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        PrimePoly f(d + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < d; ++i) {
            f[i] = static_cast<unsigned>(c % p);
            c /= p;
        }
        f[d] = 1;
        if (is_irreducible(f, p))
            return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

Field::Field(unsigned p, PrimePoly modulus) : p_(p), mod_(std::move(modulus))
{
    if (!is_prime(p_))
        throw std::invalid_argument("p is not prime: " + std::to_string(p_));
    trim(mod_);
    if (mod_.size() < 2 || mod_.back() != 1)
        throw std::invalid_argument("modulus must be monic of positive degree");
    d_ = static_cast<unsigned>(mod_.size() - 1);
    std::uint64_t order = 1;
    for (unsigned i = 0; i < d_; ++i) {
        order *= p_;
        if (order > kMaxOrder)
            throw std::invalid_argument("field too large");
    }
    order_ = static_cast<Elem>(order);
    if (!is_irreducible(mod_, p_))
        throw std::invalid_argument("modulus is reducible");

    neg_.resize(order_);
    for (Elem a = 0; a < order_; ++a) {
        auto c = coeffs(a);
        for (auto& x : c)
            x = (p_ - x) % p_;
        neg_[a] = from_coeffs(c);
    }
    if (order_ <= kAddTableOrder) {
        add_.resize(static_cast<std::size_t>(order_) * order_);
        for (Elem a = 0; a < order_; ++a)
            for (Elem b = 0; b < order_; ++b)
                add_[static_cast<std::size_t>(a) * order_ + b] = slow_add(a, b);
    }

    const Elem group = order_ - 1;
    for (Elem g = 1; g < order_; ++g) {
        Elem x = 1;
        Elem k = 0;
        do {
            x = slow_mul(x, g);
            ++k;
        } while (x != 1);
        if (k == group) {
            gen_ = g;
            break;
        }
    }
    if (gen_ == 0)
        throw std::logic_error("no primitive element");
    exp_.resize(2 * static_cast<std::size_t>(group) + 1);
    log_.assign(order_, 0);
    Elem x = 1;
    for (std::size_t i = 0; i < exp_.size(); ++i) {
        exp_[i] = x;
        if (i < group)
            log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, gen_);
    }
}

Elem Field::from_int(long long k) const
{
    long long r = k % static_cast<long long>(p_);
    if (r < 0)
        r += p_;
    return static_cast<Elem>(r);
}

std::vector<unsigned> Field::coeffs(Elem a) const
{
    std::vector<unsigned> c(d_, 0);
    for (unsigned i = 0; i < d_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Elem Field::from_coeffs(const std::vector<unsigned>& c) const
{
    Elem a = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        a = a * p_ + (c[i] % p_);
    return a;
}

Elem Field::slow_add(Elem a, Elem b) const
{
    if (p_ == 2)
        return a ^ b;
    Elem r = 0;
    Elem pw = 1;
    for (unsigned i = 0; i < d_; ++i) {
        r += ((a % p_ + b % p_) % p_) * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

Elem Field::slow_mul(Elem a, Elem b) const
{
    auto x = coeffs(a);
    auto y = coeffs(b);
    PrimePoly prod(2 * d_, 0);
    for (unsigned i = 0; i < d_; ++i)
        for (unsigned j = 0; j < d_; ++j)
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    auto r = poly_mod(prod, mod_, p_);
    r.resize(d_, 0);
    return from_coeffs(r);
}

Elem Field::add(Elem a, Elem b) const
{
    if (!add_.empty())
        return add_[static_cast<std::size_t>(a) * order_ + b];
    return slow_add(a, b);
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::mul(Elem a, Elem b) const
{
    if (a == 0 || b == 0)
        return 0;
    return exp_[log_[a] + log_[b]];
}

Elem Field::inv(Elem a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero");
    const Elem group = order_ - 1;
    return exp_[(group - log_[a]) % group];
}

Elem Field::pow(Elem a, std::uint64_t k) const
{
    if (k == 0)
        return 1;
    if (a == 0)
        return 0;
    const std::uint64_t group = order_ - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % group)) % group];
}

ExtFieldPtr field_make(unsigned p, unsigned e, unsigned m)
{
    if (!is_prime(p))
        throw std::invalid_argument("p is not prime: " + std::to_string(p));
    if (e == 0 || m == 0)
        throw std::invalid_argument("e and m must be positive");
    auto F = std::make_shared<ExtField>();
    F->p = p;
    F->e = e;
    F->m = m;
    F->small = std::make_shared<Field>(p, canonical_modulus(p, e));
    F->big = std::make_shared<Field>(p, canonical_modulus(p, e * m));
    const Field& K = *F->big;
    const Field& k = *F->small;
    F->embed.resize(k.order());
    if (e == 1) {
        for (Elem a = 0; a < k.order(); ++a)
            F->embed[a] = a;
        return F;
    }
    const auto& f = k.modulus();
    Elem root = 0;
    bool found = false;
    for (Elem r = 0; r < K.order() && !found; ++r) {
        Elem val = 0;
        for (std::size_t i = f.size(); i-- > 0;)
            val = K.add(K.mul(val, r), K.from_int(f[i]));
        if (val == 0) {
            root = r;
            found = true;
        }
    }
    if (!found)
        throw std::logic_error("subfield modulus has no root");
    for (Elem a = 0; a < k.order(); ++a) {
        auto c = k.coeffs(a);
        Elem val = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            val = K.add(K.mul(val, root), K.from_int(c[i]));
        F->embed[a] = val;
    }
    return F;
}

// ---------------------------------------------------------------------------

VectorSpace::VectorSpace(FieldPtr fq, unsigned n) : fq_(std::move(fq)), n_(n)
{
    q_ = fq_->order();
    std::uint64_t s = 1;
    pw_.push_back(1);
    for (unsigned i = 0; i < n_; ++i) {
        s *= q_;
        if (s > kMaxOrder)
            throw std::invalid_argument("vector space too large");
        pw_.push_back(static_cast<Vec>(s));
    }
    size_ = static_cast<Vec>(s);
}

Elem VectorSpace::coord(Vec v, unsigned i) const { return (v / pw_[i]) % q_; }

std::vector<Elem> VectorSpace::coords(Vec v) const
{
    std::vector<Elem> c(n_);
    for (unsigned i = 0; i < n_; ++i)
        c[i] = coord(v, i);
    return c;
}

Vec VectorSpace::make(const std::vector<Elem>& c) const
{
    if (c.size() != n_)
        throw std::invalid_argument("vector has wrong length");
    Vec v = 0;
    for (unsigned i = 0; i < n_; ++i) {
        if (c[i] >= q_)
            throw std::invalid_argument("coordinate out of range");
        v += c[i] * pw_[i];
    }
    return v;
}

Vec VectorSpace::unit(unsigned i) const { return pw_[i]; }

Vec VectorSpace::add(Vec a, Vec b) const
{
    if (q_ == 2)
        return a ^ b;
    Vec r = 0;
    for (unsigned i = 0; i < n_; ++i)
        r += fq_->add(coord(a, i), coord(b, i)) * pw_[i];
    return r;
}

Vec VectorSpace::neg(Vec a) const
{
    if (q_ == 2)
        return a;
    Vec r = 0;
    for (unsigned i = 0; i < n_; ++i)
        r += fq_->neg(coord(a, i)) * pw_[i];
    return r;
}

Vec VectorSpace::scale(Elem xi, Vec a) const
{
    Vec r = 0;
    for (unsigned i = 0; i < n_; ++i)
        r += fq_->mul(xi, coord(a, i)) * pw_[i];
    return r;
}

Vec VectorSpace::truncate_le(Vec v, unsigned k) const { return v % pw_[std::min(k, n_)]; }

std::string VectorSpace::str(Vec v) const
{
    if (v == infinity())
        return "inf";
    std::string s = "(";
    for (unsigned i = 0; i < n_; ++i) {
        if (i)
            s += ",";
        s += std::to_string(coord(v, i));
    }
    return s + ")";
}

// ---------------------------------------------------------------------------

std::vector<Vec> echelon(const VectorSpace& V, const std::vector<Vec>& gens)
{
    const Field& F = V.scalars();
    const unsigned n = V.n();
    std::vector<std::vector<Elem>> rows;
    for (Vec g : gens)
        rows.push_back(V.coords(g));
    std::size_t rank = 0;
    for (unsigned col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[rank], rows[piv]);
        const Elem s = F.inv(rows[rank][col]);
        for (auto& x : rows[rank])
            x = F.mul(s, x);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0)
                continue;
            const Elem c = rows[r][col];
            for (unsigned j = 0; j < n; ++j)
                rows[r][j] = F.sub(rows[r][j], F.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < rank; ++r)
        basis.push_back(V.make(rows[r]));
    return basis;
}

Subspace Subspace::span(const VectorSpace& V, const std::vector<Vec>& gens)
{
    Subspace S;
    S.basis_ = echelon(V, gens);
    S.member_.assign(V.size(), false);
    S.coords_.assign(V.size(), {});
    const unsigned d = S.dim();
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i)
        count *= V.q();
    std::vector<Elem> c(d, 0);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t x = code;
        Vec v = 0;
        for (unsigned i = 0; i < d; ++i) {
            c[i] = static_cast<Elem>(x % V.q());
            x /= V.q();
            v = V.add(v, V.scale(c[i], S.basis_[i]));
        }
        S.member_[v] = true;
        S.coords_[v] = c;
    }
    for (Vec v = 0; v < V.size(); ++v)
        if (S.member_[v])
            S.elems_.push_back(v);
    return S;
}

Subspace Subspace::whole(const VectorSpace& V)
{
    std::vector<Vec> gens;
    for (unsigned i = 0; i < V.n(); ++i)
        gens.push_back(V.unit(i));
    return span(V, gens);
}

bool Subspace::subset_of(const Subspace& o) const
{
    for (Vec b : basis_)
        if (!o.contains(b))
            return false;
    return true;
}

bool Subspace::operator<(const Subspace& o) const
{
    if (dim() != o.dim())
        return dim() < o.dim();
    return basis_ < o.basis_;
}

std::string Subspace::key(const VectorSpace& V) const
{
    if (basis_.empty())
        return "0";
    std::string s;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        if (r)
            s += ".";
        for (unsigned i = 0; i < V.n(); ++i) {
            if (V.q() > 10 && i)
                s += ":";
            s += std::to_string(V.coord(basis_[r], i));
        }
    }
    return s;
}

Subspace intersect(const VectorSpace& V, const Subspace& a, const Subspace& b)
{
    std::vector<Vec> common;
    for (Vec v : a.elements())
        if (b.contains(v))
            common.push_back(v);
    return Subspace::span(V, common);
}

Subspace sum(const VectorSpace& V, const Subspace& a, const Subspace& b)
{
    auto gens = a.basis();
    gens.insert(gens.end(), b.basis().begin(), b.basis().end());
    return Subspace::span(V, gens);
}

std::vector<Subspace> subspaces_of(const VectorSpace& V, const Subspace& W, unsigned d)
{
    const unsigned n = W.dim();
    std::vector<Subspace> out;
    if (d > n)
        return out;
    const unsigned q = V.q();
    const Field& F = V.scalars();
    // reduced echelon matrices in W-coordinates, mapped into the ambient space
    std::vector<unsigned> piv(d);
    std::function<void(unsigned, unsigned)> choose = [&](unsigned idx, unsigned start) {
        if (idx == d) {
            std::vector<std::pair<unsigned, unsigned>> free;
            for (unsigned r = 0; r < d; ++r)
                for (unsigned c = piv[r] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end())
                        free.push_back({r, c});
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < free.size(); ++i)
                count *= q;
            for (std::uint64_t code = 0; code < count; ++code) {
                std::vector<std::vector<Elem>> rows(d, std::vector<Elem>(n, 0));
                for (unsigned r = 0; r < d; ++r)
                    rows[r][piv[r]] = 1;
                std::uint64_t x = code;
                for (auto [r, c] : free) {
                    rows[r][c] = static_cast<Elem>(x % q);
                    x /= q;
                }
                std::vector<Vec> gens;
                for (auto& row : rows) {
                    Vec v = 0;
                    for (unsigned c = 0; c < n; ++c)
                        v = V.add(v, V.scale(row[c], W.basis()[c]));
                    gens.push_back(v);
                }
                out.push_back(Subspace::span(V, gens));
            }
            return;
        }
        for (unsigned c = start; c < n; ++c) {
            piv[idx] = c;
            choose(idx + 1, c + 1);
        }
    };
    (void)F;
    choose(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subspace> subspaces(const VectorSpace& V, unsigned d)
{
    return subspaces_of(V, Subspace::whole(V), d);
}

std::vector<Subspace> all_subspaces_of(const VectorSpace& V, const Subspace& W)
{
    std::vector<Subspace> out;
    for (unsigned d = 0; d <= W.dim(); ++d) {
        auto s = subspaces_of(V, W, d);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

std::uint64_t gaussian_binomial(unsigned n, unsigned d, std::uint64_t q)
{
    if (d > n)
        return 0;
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (unsigned i = 0; i < d; ++i) {
        std::uint64_t a = 1;
        std::uint64_t b = 1;
        for (unsigned j = 0; j < n - i; ++j)
            a *= q;
        for (unsigned j = 0; j < i + 1; ++j)
            b *= q;
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

std::uint64_t flag_count(unsigned n, std::uint64_t q)
{
    std::vector<std::uint64_t> count(n + 1, 0);
    count[0] = 1;
    for (unsigned k = 1; k <= n; ++k)
        for (unsigned d = 1; d <= k; ++d)
            count[k] += gaussian_binomial(k, d, q) * count[k - d];
    return count[n];
}

void visit_flags(const VectorSpace& V, const Subspace& W,
                 const std::function<void(const std::vector<Subspace>&, const std::vector<std::size_t>&)>& visit)
{
    const auto all = all_subspaces_of(V, W);
    std::vector<std::vector<std::size_t>> above(all.size());
    std::size_t top = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i] == W)
            top = i;
        for (std::size_t j = 0; j < all.size(); ++j)
            if (all[j].dim() > all[i].dim() && all[i].subset_of(all[j]))
                above[i].push_back(j);
    }
    std::vector<std::size_t> cur{0};
    std::function<void()> grow = [&]() {
        if (cur.back() == top) {
            visit(all, cur);
            return;
        }
        for (std::size_t j : above[cur.back()]) {
            cur.push_back(j);
            grow();
            cur.pop_back();
        }
    };
    grow();
}

std::vector<Flag> flags_of(const VectorSpace& V, const Subspace& W)
{
    std::vector<Flag> out;
    visit_flags(V, W, [&](const std::vector<Subspace>& all, const std::vector<std::size_t>& steps) {
        Flag f;
        for (std::size_t i : steps)
            f.push_back(all[i]);
        out.push_back(std::move(f));
    });
    return out;
}

std::vector<Flag> flags(const VectorSpace& V) { return flags_of(V, Subspace::whole(V)); }

bool is_complete(const Flag& f)
{
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i].dim() != i)
            return false;
    return true;
}

std::vector<Flag> complete_flags_of(const VectorSpace& V, const Subspace& W)
{
    std::vector<Flag> out;
    for (auto& f : flags_of(V, W))
        if (is_complete(f))
            out.push_back(f);
    return out;
}

Flag flag_intersect(const VectorSpace& V, const Flag& f, const Subspace& W)
{
    Flag out;
    for (const auto& S : f) {
        auto I = intersect(V, S, W);
        if (out.empty() || out.back() != I)
            out.push_back(I);
    }
    return out;
}

std::string flag_key(const VectorSpace& V, const Flag& f)
{
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i)
            s += "<";
        s += f[i].key(V);
    }
    return s;
}

std::vector<Vec> adapted_basis(const VectorSpace& V, const Flag& f)
{
    (void)V;
    if (!is_complete(f))
        throw std::invalid_argument("adapted basis needs a complete flag");
    std::vector<Vec> b;
    for (std::size_t i = 1; i < f.size(); ++i)
        for (Vec v : f[i].elements())
            if (!f[i - 1].contains(v)) {
                b.push_back(v);
                break;
            }
    return b;
}

Flag flag_from_basis(const VectorSpace& V, const std::vector<Vec>& basis)
{
    Flag f;
    for (std::size_t i = 0; i <= basis.size(); ++i) {
        f.push_back(Subspace::span(V, std::vector<Vec>(basis.begin(), basis.begin() + i)));
        if (f.back().dim() != i)
            throw std::invalid_argument("basis vectors are linearly dependent");
    }
    return f;
}

// ---------------------------------------------------------------------------

GroupElement group_make(const VectorSpace& V, Vec v, Elem xi)
{
    if (xi == 0 || xi >= V.q())
        throw std::invalid_argument("group scalar must be a nonzero element of F_q");
    if (v >= V.size())
        throw std::invalid_argument("group translation out of range");
    return {v, xi};
}

GroupElement group_mul(const VectorSpace& V, const GroupElement& a, const GroupElement& b)
{
    return {V.add(V.scale(a.xi, b.v), a.v), V.scalars().mul(a.xi, b.xi)};
}

GroupElement group_inv(const VectorSpace& V, const GroupElement& a)
{
    const Elem xi = V.scalars().inv(a.xi);
    return {V.neg(V.scale(xi, a.v)), xi};
}

Vec group_act(const VectorSpace& V, const GroupElement& a, Vec w)
{
    if (w == V.infinity())
        return w;
    return V.add(V.scale(a.xi, w), a.v);
}

std::vector<GroupElement> group_elements(const VectorSpace& V, const Subspace& W)
{
    std::vector<GroupElement> g;
    for (Vec v : W.elements())
        for (Elem xi = 1; xi < V.q(); ++xi)
            g.push_back({v, xi});
    return g;
}

}  // namespace vfern
