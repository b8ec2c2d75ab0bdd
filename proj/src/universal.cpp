#include "vfern/universal.hpp"

#include <algorithm>
#include <stdexcept>

namespace vfern {

unsigned level(const FernSpace& S, Vec v)
{
    if (!S.V.contains(v))
        throw std::invalid_argument("vector is not in V");
    const auto& c = S.coords[v];
    for (std::size_t i = c.size(); i-- > 0;)
        if (c[i] != 0)
            return static_cast<unsigned>(i + 1);
    return 0;
}

Vec truncate(const FernSpace& S, Vec v, unsigned k)
{
    if (!S.V.contains(v))
        throw std::invalid_argument("vector is not in V");
    const auto& c = S.coords[v];
    Vec out = 0;
    for (unsigned i = 0; i < k && i < c.size(); ++i)
        out = S.amb.add(out, S.amb.scale(c[i], S.basis[i]));
    return out;
}

QPoly q_poly(const FernSpace& S, Vec v, unsigned k)
{
    if (k < 1 || k > S.dim())
        throw std::invalid_argument("level out of range");
    if (level(S, v) > k)
        throw std::invalid_argument("vector is not in V_k");
    QPoly Q;
    Q.k = k;
    const auto& c = S.coords[v];
    for (unsigned i = 1; i <= k; ++i)
        if (c[i - 1] != 0)
            Q.terms.push_back({c[i - 1], i});
    return Q;
}

Elem q_eval(const ExtField& F, const QPoly& Q, const std::vector<Elem>& t)
{
    const Field& K = *F.big;
    Elem acc = 0;
    for (const auto& [c, i] : Q.terms) {
        Elem prod = F.lift(c);
        for (unsigned j = i; j < Q.k; ++j)
            prod = K.mul(prod, t.at(j - 1));
        acc = K.add(acc, prod);
    }
    return acc;
}

Elem q_eval(const ExtField& F, const FernSpace& S, Vec v, unsigned k, const std::vector<Elem>& t)
{
    return q_eval(F, q_poly(S, v, k), t);
}

MPoly mpoly_monomial(unsigned nvars, unsigned from, unsigned to)
{
    std::vector<unsigned> e(nvars, 0);
    for (unsigned j = from; j < to; ++j)
        e.at(j - 1) += 1;
    return {{e, 1}};
}

MPoly mpoly_mul(const Field& Fq, const MPoly& a, const MPoly& b)
{
    MPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto e = ea;
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            Elem& slot = out[e];
            slot = Fq.add(slot, Fq.mul(ca, cb));
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

MPoly q_expand(const Field& Fq, const QPoly& Q, unsigned nvars)
{
    MPoly out;
    for (const auto& [c, i] : Q.terms) {
        auto mono = mpoly_monomial(nvars, i, Q.k);
        Elem& slot = out[mono.begin()->first];
        slot = Fq.add(slot, c);
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Flag basis_flag(const FernSpace& S, const std::vector<unsigned>& dims)
{
    Flag f;
    for (unsigned d : dims)
        f.push_back(Subspace::span(S.amb, std::vector<Vec>(S.basis.begin(), S.basis.begin() + d)));
    return f;
}

bool combinations_nonzero(const ExtField& F, const std::vector<Elem>& values)
{
    const Field& K = *F.big;
    const unsigned q = F.q();
    std::vector<Elem> c(values.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < c.size() && c[i] == q - 1)
            c[i++] = 0;
        if (i == c.size())
            return true;
        ++c[i];
        Elem acc = 0;
        for (std::size_t j = 0; j < c.size(); ++j)
            acc = K.add(acc, K.mul(F.lift(c[j]), values[j]));
        if (acc == 0)
            return false;
    }
}

}  // namespace

std::optional<Stratum> chart_contains(const ExtField& F, const FernSpace& S, const std::vector<Elem>& t,
                                      const Flag* flag)
{
    const unsigned n = S.dim();
    if (n == 0)
        throw std::invalid_argument("V must be nonzero");
    if (t.size() != n - 1)
        throw std::invalid_argument("chart point needs n-1 coordinates");
    for (Elem x : t)
        if (x >= F.big->order())
            throw std::invalid_argument("chart coordinate out of range");

    std::vector<bool> allowed(n + 1, flag == nullptr);
    if (flag) {
        if (flag->empty() || flag->front().dim() != 0 || flag->back() != S.V)
            throw std::invalid_argument("flag must run from 0 to V");
        for (const auto& W : *flag) {
            auto P = Subspace::span(S.amb, std::vector<Vec>(S.basis.begin(), S.basis.begin() + W.dim()));
            if (P != W)
                throw std::invalid_argument("basis is not adapted to the flag");
            allowed[W.dim()] = true;
        }
    }

    Stratum st;
    st.cuts.push_back(0);
    for (unsigned i = 1; i < n; ++i) {
        if (t[i - 1] != 0)
            continue;
        if (!allowed[i])
            return std::nullopt;
        st.cuts.push_back(i);
    }
    st.cuts.push_back(n);

    const Field& K = *F.big;
    for (std::size_t k = 1; k < st.cuts.size(); ++k) {
        std::vector<Elem> products;
        for (unsigned j = st.cuts[k - 1] + 1; j <= st.cuts[k]; ++j) {
            Elem p = 1;
            for (unsigned i = j; i < st.cuts[k]; ++i)
                p = K.mul(p, t[i - 1]);
            products.push_back(p);
        }
        if (!combinations_nonzero(F, products))
            return std::nullopt;
    }
    st.flag = basis_flag(S, st.cuts);
    return st;
}

std::vector<std::vector<Elem>> chart_points(const ExtField& F, const FernSpace& S)
{
    const unsigned n = S.dim();
    const Elem Q = F.big->order();
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> t(n - 1, 0);
    while (true) {
        if (chart_contains(F, S, t))
            out.push_back(t);
        std::size_t i = 0;
        while (i < t.size() && t[i] == Q - 1)
            t[i++] = 0;
        if (i == t.size())
            break;
        ++t[i];
    }
    return out;
}

// ---------------------------------------------------------------------------

int Fiber::index(const SigmaIndex& s) const
{
    auto it = std::lower_bound(sigma.begin(), sigma.end(), s);
    if (it == sigma.end() || !(*it == s))
        return -1;
    return static_cast<int>(it - sigma.begin());
}

namespace {

const ExtField& fieldof(const Fiber& X) { return *X.field; }

unsigned cut(const Fiber& X, unsigned k) { return X.stratum.cuts.at(k); }

// Q^{i_k}_{w^{<= i_k}}(t)
Elem cut_value(const Fiber& X, Vec w, unsigned k)
{
    const unsigned i = cut(X, k);
    return q_eval(fieldof(X), X.space, truncate(X.space, w, i), i, X.t);
}

bool congruent(const Fiber& X, Vec a, Vec b, unsigned k)
{
    return level(X.space, X.space.amb.sub(a, b)) <= cut(X, k);
}

std::vector<std::optional<ProjPoint>> constraints_of(const Fiber& X, const SigmaIndex& own)
{
    std::vector<std::optional<ProjPoint>> out;
    for (const auto& s : X.sigma) {
        if (s == own)
            out.push_back(std::nullopt);
        else if (s.k > own.k && congruent(X, s.v, own.v, s.k))
            out.push_back(affine(cut_value(X, own.v, s.k)));
        else
            out.push_back(infinity_point());
    }
    return out;
}

std::optional<Slot> locate(const Fiber& X, const Assignment& a)
{
    std::optional<Slot> found;
    for (int c = 0; c < static_cast<int>(X.sigma.size()); ++c) {
        const auto cons = component_constraints(X, c);
        bool ok = true;
        for (std::size_t j = 0; j < cons.size() && ok; ++j)
            if (cons[j] && *cons[j] != a[j])
                ok = false;
        if (!ok)
            continue;
        if (found)
            throw std::logic_error("section point lies on two components");
        found = Slot{c, a[c]};
    }
    return found;
}

}  // namespace

std::vector<std::optional<ProjPoint>> component_constraints(const Fiber& X, int comp)
{
    return constraints_of(X, X.sigma.at(comp));
}

std::optional<Assignment> components_meet(const Fiber& X, int a, int b)
{
    if (a == b)
        throw std::invalid_argument("a component does not meet itself");
    const auto ca = component_constraints(X, a);
    const auto cb = component_constraints(X, b);
    Assignment out;
    for (std::size_t j = 0; j < ca.size(); ++j) {
        if (ca[j] && cb[j] && *ca[j] != *cb[j])
            return std::nullopt;
        out.push_back(ca[j] ? *ca[j] : *cb[j]);
    }
    return out;
}

Fiber fiber(const ExtFieldPtr& F, const FernSpace& S, const std::vector<Elem>& t)
{
    auto st = chart_contains(*F, S, t);
    if (!st)
        throw std::invalid_argument("t is not in the chart");
    Fiber X;
    X.field = F;
    X.space = S;
    X.t = t;
    X.stratum = *st;

    std::vector<Vec> elems = S.V.elements();
    std::sort(elems.begin(), elems.end());
    for (unsigned k = 1; k <= X.stratum.m(); ++k)
        for (Vec v : elems)
            if (truncate(S, v, cut(X, k)) == 0)
                X.sigma.push_back({v, k});

    MarkedTree tree;
    tree.field = F;
    for (std::size_t c = 0; c < X.sigma.size(); ++c)
        tree.ids.push_back(static_cast<int>(c));

    for (int a = 0; a < static_cast<int>(X.sigma.size()); ++a) {
        const auto& upper = X.sigma[a];
        if (upper.k < 2)
            continue;
        for (int b = 0; b < static_cast<int>(X.sigma.size()); ++b) {
            const auto& lower = X.sigma[b];
            if (lower.k + 1 != upper.k || !congruent(X, upper.v, lower.v, upper.k))
                continue;
            auto p = components_meet(X, a, b);
            if (!p)
                throw std::logic_error("adjacent components do not meet");
            tree.nodes.push_back({{a, (*p)[a]}, {b, (*p)[b]}});
        }
    }

    for (Vec u : elems) {
        auto s = locate(X, section_assignment(X, u));
        if (!s)
            throw std::logic_error("section point lies on no component");
        tree.marks[static_cast<int>(u)] = *s;
    }
    auto s = locate(X, section_assignment(X, S.infinity()));
    if (!s)
        throw std::logic_error("infinity section lies on no component");
    tree.marks[static_cast<int>(S.infinity())] = *s;

    normalize_nodes(tree);
    X.fern = require_fern(tree, S);
    return X;
}

ProjPoint section_full(const Fiber& X, Vec u, Vec v, Vec w)
{
    const auto& S = X.space;
    if (u == S.infinity())
        return infinity_point();
    if (w == 0)
        throw std::invalid_argument("second index must be nonzero");
    const Vec x = S.amb.sub(v, u);
    const unsigned l = std::max(level(S, x), level(S, w));
    const Field& K = *X.field->big;
    return proj(K, K.neg(q_eval(fieldof(X), S, x, l, X.t)), q_eval(fieldof(X), S, w, l, X.t));
}

Assignment section_assignment(const Fiber& X, Vec u)
{
    Assignment a;
    for (const auto& s : X.sigma)
        a.push_back(section_full(X, u, s.v, X.space.basis[cut(X, s.k) - 1]));
    return a;
}

std::pair<Vec, Vec> g_translate_index(const VectorSpace& V, std::pair<Vec, Vec> idx, const GroupElement& g)
{
    const Elem r = V.scalars().inv(g.xi);
    return {V.scale(r, V.sub(idx.first, g.v)), V.scale(r, idx.second)};
}

Assignment translated_section(const Fiber& X, Vec u, const GroupElement& g)
{
    Assignment a;
    for (const auto& s : X.sigma) {
        auto [v, w] = g_translate_index(X.space.amb, {s.v, X.space.basis[cut(X, s.k) - 1]}, g);
        a.push_back(section_full(X, u, v, w));
    }
    return a;
}

bool check_equations(const Fiber& X, const Assignment& a)
{
    const Field& K = *X.field->big;
    const auto& S = X.space;
    if (a.size() != X.sigma.size())
        throw std::invalid_argument("assignment must cover every index");
    const unsigned m = X.stratum.m();
    for (std::size_t i = 0; i < X.sigma.size(); ++i)
        for (std::size_t j = 0; j < X.sigma.size(); ++j) {
            const auto& s = X.sigma[i];
            const auto& r = X.sigma[j];
            const Vec diff = S.amb.sub(s.v, r.v);
            for (unsigned l = std::max(s.k, r.k); l <= m; ++l) {
                const unsigned il = cut(X, l);
                if (level(S, diff) > il)
                    continue;
                const Elem qs = q_eval(fieldof(X), S, S.basis[cut(X, s.k) - 1], il, X.t);
                const Elem qr = q_eval(fieldof(X), S, S.basis[cut(X, r.k) - 1], il, X.t);
                const Elem qd = q_eval(fieldof(X), S, diff, il, X.t);
                const Elem lhs = K.add(K.mul(qs, K.mul(a[i].x, a[j].y)), K.mul(qd, K.mul(a[i].y, a[j].y)));
                const Elem rhs = K.mul(qr, K.mul(a[j].x, a[i].y));
                if (lhs != rhs)
                    return false;
            }
        }
    return true;
}

// ---------------------------------------------------------------------------

const Functional* ClassPoint::find(const Subspace& W) const
{
    for (const auto& f : entries)
        if (f.W == W)
            return &f;
    return nullptr;
}

void canonicalize_functional(const Field& K, std::vector<Elem>& values)
{
    for (std::size_t i = values.size(); i-- > 0;)
        if (values[i] != 0) {
            const Elem s = K.inv(values[i]);
            for (auto& x : values)
                x = K.mul(s, x);
            return;
        }
    throw std::invalid_argument("functional is zero");
}

Elem functional_eval(const ExtField& F, const Functional& f, Vec x)
{
    if (!f.W.contains(x))
        throw std::invalid_argument("vector outside the functional's domain");
    const Field& K = *F.big;
    const auto c = f.W.coords_of(x);
    Elem acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        acc = K.add(acc, K.mul(F.lift(c[i]), f.values[i]));
    return acc;
}

ClassPoint classify(const Fern& f)
{
    const auto& S = f.space;
    const Field& K = f.tree.K();
    ClassPoint cp;
    for (const auto& W : all_subspaces_of(S.amb, S.V)) {
        if (W.dim() == 0)
            continue;
        const LineData ld = W == S.V ? line_data(f) : line_data(contract_fern(f, W));
        Functional fn{W, {}};
        for (Vec b : W.basis())
            fn.values.push_back(ld.values.at(b));
        canonicalize_functional(K, fn.values);
        cp.entries.push_back(std::move(fn));
    }
    return cp;
}

std::vector<Elem> chart_coords(const ExtField& F, const ClassPoint& cp, const FernSpace& S)
{
    const Field& K = *F.big;
    std::vector<Elem> t;
    for (unsigned i = 1; i < S.dim(); ++i) {
        auto W = Subspace::span(S.amb, std::vector<Vec>(S.basis.begin(), S.basis.begin() + i + 1));
        const Functional* fn = cp.find(W);
        if (!fn)
            throw std::invalid_argument("class point lacks a flag step");
        const Elem num = functional_eval(F, *fn, S.basis[i - 1]);
        const Elem den = functional_eval(F, *fn, S.basis[i]);
        if (den == 0)
            throw std::invalid_argument("class point is outside the chart");
        t.push_back(K.div(num, den));
    }
    return t;
}

bool proportional(const Field& K, const std::vector<Elem>& a, const std::vector<Elem>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (K.mul(a[i], b[j]) != K.mul(a[j], b[i]))
                return false;
    return true;
}

namespace {

std::vector<Elem> restrict_to(const ExtField& F, const Functional& f, const Subspace& W)
{
    std::vector<Elem> out;
    for (Vec b : W.basis())
        out.push_back(functional_eval(F, f, b));
    return out;
}

bool all_zero(const std::vector<Elem>& v)
{
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

}  // namespace

bool bv_member(const ExtField& F, const ClassPoint& cp)
{
    for (const auto& f : cp.entries)
        if (all_zero(f.values))
            return false;
    for (const auto& outer : cp.entries)
        for (const auto& inner : cp.entries) {
            if (inner.W == outer.W || !inner.W.subset_of(outer.W))
                continue;
            if (!proportional(*F.big, restrict_to(F, outer, inner.W), inner.values))
                return false;
        }
    return true;
}

bool uf_member(const ExtField& F, const ClassPoint& cp, const Flag& flag)
{
    if (!bv_member(F, cp))
        return false;
    for (const auto& outer : cp.entries)
        for (const auto& inner : cp.entries) {
            if (inner.W == outer.W || !inner.W.subset_of(outer.W))
                continue;
            const bool separated = std::any_of(flag.begin(), flag.end(), [&](const Subspace& W) {
                return inner.W.subset_of(W) && !outer.W.subset_of(W);
            });
            if (!separated && all_zero(restrict_to(F, outer, inner.W)))
                return false;
        }
    return true;
}

FernSpace adapted_space(const Fern& f)
{
    const auto& amb = f.space.amb;
    std::vector<Vec> basis;
    for (const auto& step : f.flag)
        for (Vec b : step.basis())
            if (!Subspace::span(amb, basis).contains(b))
                basis.push_back(b);
    return make_space(amb, basis);
}

bool round_trip(const Fern& f)
{
    const auto& F = f.tree.field;
    const auto S = adapted_space(f);
    const auto t = chart_coords(*F, classify(f), S);
    if (!chart_contains(*F, S, t))
        return false;
    return are_isomorphic(fiber(F, S, t).fern.tree, f.tree).has_value();
}

}  // namespace vfern
