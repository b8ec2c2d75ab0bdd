#include "vfern/fern.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vfern {

FernSpace make_space(const VectorSpace& amb, const std::vector<Vec>& basis)
{
    FernSpace S;
    S.amb = amb;
    S.basis = basis;
    S.V = Subspace::span(amb, basis);
    if (S.V.dim() != basis.size())
        throw std::invalid_argument("flag basis is linearly dependent");
    S.coords.assign(amb.size(), {});
    const unsigned d = S.V.dim();
    for (std::uint64_t code = 0; code < S.V.elements().size(); ++code) {
        std::uint64_t x = code;
        std::vector<Elem> c(d);
        Vec v = 0;
        for (unsigned i = 0; i < d; ++i) {
            c[i] = static_cast<Elem>(x % amb.q());
            x /= amb.q();
            v = amb.add(v, amb.scale(c[i], basis[i]));
        }
        S.coords[v] = c;
    }
    return S;
}

FernSpace standard_space(const ExtField& F, unsigned n)
{
    VectorSpace amb(F.small, n);
    std::vector<Vec> b;
    for (unsigned i = 0; i < n; ++i)
        b.push_back(amb.unit(i));
    return make_space(amb, b);
}

namespace {

std::map<int, int> relabel_by(const FernSpace& S, const GroupElement& g)
{
    std::map<int, int> r;
    for (Vec w : S.V.elements())
        r[static_cast<int>(w)] = static_cast<int>(group_act(S.amb, g, w));
    r[static_cast<int>(S.infinity())] = static_cast<int>(S.infinity());
    return r;
}

}  // namespace

FernCheck validate_fern(const MarkedTree& t, const FernSpace& S)
{
    FernCheck out;
    auto& bad = out.violations;
    const auto report = validate(t);
    if (!report.stable) {
        for (const auto& v : report.violations)
            bad.push_back("unstable: " + v);
        return out;
    }
    std::set<int> expected;
    for (Vec v : S.V.elements())
        expected.insert(static_cast<int>(v));
    expected.insert(static_cast<int>(S.infinity()));
    std::set<int> present;
    for (const auto& [i, s] : t.marks)
        present.insert(i);
    if (present != expected) {
        bad.push_back("mark set is not V-hat");
        return out;
    }

    const Field& K = t.K();
    const Field& k = S.amb.scalars();
    const int zero_comp = t.marks.at(0).comp;
    const int inf_comp = t.marks.at(static_cast<int>(S.infinity())).comp;
    const auto chain = tree_path(t, zero_comp, inf_comp);

    std::vector<std::vector<int>> translate_maps;
    std::vector<Vec> translations;
    for (const auto& g : group_elements(S.amb, S.V)) {
        // mu_w = lambda_{g w}
        auto iso = are_isomorphic(remark(t, relabel_by(S, g)), t);
        if (!iso) {
            bad.push_back("no isomorphism for remarking by (v,xi) = (" + S.amb.str(g.v) + "," +
                          std::to_string(g.xi) + ")");
            continue;
        }
        if (g.xi == 1) {
            translations.push_back(g.v);
            translate_maps.push_back(iso->comp_map);
        }
    }
    if (!bad.empty())
        return out;

    // scalar action on the chain: the isomorphism (C, lambda_{xi^-1 .}) -> (C, lambda) sends
    // lambda_u to lambda_{xi u}
    for (Elem xi = 2; xi < k.order(); ++xi) {
        const GroupElement g{0, k.inv(xi)};
        auto iso = are_isomorphic(remark(t, relabel_by(S, g)), t);
        if (!iso)
            continue;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const int c = chain[i];
            if (iso->comp_map[c] != c) {
                bad.push_back("scalar " + std::to_string(xi) + " moves chain component " +
                              std::to_string(t.ids[c]));
                continue;
            }
            auto tw = toward(t, c);
            const ProjPoint x = i == 0 ? t.marks.at(0).pos : *tw[chain[i - 1]];
            const ProjPoint y = i + 1 == chain.size() ? t.marks.at(static_cast<int>(S.infinity())).pos
                                                      : *tw[chain[i + 1]];
            const Mobius N = zero_infinity(K, x, y);
            const Mobius A = compose(K, N, compose(K, iso->maps[c], inverse(K, N)));
            Mobius expect;
            expect.a = t.field->lift(xi);
            if (!same_map(K, A, expect))
                bad.push_back("scalar " + std::to_string(xi) + " is not multiplication on chain component " +
                              std::to_string(t.ids[c]));
        }
    }
    if (!bad.empty())
        return out;

    Flag flag{Subspace::zero(S.amb)};
    for (int c : chain) {
        std::vector<Vec> stab;
        for (std::size_t j = 0; j < translations.size(); ++j)
            if (translate_maps[j][c] == c)
                stab.push_back(translations[j]);
        auto W = Subspace::span(S.amb, stab);
        if (!flag.back().subset_of(W) || W == flag.back()) {
            bad.push_back("chain stabilizers do not form a flag");
            return out;
        }
        flag.push_back(W);
    }
    if (flag.back() != S.V) {
        bad.push_back("stabilizer of the infinity-component is not V");
        return out;
    }
    out.fern = Fern{t, S, chain, flag};
    return out;
}

Fern require_fern(const MarkedTree& t, const FernSpace& S)
{
    auto r = validate_fern(t, S);
    if (!r.fern) {
        std::string msg = "not a fern:";
        for (const auto& v : r.violations)
            msg += " " + v + ";";
        throw std::runtime_error(msg);
    }
    return *r.fern;
}

const Flag& associated_flag(const Fern& f) { return f.flag; }

Fern contract_fern(const Fern& f, const Subspace& W)
{
    const auto& S = f.space;
    if (W.dim() == 0)
        throw std::invalid_argument("cannot contract to the zero subspace");
    if (!W.subset_of(S.V))
        throw std::invalid_argument("subspace is not contained in V");
    std::set<int> keep;
    for (Vec v : W.elements())
        keep.insert(static_cast<int>(v));
    keep.insert(static_cast<int>(S.infinity()));
    auto c = contract(f.tree, keep);

    std::vector<Vec> basis;
    for (std::size_t i = 1; i <= S.basis.size(); ++i) {
        auto P = Subspace::span(S.amb, std::vector<Vec>(S.basis.begin(), S.basis.begin() + i));
        if (P == W) {
            basis.assign(S.basis.begin(), S.basis.begin() + i);
            break;
        }
    }
    if (basis.empty())
        for (const auto& step : flag_intersect(S.amb, f.flag, W))
            for (Vec b : step.basis())
                if (!Subspace::span(S.amb, basis).contains(b))
                    basis.push_back(b);
    return require_fern(c.tree, make_space(S.amb, basis));
}

Fern graft(const Fern& sub, const Fern& quot, const std::vector<Vec>& complement)
{
    const auto& amb = sub.space.amb;
    const Subspace& Vs = sub.space.V;
    const Subspace& Wq = quot.space.V;
    const auto U = Subspace::span(amb, complement);
    const auto V = sum(amb, Vs, Wq);
    auto is_complement = [&](const Subspace& X) {
        return intersect(amb, X, Vs).dim() == 0 && X.dim() + Vs.dim() == V.dim() && X.subset_of(V);
    };
    if (U.dim() != complement.size() || !is_complement(U))
        throw std::invalid_argument("U is not a complement");
    if (!is_complement(Wq))
        throw std::invalid_argument("quotient fern is not on a complement");

    const int inf = static_cast<int>(amb.infinity());
    MarkedTree t;
    t.field = sub.tree.field;
    for (int c = 0; c < quot.tree.size(); ++c)
        t.ids.push_back(t.size());
    t.nodes = quot.tree.nodes;
    t.marks[inf] = quot.tree.marks.at(inf);
    for (Vec u : U.elements()) {
        Vec w = 0;
        bool found = false;
        for (Vec x : Wq.elements())
            if (Vs.contains(amb.sub(x, u))) {
                w = x;
                found = true;
            }
        if (!found)
            throw std::logic_error("no coset representative");
        const int off = t.size();
        for (int c = 0; c < sub.tree.size(); ++c)
            t.ids.push_back(t.size());
        for (const auto& nd : sub.tree.nodes)
            t.nodes.push_back({{nd.a.comp + off, nd.a.pos}, {nd.b.comp + off, nd.b.pos}});
        const Slot tip = sub.tree.marks.at(inf);
        t.nodes.push_back({quot.tree.marks.at(static_cast<int>(w)), {tip.comp + off, tip.pos}});
        for (Vec v : Vs.elements()) {
            const Slot s = sub.tree.marks.at(static_cast<int>(v));
            t.marks[static_cast<int>(amb.add(u, v))] = {s.comp + off, s.pos};
        }
    }
    normalize_nodes(t);
    auto basis = sub.space.basis;
    basis.insert(basis.end(), complement.begin(), complement.end());
    return require_fern(t, make_space(amb, basis));
}

namespace {

template <class Map>
void canonicalize(const Field& K, const FernSpace& S, Map& values)
{
    for (std::size_t i = S.basis.size(); i-- > 0;) {
        auto it = values.find(S.basis[i]);
        if (it != values.end() && it->second != 0) {
            const Elem s = K.inv(it->second);
            for (auto& [v, x] : values)
                x = K.mul(s, x);
            return;
        }
    }
    // basis not adapted to the flag: fall back to the largest vector with a nonzero value
    for (auto it = values.rbegin(); it != values.rend(); ++it)
        if (it->second != 0) {
            const Elem s = K.inv(it->second);
            for (auto& [v, x] : values)
                x = K.mul(s, x);
            return;
        }
    throw std::logic_error("values vanish identically");
}

std::map<Vec, Elem> read_values(const Fern& f, int at_zero, int at_infinity, bool skip_zero)
{
    const Field& K = f.tree.K();
    const int pole = static_cast<int>(f.space.infinity());
    auto cc = contract_to_component(f.tree, at_zero == 0 ? pole : 0);
    const Mobius N = zero_infinity(K, cc.tree.marks.at(at_zero).pos, cc.tree.marks.at(at_infinity).pos);
    std::map<Vec, Elem> values;
    for (Vec v : f.space.V.elements()) {
        if (skip_zero && v == 0)
            continue;
        const ProjPoint p = apply(K, N, cc.tree.marks.at(static_cast<int>(v)).pos);
        if (p.is_infinity())
            throw std::logic_error("a finite mark collapsed onto the pole");
        values[v] = p.x;
    }
    canonicalize(K, f.space, values);
    return values;
}

}  // namespace

LineData line_data(const Fern& f)
{
    // contract to the infinity-component with lambda_0 -> 0 and lambda_inf -> infinity
    return {read_values(f, 0, static_cast<int>(f.space.infinity()), false)};
}

RecipData reciprocal_data(const Fern& f)
{
    // contract to the 0-component with lambda_inf -> 0 and lambda_0 -> infinity
    return {read_values(f, static_cast<int>(f.space.infinity()), 0, true)};
}

std::map<Vec, Elem> extend_linear(const ExtField& F, const FernSpace& S, const std::vector<Elem>& on_basis)
{
    const Field& K = *F.big;
    if (on_basis.size() != S.basis.size())
        throw std::invalid_argument("need one value per basis vector");
    std::map<Vec, Elem> lambda;
    for (Vec v : S.V.elements()) {
        Elem acc = 0;
        const auto& c = S.coords[v];
        for (std::size_t i = 0; i < c.size(); ++i)
            acc = K.add(acc, K.mul(F.lift(c[i]), on_basis[i]));
        lambda[v] = acc;
    }
    return lambda;
}

Fern smooth_fern(const ExtFieldPtr& F, const FernSpace& S, const std::map<Vec, Elem>& lambda)
{
    MarkedTree t;
    t.field = F;
    t.ids = {0};
    for (Vec v : S.V.elements())
        t.marks[static_cast<int>(v)] = {0, affine(lambda.at(v))};
    t.marks[static_cast<int>(S.infinity())] = {0, infinity_point()};
    return require_fern(t, S);
}

std::vector<Elem> lattice_poly(const Field& K, const std::vector<Elem>& lattice)
{
    std::vector<Elem> p{1};
    for (Elem r : lattice) {
        std::vector<Elem> next(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] = K.add(next[i + 1], p[i]);
            next[i] = K.sub(next[i], K.mul(r, p[i]));
        }
        p = std::move(next);
    }
    return p;
}

bool only_q_powers(const std::vector<Elem>& poly, unsigned q)
{
    for (std::size_t k = 0; k < poly.size(); ++k) {
        if (poly[k] == 0)
            continue;
        std::size_t x = k;
        if (x == 0)
            return false;
        while (x % q == 0)
            x /= q;
        if (x != 1)
            return false;
    }
    return true;
}

Elem poly_eval(const Field& K, const std::vector<Elem>& poly, Elem x)
{
    Elem acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;)
        acc = K.add(K.mul(acc, x), poly[i]);
    return acc;
}

AdditivePoly drinfeld_psi(const ExtField& F, const FernSpace& S, const std::map<Vec, Elem>& lambda)
{
    const Field& K = *F.big;
    std::vector<Elem> p{0, 1};
    for (Vec v : S.V.elements()) {
        if (v == 0)
            continue;
        const Elem l = lambda.at(v);
        if (l == 0)
            throw std::invalid_argument("line data is not injective");
        // multiply by (1 - x / l)
        const Elem c = K.neg(K.inv(l));
        std::vector<Elem> next(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i] = K.add(next[i], p[i]);
            next[i + 1] = K.add(next[i + 1], K.mul(c, p[i]));
        }
        p = std::move(next);
    }
    return {p};
}

PsiCheck check_psi(const ExtField& F, const FernSpace& S, const std::map<Vec, Elem>& lambda,
                   const AdditivePoly& psi)
{
    const Field& K = *F.big;
    PsiCheck r;
    std::size_t lattice_size = S.V.elements().size();
    r.q_powers = only_q_powers(psi.coeffs, F.q());
    r.linear_is_t = psi.coeffs.size() > 1 && psi.coeffs[1] == 1;
    r.degree = psi.coeffs.size() == lattice_size + 1 && psi.coeffs.back() != 0;
    r.kills_lattice = true;
    std::set<Elem> image;
    for (Vec v : S.V.elements()) {
        image.insert(lambda.at(v));
        if (poly_eval(K, psi.coeffs, lambda.at(v)) != 0)
            r.kills_lattice = false;
    }
    std::set<Elem> roots;
    for (Elem x = 0; x < K.order(); ++x)
        if (poly_eval(K, psi.coeffs, x) == 0)
            roots.insert(x);
    r.kernel_exact = roots == image && image.size() == lattice_size;
    return r;
}

}  // namespace vfern
