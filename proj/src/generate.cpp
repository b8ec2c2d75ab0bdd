#include "vfern/generate.hpp"

#include <set>
#include <stdexcept>

namespace vfern {

namespace {

template <class T>
const T& pick(const std::vector<T>& xs, Rng& rng)
{
    if (xs.empty())
        throw std::logic_error("nothing to pick from");
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

}  // namespace

Subspace random_subspace(const VectorSpace& amb, const Subspace& W, unsigned d, Rng& rng)
{
    return pick(subspaces_of(amb, W, d), rng);
}

std::vector<Vec> random_complement(const VectorSpace& amb, const Subspace& W, const Subspace& A, Rng& rng)
{
    std::vector<Vec> out;
    std::vector<Vec> gens = A.basis();
    while (gens.size() < W.dim()) {
        const auto span = Subspace::span(amb, gens);
        std::vector<Vec> fresh;
        for (Vec v : W.elements())
            if (!span.contains(v))
                fresh.push_back(v);
        const Vec v = pick(fresh, rng);
        gens.push_back(v);
        out.push_back(v);
    }
    return out;
}

std::vector<Elem> random_injective(const ExtField& F, const FernSpace& S, Rng& rng)
{
    if (S.dim() > F.m)
        throw std::invalid_argument("no injective map into a smaller field");
    std::uniform_int_distribution<Elem> any(0, F.big->order() - 1);
    while (true) {
        std::vector<Elem> on_basis;
        for (std::size_t i = 0; i < S.dim(); ++i)
            on_basis.push_back(any(rng));
        const auto lambda = extend_linear(F, S, on_basis);
        bool ok = true;
        for (const auto& [v, x] : lambda)
            if (v != 0 && x == 0)
                ok = false;
        if (ok)
            return on_basis;
    }
}

Fern random_fern(const ExtFieldPtr& F, const VectorSpace& amb, const Subspace& W, Rng& rng, int depth)
{
    const unsigned d = W.dim();
    if (d == 0)
        throw std::invalid_argument("ferns need a nonzero space");
    enum { Fiber, Smooth, Graft, Contract };
    std::vector<int> options{Fiber};
    if (d <= F->m)
        options.push_back(Smooth);
    if (depth > 0 && d >= 2)
        options.push_back(Graft);
    if (depth > 0 && d < amb.n())
        options.push_back(Contract);

    switch (pick(options, rng)) {
    case Smooth: {
        const auto S = make_space(amb, adapted_basis(amb, pick(complete_flags_of(amb, W), rng)));
        return smooth_fern(F, S, extend_linear(*F, S, random_injective(*F, S, rng)));
    }
    case Graft: {
        const unsigned d1 = std::uniform_int_distribution<unsigned>(1, d - 1)(rng);
        const auto sub_space = random_subspace(amb, W, d1, rng);
        const auto quot_space = Subspace::span(amb, random_complement(amb, W, sub_space, rng));
        const auto U = random_complement(amb, W, sub_space, rng);
        const Fern sub = random_fern(F, amb, sub_space, rng, depth - 1);
        const Fern quot = random_fern(F, amb, quot_space, rng, depth - 1);
        return graft(sub, quot, U);
    }
    case Contract: {
        std::vector<Subspace> above;
        for (const auto& X : subspaces(amb, d + 1))
            if (W.subset_of(X))
                above.push_back(X);
        return contract_fern(random_fern(F, amb, pick(above, rng), rng, depth - 1), W);
    }
    default: {
        const auto S = make_space(amb, adapted_basis(amb, pick(complete_flags_of(amb, W), rng)));
        return fiber(F, S, pick(chart_points(*F, S), rng)).fern;
    }
    }
}

MarkedTree random_tree(const ExtFieldPtr& F, int marks, Rng& rng)
{
    if (marks < 3)
        throw std::invalid_argument("stable trees need at least three marks");
    const Field& K = *F->big;
    MarkedTree t;
    t.field = F;
    t.ids = {0};
    t.marks[0] = {0, affine(0)};
    t.marks[1] = {0, affine(1)};
    t.marks[2] = {0, infinity_point()};
    std::vector<ProjPoint> line;
    for (Elem x = 0; x < K.order(); ++x)
        line.push_back(affine(x));
    line.push_back(infinity_point());

    for (int i = 3; i < marks; ++i) {
        std::set<Slot> used;
        for (const auto& [j, s] : t.marks)
            used.insert(s);
        for (const auto& nd : t.nodes) {
            used.insert(nd.a);
            used.insert(nd.b);
        }
        std::vector<Slot> free;
        for (int c = 0; c < t.size(); ++c)
            for (const auto& p : line)
                if (!used.count({c, p}))
                    free.push_back({c, p});
        std::vector<StabilizeAt::Kind> kinds{StabilizeAt::AtMark};
        if (!free.empty())
            kinds.push_back(StabilizeAt::Smooth);
        if (!t.nodes.empty())
            kinds.push_back(StabilizeAt::AtNode);
        StabilizeAt where;
        where.kind = pick(kinds, rng);
        if (where.kind == StabilizeAt::Smooth)
            where.slot = pick(free, rng);
        else if (where.kind == StabilizeAt::AtNode)
            where.node = std::uniform_int_distribution<int>(0, static_cast<int>(t.nodes.size()) - 1)(rng);
        else
            where.mark = std::uniform_int_distribution<int>(0, i - 1)(rng);
        t = stabilize(t, i, where);
    }
    return t;
}

}  // namespace vfern
