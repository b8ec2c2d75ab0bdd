#include "properties.hpp"

#include "vfern/census.hpp"
#include "vfern/generate.hpp"

#include <functional>
#include <set>

namespace vfern {

namespace {

struct Check {
    bool ok = true;
    std::string detail;
    int cases = 0;

    void expect(bool cond, const std::string& what)
    {
        ++cases;
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Config {
    unsigned p, e, m, n;
};

std::string cfg_str(const Config& c)
{
    return "p=" + std::to_string(c.p) + " e=" + std::to_string(c.e) + " m=" + std::to_string(c.m) +
           " n=" + std::to_string(c.n);
}

const std::vector<Config> chart_configs{{2, 1, 1, 1}, {2, 1, 2, 1}, {2, 1, 1, 2}, {2, 1, 2, 2}, {3, 1, 1, 2},
                                        {3, 1, 2, 2}, {2, 1, 1, 3}, {2, 1, 2, 3}};

void for_each_chart_point(const Config& c,
                          const std::function<void(const ExtFieldPtr&, const FernSpace&, const std::vector<Elem>&)>& f)
{
    const auto F = field_make(c.p, c.e, c.m);
    VectorSpace amb(F->small, c.n);
    for (const auto& fl : complete_flags_of(amb, Subspace::whole(amb))) {
        const auto S = make_space(amb, adapted_basis(amb, fl));
        for (const auto& t : chart_points(*F, S))
            f(F, S, t);
    }
}

std::vector<Fern> random_ferns(Rng& rng, int count)
{
    const std::vector<Config> cs{{2, 1, 1, 2}, {2, 1, 2, 2}, {3, 1, 1, 2}, {3, 1, 2, 2},
                                 {2, 1, 1, 3}, {2, 1, 2, 3}, {3, 1, 1, 3}, {2, 2, 1, 2}};
    std::vector<Fern> out;
    for (int i = 0; i < count; ++i) {
        const auto& c = cs[static_cast<std::size_t>(i) % cs.size()];
        const auto F = field_make(c.p, c.e, c.m);
        VectorSpace amb(F->small, c.n);
        out.push_back(random_fern(F, amb, Subspace::whole(amb), rng));
    }
    return out;
}

Check gf_field_axioms()
{
    Check ch;
    for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
        Field K(p, canonical_modulus(p, d));
        const Elem Q = K.order();
        for (Elem a = 0; a < Q; ++a) {
            ch.expect(K.add(a, K.neg(a)) == 0, "additive inverse");
            if (a)
                ch.expect(K.mul(a, K.inv(a)) == 1, "multiplicative inverse");
            for (Elem b = 0; b < Q; ++b)
                for (Elem c = 0; c < Q; ++c) {
                    ch.expect(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)), "distributivity");
                    ch.expect(K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c)), "associativity");
                }
        }
    }
    return ch;
}

Check gf_embedding()
{
    Check ch;
    for (auto [p, e, m] : std::vector<std::array<unsigned, 3>>{{2, 2, 2}, {2, 2, 3}, {3, 2, 1}, {3, 2, 2}, {2, 3, 2}}) {
        const auto F = field_make(p, e, m);
        const Field& k = *F->small;
        const Field& K = *F->big;
        std::set<Elem> image;
        for (Elem a = 0; a < k.order(); ++a) {
            image.insert(F->lift(a));
            for (Elem b = 0; b < k.order(); ++b) {
                ch.expect(F->lift(k.add(a, b)) == K.add(F->lift(a), F->lift(b)), "embedding respects +");
                ch.expect(F->lift(k.mul(a, b)) == K.mul(F->lift(a), F->lift(b)), "embedding respects *");
            }
        }
        ch.expect(image.size() == k.order(), "embedding is injective");
    }
    return ch;
}

Check gf_subspace_counts()
{
    Check ch;
    for (unsigned q : {2u, 3u})
        for (unsigned n = 1; n <= 4; ++n) {
            const auto F = field_make(q, 1, 1);
            VectorSpace V(F->small, n);
            for (unsigned d = 0; d <= n; ++d)
                ch.expect(subspaces(V, d).size() == gaussian_binomial(n, d, q),
                          "subspace count q=" + std::to_string(q) + " n=" + std::to_string(n));
            if (n <= 3) {
                std::uint64_t complete = 1;
                for (unsigned i = 1; i <= n; ++i)
                    complete *= gaussian_binomial(i, 1, q);
                ch.expect(complete_flags_of(V, Subspace::whole(V)).size() == complete, "complete flag count");
            }
        }
    return ch;
}

Check gf_group_action()
{
    Check ch;
    const auto F = field_make(3, 1, 1);
    VectorSpace V(F->small, 2);
    const auto G = group_elements(V, Subspace::whole(V));
    for (const auto& a : G)
        for (const auto& b : G)
            for (Vec w = 0; w <= V.size(); ++w)
                ch.expect(group_act(V, group_mul(V, a, b), w) == group_act(V, a, group_act(V, b, w)),
                          "action is compatible with the product");
    return ch;
}

Check curve_cross_ratio(Rng& rng)
{
    Check ch;
    const auto F = field_make(2, 1, 4);
    const Field& K = *F->big;
    std::uniform_int_distribution<Elem> any(0, K.order());
    auto point = [&] {
        const Elem x = any(rng);
        return x == K.order() ? infinity_point() : affine(x);
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ProjPoint> pts;
        while (pts.size() < 4) {
            auto p = point();
            if (std::find(pts.begin(), pts.end(), p) == pts.end())
                pts.push_back(p);
        }
        Mobius M{any(rng) % K.order(), any(rng) % K.order(), any(rng) % K.order(), any(rng) % K.order()};
        if (K.sub(K.mul(M.a, M.d), K.mul(M.b, M.c)) == 0)
            continue;
        const Elem before = cross_ratio(K, pts[0], pts[1], pts[2], pts[3]);
        const Elem after = cross_ratio(K, apply(K, M, pts[0]), apply(K, M, pts[1]), apply(K, M, pts[2]),
                                       apply(K, M, pts[3]));
        ch.expect(before == after, "cross ratio is Mobius invariant");
    }
    return ch;
}

Check curve_random_trees(Rng& rng)
{
    Check ch;
    for (int trial = 0; trial < 200; ++trial) {
        const auto F = field_make(trial % 2 ? 3 : 2, 1, 1 + trial % 3);
        const auto t = random_tree(F, 3 + trial % 6, rng);
        ch.expect(validate(t).stable, "random tree is stable");
        const auto g = dual_graph(t);
        ch.expect(static_cast<int>(g.edges.size()) == g.vertices - 1, "dual graph has |E| = |V| - 1");
        for (int d : g.degrees())
            ch.expect(d >= 3, "dual graph vertex degree >= 3");
        ch.expect(are_isomorphic(t, t).has_value(), "tree is isomorphic to itself");
    }
    return ch;
}

Check curve_iso_under_reparametrization(Rng& rng)
{
    Check ch;
    for (int trial = 0; trial < 100; ++trial) {
        const auto F = field_make(trial % 2 ? 3 : 2, 1, 2);
        const Field& K = *F->big;
        const auto t = random_tree(F, 4 + trial % 5, rng);
        std::uniform_int_distribution<Elem> any(0, K.order() - 1);
        std::vector<Mobius> maps;
        for (int c = 0; c < t.size(); ++c) {
            Mobius M;
            do {
                M = {any(rng), any(rng), any(rng), any(rng)};
            } while (K.sub(K.mul(M.a, M.d), K.mul(M.b, M.c)) == 0);
            maps.push_back(M);
        }
        MarkedTree u = t;
        for (auto& [i, s] : u.marks)
            s.pos = apply(K, maps[s.comp], s.pos);
        for (auto& nd : u.nodes) {
            nd.a.pos = apply(K, maps[nd.a.comp], nd.a.pos);
            nd.b.pos = apply(K, maps[nd.b.comp], nd.b.pos);
        }
        normalize_nodes(u);
        ch.expect(are_isomorphic(t, u).has_value(), "reparametrized tree is isomorphic");
    }
    return ch;
}

Check curve_knudsen(Rng& rng)
{
    Check ch;
    for (int trial = 0; trial < 200; ++trial) {
        const auto F = field_make(trial % 2 ? 3 : 2, 1, 1 + trial % 2);
        const int marks = 3 + trial % 5;
        const auto t = random_tree(F, marks + 1, rng);
        std::set<int> keep;
        for (int i = 0; i < marks; ++i)
            keep.insert(i);
        const auto base = contract(t, keep);
        ch.expect(validate(base.tree).stable, "contraction is stable");
        std::set<int> all = keep;
        all.insert(marks);
        const auto again = contract(t, all);
        ch.expect(are_isomorphic(again.tree, t).has_value(), "contracting nothing is the identity");
        Rng order(rng());
        const auto shuffled = contract(t, keep, &order);
        ch.expect(are_isomorphic(shuffled.tree, base.tree).has_value(), "contraction order independence");
    }
    return ch;
}

Check curve_stabilize_contract(Rng& rng)
{
    Check ch;
    for (int trial = 0; trial < 200; ++trial) {
        const auto F = field_make(trial % 2 ? 3 : 2, 1, 1 + trial % 2);
        const int marks = 3 + trial % 5;
        const auto t = random_tree(F, marks, rng);
        std::set<int> keep;
        for (int i = 0; i < marks; ++i)
            keep.insert(i);
        StabilizeAt where;
        const int kind = static_cast<int>(rng() % 2);
        if (kind == 0 || t.nodes.empty()) {
            where.kind = StabilizeAt::AtMark;
            where.mark = static_cast<int>(rng() % static_cast<unsigned>(marks));
        } else {
            where.kind = StabilizeAt::AtNode;
            where.node = static_cast<int>(rng() % t.nodes.size());
        }
        const auto s = stabilize(t, marks, where);
        ch.expect(validate(s).stable, "stabilization is stable");
        ch.expect(are_isomorphic(contract(s, keep).tree, t).has_value(), "contract(stabilize(t)) = t");
    }
    return ch;
}

Check fern_validates(Rng& rng)
{
    Check ch;
    for (const auto& f : random_ferns(rng, 60))
        ch.expect(validate_fern(f.tree, f.space).fern.has_value(), "random pipeline output validates");
    return ch;
}

Check fern_perturbation(Rng& rng)
{
    Check ch;
    int trials = 0;
    const std::vector<Config> cs{{2, 1, 2, 2}, {3, 1, 2, 2}, {2, 1, 3, 2}, {2, 1, 2, 3}, {3, 1, 1, 2}, {2, 1, 3, 3}};
    for (int attempt = 0; attempt < 2000 && trials < 100; ++attempt) {
        const auto& c = cs[static_cast<std::size_t>(attempt) % cs.size()];
        const auto F = field_make(c.p, c.e, c.m);
        VectorSpace amb(F->small, c.n);
        const Fern f = random_fern(F, amb, Subspace::whole(amb), rng);
        const Field& K = f.tree.K();
        std::set<Slot> used;
        for (const auto& [i, s] : f.tree.marks)
            used.insert(s);
        for (const auto& nd : f.tree.nodes) {
            used.insert(nd.a);
            used.insert(nd.b);
        }
        // marks on components with at least four special points
        std::vector<int> movable;
        for (const auto& [i, s] : f.tree.marks) {
            int special = 0;
            for (const auto& u : used)
                special += u.comp == s.comp;
            if (special >= 4)
                movable.push_back(i);
        }
        if (movable.empty())
            continue;
        const int label = movable[rng() % movable.size()];
        const int comp = f.tree.marks.at(label).comp;
        std::vector<ProjPoint> free;
        for (Elem x = 0; x <= K.order(); ++x) {
            const ProjPoint p = x == K.order() ? infinity_point() : affine(x);
            if (!used.count({comp, p}))
                free.push_back(p);
        }
        if (free.empty())
            continue;
        MarkedTree t = f.tree;
        t.marks[label].pos = free[rng() % free.size()];
        ++trials;
        ch.expect(!validate_fern(t, f.space).fern.has_value(), "perturbed marking still validates");
    }
    ch.expect(trials == 100, "fewer than 100 perturbation trials");
    return ch;
}

Check fern_line_and_reciprocal(Rng& rng)
{
    Check ch;
    for (const auto& f : random_ferns(rng, 60)) {
        const auto& F = *f.tree.field;
        const Field& K = *F.big;
        const Field& k = *F.small;
        const auto& amb = f.space.amb;
        const auto ld = line_data(f);
        const auto& kernel = f.flag[f.flag.size() - 2];
        for (Vec v : f.space.V.elements()) {
            ch.expect((ld.values.at(v) == 0) == kernel.contains(v), "line data kernel is the last proper flag step");
            for (Vec w : f.space.V.elements())
                ch.expect(ld.values.at(amb.add(v, w)) == K.add(ld.values.at(v), ld.values.at(w)), "line data is additive");
        }
        const auto rd = reciprocal_data(f);
        const auto& support = f.flag[1];
        for (const auto& [v, r] : rd.values) {
            ch.expect((r != 0) == support.contains(v), "reciprocal data is supported on the first flag step");
            for (Elem a = 1; a < k.order(); ++a)
                ch.expect(rd.values.at(amb.scale(a, v)) == K.mul(K.inv(F.lift(a)), r), "reciprocal homogeneity");
            for (const auto& [w, s] : rd.values) {
                const Vec u = amb.add(v, w);
                if (u == 0)
                    continue;
                const Elem ru = rd.values.at(u);
                ch.expect(K.mul(r, s) == K.mul(ru, K.add(r, s)), "reciprocal identity");
            }
        }
        if (f.smooth()) {
            std::vector<Elem> a, b;
            for (const auto& [v, r] : rd.values) {
                a.push_back(r);
                b.push_back(K.inv(ld.values.at(v)));
            }
            ch.expect(proportional(K, a, b), "reciprocal data of a smooth fern is 1/lambda");
        }
    }
    return ch;
}

Check fern_flag_compat(Rng& rng)
{
    Check ch;
    for (const auto& f : random_ferns(rng, 40)) {
        const auto& amb = f.space.amb;
        for (const auto& W : all_subspaces_of(amb, f.space.V)) {
            if (W.dim() == 0)
                continue;
            const auto g = contract_fern(f, W);
            ch.expect(g.flag == flag_intersect(amb, f.flag, W), "contraction flag is the intersected flag");
        }
    }
    return ch;
}

Check fern_graft_example()
{
    Check ch;
    const auto F = field_make(2, 1, 1);
    const auto S = standard_space(*F, 2);
    const auto& amb = S.amb;
    const auto sub = fiber(F, make_space(amb, {amb.unit(0)}), {}).fern;
    const auto quot = fiber(F, make_space(amb, {amb.unit(1)}), {}).fern;
    const auto g = graft(sub, quot, {amb.unit(1)});
    ch.expect(g.tree.size() == 3, "graft has three components");
    ch.expect(are_isomorphic(g.tree, fiber(F, S, {0}).fern.tree).has_value(), "graft equals the fiber at t=0");
    return ch;
}

Check fern_drinfeld(Rng& rng)
{
    Check ch;
    for (int trial = 0; trial < 50; ++trial) {
        const unsigned q = trial % 2 ? 3 : 2;
        const unsigned n = 1 + trial % 3;
        const unsigned m = std::max(n, 1u + static_cast<unsigned>(trial / 3) % 3);
        const auto F = field_make(q, 1, m);
        const auto S = standard_space(*F, n);
        const auto lambda = extend_linear(*F, S, random_injective(*F, S, rng));
        std::vector<Elem> lat;
        for (const auto& [v, x] : lambda)
            lat.push_back(x);
        ch.expect(only_q_powers(lattice_poly(*F->big, lat), q), "lattice polynomial has q-power exponents");
        ch.expect(check_psi(*F, S, lambda, drinfeld_psi(*F, S, lambda)).ok(), "psi_t checks");
    }
    return ch;
}

Check universal_q_identities(Rng& rng)
{
    Check ch;
    for (unsigned q : {2u, 3u}) {
        const auto F = field_make(q, 1, 1);
        const Field& k = *F->small;
        const unsigned n = 3;
        VectorSpace amb(F->small, n);
        for (int trial = 0; trial < 20; ++trial) {
            const auto fl = complete_flags_of(amb, Subspace::whole(amb));
            const auto S = make_space(amb, adapted_basis(amb, fl[rng() % fl.size()]));
            for (unsigned kk = 1; kk <= n; ++kk) {
                const auto Vk = Subspace::span(amb, std::vector<Vec>(S.basis.begin(), S.basis.begin() + kk));
                const Vec v = Vk.elements()[rng() % Vk.elements().size()];
                const Vec w = Vk.elements()[rng() % Vk.elements().size()];
                const Elem xi = static_cast<Elem>(rng() % q);
                auto lhs = q_expand(k, q_poly(S, amb.add(amb.scale(xi, v), w), kk), n - 1);
                MPoly rhs = q_expand(k, q_poly(S, w, kk), n - 1);
                for (const auto& [e, c] : q_expand(k, q_poly(S, v, kk), n - 1)) {
                    Elem& s = rhs[e];
                    s = k.add(s, k.mul(xi, c));
                }
                std::erase_if(rhs, [](const auto& x) { return x.second == 0; });
                ch.expect(lhs == rhs, "Q is linear in v");
                for (unsigned mm = kk; mm <= n; ++mm) {
                    auto up = q_expand(k, q_poly(S, v, mm), n - 1);
                    auto down = mpoly_mul(k, q_expand(k, q_poly(S, v, kk), n - 1), mpoly_monomial(n - 1, kk, mm));
                    ch.expect(up == down, "Q^m = Q^k * prod T_j");
                }
            }
        }
    }
    return ch;
}

Check universal_fibers()
{
    Check ch;
    for (const auto& c : chart_configs)
        for_each_chart_point(c, [&](const ExtFieldPtr& F, const FernSpace& S, const std::vector<Elem>& t) {
            const auto X = fiber(F, S, t);
            ch.expect(validate_fern(X.fern.tree, S).fern.has_value(), "fiber validates " + cfg_str(c));
            ch.expect(X.fern.flag == X.stratum.flag, "fiber flag equals stratum " + cfg_str(c));
            const auto cp = classify(X.fern);
            ch.expect(bv_member(*F, cp) && uf_member(*F, cp, X.fern.flag), "classification lies in U_F");
            ch.expect(chart_coords(*F, cp, S) == t, "chart coordinates recover t " + cfg_str(c));
        });
    return ch;
}

Check universal_equivariance()
{
    Check ch;
    for (const auto& c : chart_configs)
        for_each_chart_point(c, [&](const ExtFieldPtr& F, const FernSpace& S, const std::vector<Elem>& t) {
            const auto X = fiber(F, S, t);
            auto sections = S.V.elements();
            sections.push_back(S.infinity());
            for (Vec u : sections)
                for (const auto& g : group_elements(S.amb, S.V))
                    ch.expect(check_equations(X, translated_section(X, u, g)), "translated section " + cfg_str(c));
        });
    return ch;
}

Check universal_round_trip(Rng& rng)
{
    Check ch;
    for (const auto& f : random_ferns(rng, 60))
        ch.expect(round_trip(f), "f = fiber(chart_coords(classify(f)))");
    return ch;
}

Check universal_contraction()
{
    Check ch;
    for (const auto& c : chart_configs) {
        if (c.n < 2)
            continue;
        for_each_chart_point(c, [&](const ExtFieldPtr& F, const FernSpace& S, const std::vector<Elem>& t) {
            const auto lower = make_space(S.amb, std::vector<Vec>(S.basis.begin(), S.basis.end() - 1));
            const auto X = fiber(F, S, t);
            const auto Y = fiber(F, lower, std::vector<Elem>(t.begin(), t.end() - 1));
            ch.expect(are_isomorphic(contract_fern(X.fern, lower.V).tree, Y.fern.tree).has_value(),
                      "contraction of a fiber is the fiber of the projection " + cfg_str(c));
        });
    }
    return ch;
}

Check universal_injectivity()
{
    Check ch;
    for (const auto& c : chart_configs) {
        const auto F = field_make(c.p, c.e, c.m);
        VectorSpace amb(F->small, c.n);
        for (const auto& fl : complete_flags_of(amb, Subspace::whole(amb))) {
            const auto S = make_space(amb, adapted_basis(amb, fl));
            std::vector<Fern> fs;
            for (const auto& t : chart_points(*F, S))
                fs.push_back(fiber(F, S, t).fern);
            for (std::size_t i = 0; i < fs.size(); ++i)
                for (std::size_t j = i + 1; j < fs.size(); ++j)
                    ch.expect(!are_isomorphic(fs[i].tree, fs[j].tree), "distinct chart points give distinct fibers");
        }
    }
    return ch;
}

Check census_agreement()
{
    Check ch;
    for (auto [n, q, m] : std::vector<std::array<unsigned, 3>>{{1, 2, 1}, {2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {3, 2, 1}, {1, 3, 2}, {2, 3, 2}})
        ch.expect(bv_count_strata(n, q, m).total == bv_count_bruteforce(n, q, m),
                  "strata sum equals oracle for n=" + std::to_string(n) + " q=" + std::to_string(q) +
                      " m=" + std::to_string(m));
    return ch;
}

Check census_omega()
{
    Check ch;
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned m = 1; m <= 4; ++m) {
                double size = 1;
                for (unsigned i = 0; i < n * m; ++i)
                    size *= q;
                if (size > 65536)
                    continue;
                ch.expect(omega_count(n, q, m) == omega_bruteforce(n, q, m), "omega closed form");
                if (n >= 2 && m == 1)
                    ch.expect(omega_count(n, q, m) == 0, "no injective map for m = 1");
            }
    for (auto [n, q, m] : std::vector<std::array<unsigned, 3>>{{2, 2, 2}, {3, 2, 3}, {2, 3, 2}}) {
        const auto r = bv_count_strata(n, q, m);
        for (const auto& s : r.strata)
            if (s.dims.size() == 2)
                ch.expect(s.count == omega_count(n, q, m), "trivial stratum is omega");
    }
    return ch;
}

}  // namespace

std::vector<PropertyResult> run_properties(std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<std::tuple<std::string, std::string, std::function<Check()>>> suite{
        {"gf", "field_axioms", [] { return gf_field_axioms(); }},
        {"gf", "subfield_embedding", [] { return gf_embedding(); }},
        {"gf", "subspace_and_flag_counts", [] { return gf_subspace_counts(); }},
        {"gf", "group_action", [] { return gf_group_action(); }},
        {"curve", "cross_ratio_invariance", [&] { return curve_cross_ratio(rng); }},
        {"curve", "random_trees_stable", [&] { return curve_random_trees(rng); }},
        {"curve", "isomorphism_reparametrized", [&] { return curve_iso_under_reparametrization(rng); }},
        {"curve", "contraction_order_independence", [&] { return curve_knudsen(rng); }},
        {"curve", "stabilize_then_contract", [&] { return curve_stabilize_contract(rng); }},
        {"fern", "pipelines_validate", [&] { return fern_validates(rng); }},
        {"fern", "perturbation_rejected", [&] { return fern_perturbation(rng); }},
        {"fern", "line_and_reciprocal_data", [&] { return fern_line_and_reciprocal(rng); }},
        {"fern", "contraction_flag", [&] { return fern_flag_compat(rng); }},
        {"fern", "graft_matches_fiber", [] { return fern_graft_example(); }},
        {"fern", "drinfeld_psi", [&] { return fern_drinfeld(rng); }},
        {"universal", "q_polynomial_identities", [&] { return universal_q_identities(rng); }},
        {"universal", "fibers_and_classification", [] { return universal_fibers(); }},
        {"universal", "equation_equivariance", [] { return universal_equivariance(); }},
        {"universal", "round_trip", [&] { return universal_round_trip(rng); }},
        {"universal", "contraction_compatibility", [] { return universal_contraction(); }},
        {"universal", "injectivity", [] { return universal_injectivity(); }},
        {"census", "strata_vs_oracle", [] { return census_agreement(); }},
        {"census", "omega", [] { return census_omega(); }},
    };
    std::vector<PropertyResult> out;
    for (auto& [mod, name, run] : suite) {
        PropertyResult r{mod, name, true, ""};
        try {
            const Check c = run();
            r.ok = c.ok;
            r.detail = c.ok ? std::to_string(c.cases) + " cases" : c.detail;
        } catch (const std::exception& ex) {
            r.ok = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace vfern
