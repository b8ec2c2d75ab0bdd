#include "vfern/curve.hpp"
#include "vfern/generate.hpp"

#include <doctest.h>

using namespace vfern;

namespace {

MarkedTree line(const ExtFieldPtr& F, const std::map<int, ProjPoint>& marks)
{
    MarkedTree t;
    t.field = F;
    t.ids = {0};
    for (const auto& [i, p] : marks)
        t.marks[i] = {0, p};
    return t;
}

// Two components: marks 1,2 on the first, 3,4 on the second.
MarkedTree two_lines(const ExtFieldPtr& F)
{
    MarkedTree t;
    t.field = F;
    t.ids = {0, 1};
    t.marks[1] = {0, affine(0)};
    t.marks[2] = {0, affine(1)};
    t.marks[3] = {1, affine(0)};
    t.marks[4] = {1, affine(1)};
    t.nodes.push_back({{0, infinity_point()}, {1, infinity_point()}});
    return t;
}

// Marks 1,2,3 and a node on the first component, 4,5 on the second.
MarkedTree contraction_example(const ExtFieldPtr& F)
{
    MarkedTree t;
    t.field = F;
    t.ids = {0, 1};
    t.marks[1] = {0, affine(0)};
    t.marks[2] = {0, affine(1)};
    t.marks[3] = {0, infinity_point()};
    t.marks[4] = {1, affine(0)};
    t.marks[5] = {1, affine(1)};
    t.nodes.push_back({{0, affine(2)}, {1, infinity_point()}});
    return t;
}

ProjPoint pt(const Field& K, Elem x)
{
    return x == K.order() ? infinity_point() : affine(x);
}

}  // namespace

TEST_CASE("projective points and Mobius maps")
{
    const auto F = field_make(2, 1, 3);
    const Field& K = *F->big;
    CHECK(proj(K, 3, 3) == affine(1));
    CHECK(proj(K, 5, 0) == infinity_point());
    CHECK_THROWS(proj(K, 0, 0));

    const ProjPoint a = affine(3), b = affine(6), c = infinity_point();
    const Mobius M = to_standard(K, a, b, c);
    CHECK(apply(K, M, a) == affine(0));
    CHECK(apply(K, M, b) == affine(1));
    CHECK(apply(K, M, c) == infinity_point());
    CHECK(same_map(K, compose(K, M, inverse(K, M)), Mobius{}));

    const ProjPoint src[3] = {affine(1), affine(2), affine(4)};
    const ProjPoint dst[3] = {infinity_point(), affine(0), affine(7)};
    const Mobius N = three_point(K, src, dst);
    for (int i = 0; i < 3; ++i)
        CHECK(apply(K, N, src[i]) == dst[i]);

    const Mobius Z = zero_infinity(K, affine(5), affine(2));
    CHECK(apply(K, Z, affine(5)) == affine(0));
    CHECK(apply(K, Z, affine(2)) == infinity_point());
}

TEST_CASE("cross ratio")
{
    const auto F = field_make(3, 1, 2);
    const Field& K = *F->big;
    for (Elem x = 0; x < K.order(); ++x)
        CHECK(cross_ratio(K, affine(0), affine(1), infinity_point(), affine(x)) == x);
    CHECK(cross_ratio(K, affine(0), affine(1), infinity_point(), affine(1)) == 1);
    CHECK_THROWS(cross_ratio(K, affine(0), affine(0), infinity_point(), affine(2)));

    std::mt19937_64 rng(0);
    std::uniform_int_distribution<Elem> any(0, K.order());
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ProjPoint> p;
        while (p.size() < 4) {
            auto z = pt(K, any(rng));
            if (std::find(p.begin(), p.end(), z) == p.end())
                p.push_back(z);
        }
        Mobius M{any(rng) % K.order(), any(rng) % K.order(), any(rng) % K.order(), any(rng) % K.order()};
        if (K.mul(M.a, M.d) == K.mul(M.b, M.c))
            continue;
        CHECK(cross_ratio(K, p[0], p[1], p[2], p[3]) ==
              cross_ratio(K, apply(K, M, p[0]), apply(K, M, p[1]), apply(K, M, p[2]), apply(K, M, p[3])));
    }
}

TEST_CASE("validate reports stability violations")
{
    const auto F = field_make(2, 1, 2);
    CHECK(validate(line(F, {{1, affine(0)}, {2, affine(1)}, {3, infinity_point()}})).stable);

    auto clash = validate(line(F, {{1, affine(0)}, {2, affine(0)}, {3, infinity_point()}}));
    CHECK_FALSE(clash.stable);
    REQUIRE_FALSE(clash.violations.empty());
    CHECK(clash.violations.front().find("coincide") != std::string::npos);

    MarkedTree t = two_lines(F);
    CHECK(validate(t).stable);
    t.marks.erase(4);
    CHECK_FALSE(validate(t).stable);

    MarkedTree cyc = two_lines(F);
    cyc.nodes.push_back({{0, affine(2)}, {1, affine(2)}});
    CHECK_FALSE(validate(cyc).stable);
}

TEST_CASE("dual graphs")
{
    const auto F = field_make(2, 1, 2);
    const auto smooth = dual_graph(line(F, {{1, affine(0)}, {2, affine(1)}, {3, infinity_point()}, {4, affine(2)}}));
    CHECK(smooth.vertices == 1);
    CHECK(smooth.edges.empty());
    CHECK(smooth.half_edges.size() == 4);

    const auto g = dual_graph(two_lines(F));
    CHECK(g.vertices == 2);
    CHECK(g.edges.size() == 1);
    CHECK(g.degrees() == std::vector<int>{3, 3});

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = random_tree(F, 3 + trial % 6, rng);
        const auto d = dual_graph(t);
        CHECK(static_cast<int>(d.edges.size()) == d.vertices - 1);
        // connected vertex sets grown along edges have at least three external edges
        std::set<int> E{0};
        while (static_cast<int>(E.size()) < d.vertices) {
            CHECK(d.external_edges(E) >= 3);
            for (auto [a, b] : d.edges)
                if (E.count(a) != E.count(b)) {
                    E.insert(a);
                    E.insert(b);
                    break;
                }
        }
    }
}

TEST_CASE("contraction")
{
    const auto F = field_make(3, 1, 1);
    const auto t = contraction_example(F);
    REQUIRE(validate(t).stable);

    const auto c = contract(t, {1, 2, 3, 5});
    CHECK(c.tree.size() == 1);
    CHECK(c.tree.nodes.empty());
    CHECK(c.tree.marks.at(5) == Slot{0, affine(2)});
    CHECK(c.tree.extra.at(4) == Slot{0, affine(2)});
    CHECK(c.image[1].collapsed);
    CHECK(c.image[1].point == affine(2));
    CHECK_FALSE(c.image[0].collapsed);

    const auto same = contract(t, {1, 2, 3, 4, 5});
    CHECK(same.tree == t);

    const auto twice = contract(c.tree, {1, 2, 3, 5});
    CHECK(are_isomorphic(twice.tree, c.tree));

    CHECK_THROWS_AS(contract(t, {1, 2}), std::invalid_argument);
}

TEST_CASE("contraction is independent of the collapse order")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto F = field_make(trial % 2 ? 2 : 3, 1, 1 + trial % 2);
        const auto t = random_tree(F, 5 + trial % 4, rng);
        std::set<int> keep;
        for (const auto& [i, s] : t.marks)
            if (keep.size() < 3 || rng() % 2)
                keep.insert(i);
        const auto base = contract(t, keep);
        for (int k = 0; k < 3; ++k) {
            Rng order(rng());
            CHECK(are_isomorphic(contract(t, keep, &order).tree, base.tree));
        }
    }
}

TEST_CASE("stabilization")
{
    const auto F = field_make(2, 1, 2);
    const auto t = line(F, {{1, affine(0)}, {2, affine(1)}, {3, infinity_point()}});

    StabilizeAt smooth;
    smooth.slot = {0, affine(2)};
    const auto s1 = stabilize(t, 4, smooth);
    CHECK(s1.size() == 1);
    CHECK(s1.marks.at(4) == Slot{0, affine(2)});

    StabilizeAt atmark;
    atmark.kind = StabilizeAt::AtMark;
    atmark.mark = 2;
    const auto s2 = stabilize(t, 4, atmark);
    CHECK(s2.size() == 2);
    CHECK(validate(s2).stable);
    CHECK(s2.marks.at(2) == Slot{1, affine(0)});
    CHECK(s2.marks.at(4) == Slot{1, affine(1)});
    REQUIRE(s2.nodes.size() == 1);
    CHECK(s2.nodes[0].a == Slot{0, affine(1)});
    CHECK(s2.nodes[0].b == Slot{1, infinity_point()});

    StabilizeAt atnode;
    atnode.kind = StabilizeAt::AtNode;
    atnode.node = 0;
    const auto s3 = stabilize(two_lines(F), 5, atnode);
    CHECK(s3.size() == 3);
    CHECK(validate(s3).stable);
    CHECK(s3.marks.at(5) == Slot{2, affine(1)});

    StabilizeAt bad;
    bad.slot = {0, affine(0)};
    CHECK_THROWS_AS(stabilize(t, 4, bad), std::invalid_argument);
    bad.slot = {3, affine(2)};
    CHECK_THROWS_AS(stabilize(t, 4, bad), std::invalid_argument);
    CHECK_THROWS_AS(stabilize(t, 2, smooth), std::invalid_argument);
}

TEST_CASE("stabilize then contract is the identity")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto F = field_make(trial % 2 ? 2 : 3, 1, 1 + trial % 3);
        const int n = 3 + trial % 5;
        const auto t = random_tree(F, n, rng);
        std::set<int> keep;
        for (int i = 0; i < n; ++i)
            keep.insert(i);
        StabilizeAt where;
        if (!t.nodes.empty() && rng() % 2) {
            where.kind = StabilizeAt::AtNode;
            where.node = static_cast<int>(rng() % t.nodes.size());
        } else {
            where.kind = StabilizeAt::AtMark;
            where.mark = static_cast<int>(rng() % n);
        }
        const auto s = stabilize(t, n, where);
        CHECK(validate(s).stable);
        CHECK(are_isomorphic(contract(s, keep).tree, t));
    }
}

TEST_CASE("contraction to a component")
{
    const auto F = field_make(2, 1, 2);
    const auto smooth = line(F, {{1, affine(0)}, {2, affine(1)}, {3, infinity_point()}, {4, affine(2)}});
    CHECK(contract_to_component(smooth, 1).tree.marks == smooth.marks);

    const auto c = contract_to_component(two_lines(F), 1);
    CHECK(c.tree.size() == 1);
    CHECK(c.tree.marks.at(3) == Slot{0, infinity_point()});
    CHECK(c.tree.marks.at(4) == Slot{0, infinity_point()});
    CHECK(c.tree.marks.at(1) == Slot{0, affine(0)});
    CHECK_THROWS_AS(contract_to_component(two_lines(F), 9), std::invalid_argument);

    // agrees with contracting to three marks whose images stay distinct
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 60; ++trial) {
        const auto t = random_tree(F, 4 + trial % 5, rng);
        const int i = static_cast<int>(rng() % t.marks.size());
        const auto cc = contract_to_component(t, i);
        const Field& K = t.K();
        for (const auto& [j, sj] : cc.tree.marks)
            for (const auto& [k, sk] : cc.tree.marks) {
                if (j >= k || j == i || k == i || sj.pos == sk.pos || sj.pos == cc.tree.marks.at(i).pos ||
                    sk.pos == cc.tree.marks.at(i).pos)
                    continue;
                const auto small = contract(t, {i, j, k}).tree;
                CHECK(cross_ratio(K, sj.pos, sk.pos, cc.tree.marks.at(i).pos, sj.pos) ==
                      cross_ratio(K, small.marks.at(j).pos, small.marks.at(k).pos, small.marks.at(i).pos,
                                  small.marks.at(j).pos));
            }
    }
}

TEST_CASE("isomorphism testing")
{
    const auto F = field_make(3, 1, 2);
    const Field& K = *F->big;
    const auto t = contraction_example(F);

    // relabel ids and move coordinates by Mobius maps
    MarkedTree u = t;
    u.ids = {7, 3};
    const Mobius M{2, 1, 1, 0};
    const Mobius N{1, 4, 0, 1};
    for (auto& [i, s] : u.marks)
        s.pos = apply(K, s.comp == 0 ? M : N, s.pos);
    for (auto& nd : u.nodes) {
        nd.a.pos = apply(K, nd.a.comp == 0 ? M : N, nd.a.pos);
        nd.b.pos = apply(K, nd.b.comp == 0 ? M : N, nd.b.pos);
    }
    auto iso = are_isomorphic(t, u);
    REQUIRE(iso);
    CHECK(iso->comp_map == std::vector<int>{0, 1});
    CHECK(same_map(K, iso->maps[0], M));
    CHECK(same_map(K, iso->maps[1], N));

    MarkedTree w = t;
    w.marks[2].pos = affine(5);
    CHECK_FALSE(are_isomorphic(t, w));

    MarkedTree x = t;
    x.marks.erase(5);
    x.marks[6] = t.marks.at(5);
    CHECK_THROWS_AS(are_isomorphic(t, x), std::invalid_argument);
}

TEST_CASE("remark and toward")
{
    const auto F = field_make(2, 1, 2);
    const auto t = two_lines(F);
    const auto r = remark(t, {{10, 1}, {20, 2}, {30, 3}, {40, 4}});
    CHECK(r.marks.at(30) == t.marks.at(3));
    const auto tw = toward(t, 0);
    CHECK_FALSE(tw[0]);
    CHECK(*tw[1] == infinity_point());
    CHECK(tree_path(t, 0, 1) == std::vector<int>{0, 1});
}
