#include "vfern/generate.hpp"
#include "vfern/io.hpp"

#include <doctest.h>

using namespace vfern;

TEST_CASE("fields and elements")
{
    const auto F = field_make(3, 2, 2);
    const json j = field_to_json(*F);
    CHECK(j.at("p") == 3);
    CHECK(j.at("e") == 2);
    CHECK(j.at("m") == 2);
    const auto G = field_from_json(j);
    CHECK(G->big->modulus() == F->big->modulus());
    CHECK(G->embed == F->embed);

    json other = j;
    other["modulus"] = json::array({2, 0, 0, 0, 1});
    CHECK_THROWS_AS(field_from_json(other), ParseError);
    json missing = j;
    missing.erase("p");
    CHECK_THROWS_AS(field_from_json(missing), ParseError);
    json neg = j;
    neg["m"] = -1;
    CHECK_THROWS_AS(field_from_json(neg), ParseError);

    const Field& K = *F->big;
    for (Elem a = 0; a < K.order(); ++a)
        CHECK(elem_from_json(K, elem_to_json(K, a)) == a);
    CHECK(elem_to_json(K, 5) == json::array({2, 1, 0, 0}));
    CHECK_THROWS_AS(elem_from_json(K, json::array({3})), ParseError);
    CHECK_THROWS_AS(elem_from_json(K, json::array({0, 0, 0, 0, 1})), ParseError);
    CHECK_THROWS_AS(elem_from_json(K, json("x")), ParseError);

    CHECK(point_from_json(K, point_to_json(K, infinity_point())) == infinity_point());
    CHECK(point_from_json(K, json::parse("[[2, 0, 0, 0], [2]]")) == affine(1));
    CHECK_THROWS_AS(point_from_json(K, json::parse("[[0], [0]]")), ParseError);
    CHECK_THROWS_AS(point_from_json(K, json::parse("[[0]]")), ParseError);

    VectorSpace V(F->small, 3);
    for (Vec v = 0; v < V.size(); v += 37)
        CHECK(vec_from_json(V, vec_to_json(V, v)) == v);
    CHECK_THROWS_AS(vec_from_json(V, json::parse("[[1]]")), ParseError);
}

TEST_CASE("trees round trip exactly")
{
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto F = field_make(trial % 2 ? 3 : 2, 1, 1 + trial % 3);
        MarkedTree t = random_tree(F, 3 + trial % 6, rng);
        if (trial % 4 == 0 && t.size() > 1) {
            const auto c = contract(t, {0, 1, 2});
            t = c.tree;
        }
        t.ids.assign(t.ids.size(), 0);
        for (int i = 0; i < t.size(); ++i)
            t.ids[i] = 10 * i + 3;
        const json j = tree_to_json(t);
        const MarkedTree u = tree_from_json(j);
        CHECK(u == t);
        CHECK(u.extra == t.extra);
        CHECK(tree_to_json(u).dump() == j.dump());
        CHECK(tree_from_json(json::parse(j.dump())) == t);
    }
}

TEST_CASE("ferns round trip exactly")
{
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const auto F = field_make(trial % 2 ? 3 : 2, 1, 1 + trial % 2);
        VectorSpace amb(F->small, 1 + trial % 3);
        const auto f = random_fern(F, amb, Subspace::whole(amb), rng);
        const json j = fern_to_json(f);
        const Fern g = fern_from_json(json::parse(j.dump()));
        CHECK(g.tree == f.tree);
        CHECK(g.space.basis == f.space.basis);
        CHECK(g.flag == f.flag);
        CHECK(g.chain == f.chain);
        CHECK(fern_to_json(g).dump() == j.dump());
    }
}

TEST_CASE("malformed trees and ferns")
{
    const auto F = field_make(2, 1, 1);
    const auto f = fiber(F, standard_space(*F, 2), {0}).fern;
    const json good = fern_to_json(f);
    REQUIRE_NOTHROW(fern_from_json(good));

    json no_nodes = good;
    no_nodes.erase("nodes");
    CHECK_THROWS_AS(fern_from_json(no_nodes), ParseError);

    json bad_id = good;
    bad_id["nodes"][0][0][0] = 99;
    CHECK_THROWS_AS(fern_from_json(bad_id), ParseError);

    json dup = good;
    dup["components"][1]["id"] = dup["components"][0]["id"];
    CHECK_THROWS_AS(fern_from_json(dup), ParseError);

    json wrong_special = good;
    wrong_special["components"][0]["special"] = json::object();
    CHECK_THROWS_AS(fern_from_json(wrong_special), ParseError);

    json wrong_q = good;
    wrong_q["V"]["q"] = 3;
    CHECK_THROWS_AS(fern_from_json(wrong_q), ParseError);

    json empty = good;
    empty["components"] = json::array();
    CHECK_THROWS_AS(fern_from_json(empty), ParseError);

    json slot = good;
    slot["marking"]["0"] = json::array({0});
    CHECK_THROWS_AS(fern_from_json(slot), ParseError);

    CHECK_THROWS_AS(tree_from_json(json::array()), ParseError);
}

TEST_CASE("class points and values")
{
    const auto F = field_make(2, 1, 2);
    const auto S = standard_space(*F, 2);
    const auto cp = classify(fiber(F, S, {2}).fern);
    const json j = class_point_to_json(S.amb, *F->big, cp);
    CHECK(j.size() == 4);
    CHECK(j.contains("10.01"));
    const json v = values_to_json(S, *F->big, line_data(fiber(F, S, {2}).fern).values);
    CHECK(v.size() == 4);
}
