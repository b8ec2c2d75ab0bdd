#include "vfern/gf.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace vfern;

namespace {

// Polynomial arithmetic over F_p on coefficient lists, independent of Field.
using Poly = std::vector<unsigned>;

Poly trim(Poly a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
    return a;
}

Poly pmul(const Poly& a, const Poly& b, unsigned p)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return trim(r);
}

Poly pmod(Poly a, const Poly& m, unsigned p)
{
    a = trim(a);
    unsigned lead_inv = 1;
    while (lead_inv * m.back() % p != 1)
        ++lead_inv;
    while (a.size() >= m.size()) {
        const unsigned c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
        a = trim(a);
    }
    return a;
}

std::vector<Poly> monics(unsigned p, unsigned d)
{
    std::vector<Poly> out;
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i)
        count *= p;
    for (unsigned code = 0; code < count; ++code) {
        Poly f(d + 1, 0);
        unsigned x = code;
        for (unsigned i = 0; i < d; ++i) {
            f[i] = x % p;
            x /= p;
        }
        f[d] = 1;
        out.push_back(f);
    }
    return out;
}

// Reducible monics of degree d are products of two monics of positive degree.
std::vector<Poly> irreducibles_oracle(unsigned p, unsigned d)
{
    std::set<Poly> reducible;
    for (unsigned a = 1; a < d; ++a)
        for (const auto& f : monics(p, a))
            for (const auto& g : monics(p, d - a))
                reducible.insert(pmul(f, g, p));
    std::vector<Poly> out;
    for (const auto& f : monics(p, d))
        if (!reducible.count(f))
            out.push_back(f);
    return out;
}

Poly elem_poly(const Field& K, Elem a) { return trim(K.coeffs(a)); }

std::uint64_t span_count_oracle(const VectorSpace& V, unsigned d)
{
    // distinct spans of d-tuples, counted through their member sets
    std::set<std::vector<Vec>> seen;
    std::vector<Vec> tuple(d, 0);
    while (true) {
        auto S = Subspace::span(V, tuple);
        if (S.dim() == d) {
            auto e = S.elements();
            std::sort(e.begin(), e.end());
            seen.insert(e);
        }
        std::size_t i = 0;
        while (i < d && tuple[i] == V.size() - 1)
            tuple[i++] = 0;
        if (i == d)
            break;
        ++tuple[i];
    }
    return d == 0 ? 1 : seen.size();
}

}  // namespace

TEST_CASE("canonical modulus is the smallest irreducible monic")
{
    for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 2}}) {
        auto irr = irreducibles_oracle(p, d);
        REQUIRE_FALSE(irr.empty());
        auto key = [&](const Poly& f) {
            unsigned v = 0;
            for (std::size_t i = f.size() - 1; i-- > 0;)
                v = v * p + f[i];
            return v;
        };
        auto best = *std::min_element(irr.begin(), irr.end(), [&](const Poly& a, const Poly& b) { return key(a) < key(b); });
        CHECK(canonical_modulus(p, d) == best);
        for (const auto& f : irr)
            CHECK(is_irreducible(f, p));
    }
    // frozen from the oracle
    CHECK(canonical_modulus(2, 2) == PrimePoly{1, 1, 1});
    CHECK(canonical_modulus(2, 3) == PrimePoly{1, 1, 0, 1});
    CHECK(canonical_modulus(2, 4) == PrimePoly{1, 1, 0, 0, 1});
    CHECK(canonical_modulus(3, 2) == PrimePoly{1, 0, 1});
    CHECK(canonical_modulus(3, 3) == PrimePoly{1, 2, 0, 1});
}

TEST_CASE("field multiplication matches polynomial arithmetic")
{
    for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
        Field K(p, canonical_modulus(p, d));
        const Poly mod(K.modulus().begin(), K.modulus().end());
        for (Elem a = 0; a < K.order(); ++a)
            for (Elem b = 0; b < K.order(); ++b) {
                CHECK(elem_poly(K, K.mul(a, b)) == pmod(pmul(elem_poly(K, a), elem_poly(K, b), p), mod, p));
                Poly s = K.coeffs(a);
                auto cb = K.coeffs(b);
                for (std::size_t i = 0; i < s.size(); ++i)
                    s[i] = (s[i] + cb[i]) % p;
                CHECK(K.coeffs(K.add(a, b)) == s);
            }
    }
}

TEST_CASE("field axioms on random triples")
{
    std::mt19937_64 rng(0);
    for (auto [p, e, m] : std::vector<std::array<unsigned, 3>>{{2, 1, 1}, {2, 2, 3}, {3, 1, 3}, {5, 1, 2}, {2, 4, 2}, {7, 1, 1}}) {
        const auto F = field_make(p, e, m);
        const Field& K = *F->big;
        std::uniform_int_distribution<Elem> any(0, K.order() - 1);
        for (int i = 0; i < 1000; ++i) {
            const Elem a = any(rng), b = any(rng), c = any(rng);
            CHECK(K.add(K.add(a, b), c) == K.add(a, K.add(b, c)));
            CHECK(K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c)));
            CHECK(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)));
            CHECK(K.add(a, K.neg(a)) == 0);
            if (a)
                CHECK(K.mul(a, K.inv(a)) == 1);
        }
    }
}

TEST_CASE("field_make examples and errors")
{
    auto F2 = field_make(2, 1, 1);
    CHECK(F2->big->order() == 2);
    CHECK(F2->big->degree() == 1);

    auto F9 = field_make(3, 1, 2);
    for (Elem a = 0; a < 9; ++a)
        CHECK(F9->big->pow(a, 9) == a);

    auto F4 = field_make(2, 2, 1);
    CHECK(F4->big->modulus() == PrimePoly{1, 1, 1});
    CHECK(F4->q() == 4);

    CHECK_THROWS_AS(field_make(4, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(field_make(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(field_make(2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Field(2, PrimePoly{1, 0, 1}), std::invalid_argument);
}

TEST_CASE("Frobenius fixes exactly the embedded subfield")
{
    for (auto [p, e, m] : std::vector<std::array<unsigned, 3>>{{2, 1, 3}, {2, 2, 2}, {3, 1, 2}, {3, 2, 2}, {2, 2, 3}}) {
        const auto F = field_make(p, e, m);
        const Field& K = *F->big;
        std::set<Elem> fixed, image;
        for (Elem a = 0; a < K.order(); ++a)
            if (K.pow(a, F->q()) == a)
                fixed.insert(a);
        for (Elem a = 0; a < F->q(); ++a)
            image.insert(F->lift(a));
        CHECK(fixed == image);
        const Field& k = *F->small;
        for (Elem a = 0; a < k.order(); ++a)
            for (Elem b = 0; b < k.order(); ++b) {
                CHECK(F->lift(k.add(a, b)) == K.add(F->lift(a), F->lift(b)));
                CHECK(F->lift(k.mul(a, b)) == K.mul(F->lift(a), F->lift(b)));
            }
    }
}

TEST_CASE("split_prime_power")
{
    CHECK(split_prime_power(2) == std::pair<unsigned, unsigned>{2, 1});
    CHECK(split_prime_power(8) == std::pair<unsigned, unsigned>{2, 3});
    CHECK(split_prime_power(9) == std::pair<unsigned, unsigned>{3, 2});
    CHECK_THROWS_AS(split_prime_power(6), std::invalid_argument);
    CHECK_THROWS_AS(split_prime_power(1), std::invalid_argument);
}

TEST_CASE("vector packing")
{
    const auto F = field_make(3, 1, 1);
    VectorSpace V(F->small, 3);
    CHECK(V.size() == 27);
    CHECK(V.infinity() == 27);
    const Vec v = V.make({1, 2, 0});
    CHECK(v == 1 + 2 * 3);
    CHECK(V.coords(v) == std::vector<Elem>{1, 2, 0});
    CHECK(V.unit(2) == 9);
    CHECK(V.add(v, V.neg(v)) == 0);
    CHECK(V.scale(2, v) == V.make({2, 1, 0}));
    CHECK(V.truncate_le(V.make({1, 2, 1}), 2) == V.make({1, 2, 0}));
    CHECK(V.truncate_gt(V.make({1, 2, 1}), 2) == V.make({0, 0, 1}));
    CHECK(V.str(v) == "(1,2,0)");
}

TEST_CASE("subspaces are in reduced echelon form")
{
    const auto F = field_make(2, 1, 1);
    VectorSpace V(F->small, 3);
    const auto W = Subspace::span(V, {V.make({1, 1, 0}), V.make({1, 0, 1})});
    CHECK(W.dim() == 2);
    CHECK(W.key(V) == "101.011");
    CHECK(W == Subspace::span(V, {V.make({0, 1, 1}), V.make({1, 1, 0})}));
    CHECK(Subspace::zero(V).key(V) == "0");
    for (Vec w : W.elements()) {
        const auto c = W.coords_of(w);
        Vec back = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            back = V.add(back, V.scale(c[i], W.basis()[i]));
        CHECK(back == w);
    }
    CHECK(intersect(V, W, Subspace::span(V, {V.unit(0), V.unit(1)})).dim() == 1);
    CHECK(sum(V, W, Subspace::span(V, {V.unit(0)})).dim() == 3);
}

TEST_CASE("subspace counts match an enumeration oracle")
{
    for (unsigned q : {2u, 3u})
        for (unsigned n = 1; n <= 3; ++n) {
            const auto F = field_make(q, 1, 1);
            VectorSpace V(F->small, n);
            for (unsigned d = 0; d <= n; ++d) {
                const auto oracle = span_count_oracle(V, d);
                CHECK(subspaces(V, d).size() == oracle);
                CHECK(gaussian_binomial(n, d, q) == oracle);
            }
        }
    const auto F = field_make(2, 1, 1);
    CHECK(subspaces(VectorSpace(F->small, 2), 1).size() == 3);
    CHECK(subspaces(VectorSpace(F->small, 3), 2).size() == 7);
    CHECK(subspaces(VectorSpace(F->small, 3), 0).size() == 1);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
}

TEST_CASE("flag enumeration")
{
    const auto F = field_make(2, 1, 1);
    CHECK(flags(VectorSpace(F->small, 1)).size() == 1);
    CHECK(flags(VectorSpace(F->small, 2)).size() == 4);
    const VectorSpace V3(F->small, 3);
    const auto all = flags(V3);
    CHECK(all.size() == 36);
    int complete = 0;
    for (const auto& f : all) {
        CHECK(f.front().dim() == 0);
        CHECK(f.back().dim() == 3);
        for (std::size_t i = 1; i < f.size(); ++i)
            CHECK((f[i - 1].subset_of(f[i]) && f[i - 1] != f[i]));
        complete += is_complete(f);
    }
    CHECK(complete == 21);
    CHECK(complete_flags_of(V3, Subspace::whole(V3)).size() == 21);

    CHECK(flag_count(1, 2) == 1);
    CHECK(flag_count(2, 2) == 4);
    CHECK(flag_count(3, 2) == 36);
    CHECK(flag_count(2, 3) == 5);
    for (unsigned q : {2u, 3u})
        for (unsigned n = 1; n <= 3; ++n) {
            const auto [p, e] = split_prime_power(q);
            const VectorSpace V(field_make(p, e, 1)->small, n);
            std::size_t visited = 0;
            visit_flags(V, Subspace::whole(V), [&](const std::vector<Subspace>&, const std::vector<std::size_t>&) {
                ++visited;
            });
            CHECK(visited == flags(V).size());
            CHECK(visited == flag_count(n, q));
        }

    for (const auto& f : complete_flags_of(V3, Subspace::whole(V3))) {
        const auto b = adapted_basis(V3, f);
        CHECK(flag_from_basis(V3, b) == f);
    }
    const auto f = flag_from_basis(V3, {V3.unit(0), V3.unit(1), V3.unit(2)});
    CHECK(flag_key(V3, f) == "0<100<100.010<100.010.001");
    const auto cut = flag_intersect(V3, f, Subspace::span(V3, {V3.unit(1), V3.unit(2)}));
    CHECK(flag_key(V3, cut) == "0<010<010.001");
}

TEST_CASE("the group V x| F_q^* and its action")
{
    const auto F = field_make(3, 1, 1);
    VectorSpace V(F->small, 2);
    const auto G = group_elements(V, Subspace::whole(V));
    CHECK(G.size() == 9 * 2);
    const GroupElement id{0, 1};
    for (const auto& a : G) {
        CHECK(group_mul(V, id, a) == a);
        CHECK(group_mul(V, a, group_inv(V, a)) == id);
        const Elem r = F->small->inv(a.xi);
        CHECK(group_inv(V, a) == GroupElement{V.neg(V.scale(r, a.v)), r});
        CHECK(group_act(V, a, V.infinity()) == V.infinity());
        for (const auto& b : G) {
            for (const auto& c : G)
                CHECK(group_mul(V, group_mul(V, a, b), c) == group_mul(V, a, group_mul(V, b, c)));
            for (Vec w = 0; w <= V.size(); ++w)
                CHECK(group_act(V, group_mul(V, a, b), w) == group_act(V, a, group_act(V, b, w)));
        }
    }
    CHECK_THROWS_AS(group_make(V, 1, 0), std::invalid_argument);
    CHECK(group_act(V, group_make(V, V.unit(0), 2), V.unit(1)) == V.make({1, 2}));
}
