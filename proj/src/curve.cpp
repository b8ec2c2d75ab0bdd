#include "vfern/curve.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace vfern {

ProjPoint proj(const Field& K, Elem x, Elem y)
{
    if (y != 0)
        return {K.div(x, y), 1};
    if (x != 0)
        return {1, 0};
    throw std::domain_error("(0:0) is not a projective point");
}

ProjPoint apply(const Field& K, const Mobius& M, const ProjPoint& z)
{
    return proj(K, K.add(K.mul(M.a, z.x), K.mul(M.b, z.y)), K.add(K.mul(M.c, z.x), K.mul(M.d, z.y)));
}

Mobius compose(const Field& K, const Mobius& M, const Mobius& N)
{
    return {K.add(K.mul(M.a, N.a), K.mul(M.b, N.c)), K.add(K.mul(M.a, N.b), K.mul(M.b, N.d)),
            K.add(K.mul(M.c, N.a), K.mul(M.d, N.c)), K.add(K.mul(M.c, N.b), K.mul(M.d, N.d))};
}

Mobius inverse(const Field& K, const Mobius& M) { return {M.d, K.neg(M.b), K.neg(M.c), M.a}; }

namespace {

Elem det(const Field& K, const ProjPoint& u, const ProjPoint& v)
{
    return K.sub(K.mul(u.x, v.y), K.mul(u.y, v.x));
}

}  // namespace

Mobius to_standard(const Field& K, const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& pinf)
{
    const Elem s = det(K, p1, pinf);
    const Elem r = det(K, p1, p0);
    if (s == 0 || r == 0 || det(K, p0, pinf) == 0)
        throw std::domain_error("cross ratio needs three distinct points");
    return {K.mul(s, p0.y), K.neg(K.mul(s, p0.x)), K.mul(r, pinf.y), K.neg(K.mul(r, pinf.x))};
}

Mobius three_point(const Field& K, const ProjPoint src[3], const ProjPoint dst[3])
{
    const Mobius A = to_standard(K, src[0], src[1], src[2]);
    const Mobius B = to_standard(K, dst[0], dst[1], dst[2]);
    return compose(K, inverse(K, B), A);
}

Mobius zero_infinity(const Field& K, const ProjPoint& a, const ProjPoint& b)
{
    if (a == b)
        throw std::domain_error("zero and infinity must differ");
    return {a.y, K.neg(a.x), b.y, K.neg(b.x)};
}

bool same_map(const Field& K, const Mobius& M, const Mobius& N)
{
    for (ProjPoint z : {affine(0), affine(1), infinity_point()})
        if (apply(K, M, z) != apply(K, N, z))
            return false;
    return true;
}

Elem cross_ratio(const Field& K, const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                 const ProjPoint& d)
{
    const ProjPoint r = apply(K, to_standard(K, a, b, c), d);
    if (r.is_infinity())
        throw std::domain_error("cross ratio is infinite");
    return r.x;
}

// ---------------------------------------------------------------------------

bool MarkedTree::operator==(const MarkedTree& o) const
{
    const bool same_field = field == o.field ||
                            (field && o.field && field->p == o.field->p && field->e == o.field->e &&
                             field->m == o.field->m);
    return same_field && ids == o.ids && nodes == o.nodes && marks == o.marks && extra == o.extra;
}

void normalize_nodes(MarkedTree& t)
{
    for (auto& nd : t.nodes)
        if (nd.b < nd.a)
            std::swap(nd.a, nd.b);
    std::sort(t.nodes.begin(), t.nodes.end(), [](const Node& x, const Node& y) {
        if (!(x.a == y.a))
            return x.a < y.a;
        return x.b < y.b;
    });
}

namespace {

using Adjacency = std::vector<std::vector<std::pair<int, int>>>;  // (neighbor, node)

Adjacency adjacency(const MarkedTree& t)
{
    Adjacency adj(t.size());
    for (int k = 0; k < static_cast<int>(t.nodes.size()); ++k) {
        const auto& nd = t.nodes[k];
        adj[nd.a.comp].push_back({nd.b.comp, k});
        adj[nd.b.comp].push_back({nd.a.comp, k});
    }
    return adj;
}

ProjPoint node_pos_on(const Node& nd, int comp) { return nd.a.comp == comp ? nd.a.pos : nd.b.pos; }

bool is_tree(const MarkedTree& t)
{
    if (t.size() == 0 || static_cast<int>(t.nodes.size()) != t.size() - 1)
        return false;
    auto adj = adjacency(t);
    std::vector<bool> seen(t.size(), false);
    std::deque<int> todo{0};
    seen[0] = true;
    int count = 1;
    while (!todo.empty()) {
        int c = todo.front();
        todo.pop_front();
        for (auto [d, k] : adj[c])
            if (!seen[d]) {
                seen[d] = true;
                ++count;
                todo.push_back(d);
            }
    }
    return count == t.size();
}

std::vector<int> bfs_distance(const Adjacency& adj, int src)
{
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> todo{src};
    dist[src] = 0;
    while (!todo.empty()) {
        int c = todo.front();
        todo.pop_front();
        for (auto [d, k] : adj[c])
            if (dist[d] < 0) {
                dist[d] = dist[c] + 1;
                todo.push_back(d);
            }
    }
    return dist;
}

}  // namespace

StabilityReport validate(const MarkedTree& t)
{
    StabilityReport r;
    auto fail = [&](std::string s) {
        r.stable = false;
        r.violations.push_back(std::move(s));
    };
    const int C = t.size();
    for (const auto& nd : t.nodes)
        if (nd.a.comp < 0 || nd.a.comp >= C || nd.b.comp < 0 || nd.b.comp >= C) {
            fail("node references a missing component");
            return r;
        }
    for (const auto& [i, s] : t.marks)
        if (s.comp < 0 || s.comp >= C) {
            fail("mark " + std::to_string(i) + " references a missing component");
            return r;
        }
    for (const auto& nd : t.nodes)
        if (nd.a.comp == nd.b.comp)
            fail("node joins component " + std::to_string(t.ids[nd.a.comp]) + " to itself");
    if (!is_tree(t))
        fail("incidence graph is not a connected tree");

    std::vector<std::vector<std::pair<std::string, ProjPoint>>> pts(C);
    for (int k = 0; k < static_cast<int>(t.nodes.size()); ++k) {
        pts[t.nodes[k].a.comp].push_back({"node " + std::to_string(k), t.nodes[k].a.pos});
        pts[t.nodes[k].b.comp].push_back({"node " + std::to_string(k), t.nodes[k].b.pos});
    }
    for (const auto& [i, s] : t.marks)
        pts[s.comp].push_back({"mark " + std::to_string(i), s.pos});
    for (int c = 0; c < C; ++c) {
        for (std::size_t x = 0; x < pts[c].size(); ++x)
            for (std::size_t y = x + 1; y < pts[c].size(); ++y)
                if (pts[c][x].second == pts[c][y].second) {
                    const bool xm = pts[c][x].first[0] == 'm';
                    const bool ym = pts[c][y].first[0] == 'm';
                    std::string what = xm && ym ? "marks coincide: " : (xm || ym) ? "mark at a node: "
                                                                                  : "nodes coincide: ";
                    fail(what + pts[c][x].first + ", " + pts[c][y].first);
                }
        if (pts[c].size() < 3)
            fail("component " + std::to_string(t.ids[c]) + " has " + std::to_string(pts[c].size()) +
                 " special points");
    }
    return r;
}

DualGraph dual_graph(const MarkedTree& t)
{
    DualGraph g;
    g.vertices = t.size();
    for (const auto& nd : t.nodes)
        g.edges.push_back({nd.a.comp, nd.b.comp});
    for (const auto& [i, s] : t.marks)
        g.half_edges.push_back({s.comp, i});
    return g;
}

int DualGraph::external_edges(const std::set<int>& E) const
{
    int n = 0;
    for (auto [a, b] : edges)
        if (E.count(a) != E.count(b))
            ++n;
    for (auto [v, i] : half_edges)
        if (E.count(v))
            ++n;
    return n;
}

std::vector<int> DualGraph::degrees() const
{
    std::vector<int> d(vertices, 0);
    for (auto [a, b] : edges) {
        ++d[a];
        ++d[b];
    }
    for (auto [v, i] : half_edges)
        ++d[v];
    return d;
}

std::vector<int> tree_path(const MarkedTree& t, int a, int b)
{
    auto adj = adjacency(t);
    std::vector<int> parent(t.size(), -2);
    std::deque<int> todo{a};
    parent[a] = -1;
    while (!todo.empty()) {
        int c = todo.front();
        todo.pop_front();
        for (auto [d, k] : adj[c])
            if (parent[d] == -2) {
                parent[d] = c;
                todo.push_back(d);
            }
    }
    if (parent[b] == -2)
        throw std::invalid_argument("components are not connected");
    std::vector<int> path;
    for (int c = b; c != -1; c = parent[c])
        path.push_back(c);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::optional<ProjPoint>> toward(const MarkedTree& t, int c)
{
    auto adj = adjacency(t);
    std::vector<std::optional<ProjPoint>> out(t.size());
    std::vector<bool> seen(t.size(), false);
    seen[c] = true;
    std::deque<int> todo;
    for (auto [d, k] : adj[c]) {
        out[d] = node_pos_on(t.nodes[k], c);
        seen[d] = true;
        todo.push_back(d);
    }
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop_front();
        for (auto [d, k] : adj[x])
            if (!seen[d]) {
                seen[d] = true;
                out[d] = out[x];
                todo.push_back(d);
            }
    }
    return out;
}

BranchData branches(const MarkedTree& t)
{
    const int C = t.size();
    auto adj = adjacency(t);
    std::vector<std::vector<int>> marks_on(C);
    for (const auto& [i, s] : t.marks)
        marks_on[s.comp].push_back(i);
    // marks beyond d when entering d from c
    std::map<std::pair<int, int>, std::vector<int>> memo;
    std::function<const std::vector<int>&(int, int)> beyond = [&](int c, int d) -> const std::vector<int>& {
        auto key = std::make_pair(c, d);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        std::vector<int> acc = marks_on[d];
        for (auto [e, k] : adj[d])
            if (e != c) {
                const auto& sub = beyond(d, e);
                acc.insert(acc.end(), sub.begin(), sub.end());
            }
        std::sort(acc.begin(), acc.end());
        return memo[key] = std::move(acc);
    };
    BranchData b;
    b.points.resize(C);
    b.sets.resize(C);
    for (int c = 0; c < C; ++c) {
        for (int i : marks_on[c]) {
            b.points[c].push_back({"m" + std::to_string(i), t.marks.at(i).pos});
            b.sets[c].push_back({i});
        }
        for (auto [d, k] : adj[c]) {
            b.points[c].push_back({"n" + std::to_string(k), node_pos_on(t.nodes[k], c)});
            b.sets[c].push_back(beyond(c, d));
        }
    }
    return b;
}

MarkedTree remark(const MarkedTree& t, const std::map<int, int>& relabel)
{
    MarkedTree r = t;
    r.marks.clear();
    for (auto [to, from] : relabel)
        r.marks[to] = t.marks.at(from);
    return r;
}

// ---------------------------------------------------------------------------

Contraction contract(const MarkedTree& t, const std::set<int>& keep, std::mt19937_64* order)
{
    if (keep.size() < 3)
        throw std::invalid_argument("contraction needs at least three marks");
    for (int i : keep)
        if (!t.marks.count(i))
            throw std::invalid_argument("mark " + std::to_string(i) + " is not on the tree");
    const int C = t.size();
    std::vector<bool> alive(C, true);
    std::vector<Node> nodes = t.nodes;
    std::vector<bool> node_alive(nodes.size(), true);
    std::map<int, Slot> kept;
    for (int i : keep)
        kept[i] = t.marks.at(i);

    auto incident = [&](int c) {
        std::vector<int> out;
        for (int k = 0; k < static_cast<int>(nodes.size()); ++k)
            if (node_alive[k] && (nodes[k].a.comp == c || nodes[k].b.comp == c))
                out.push_back(k);
        return out;
    };
    auto count = [&](int c) {
        int n = static_cast<int>(incident(c).size());
        for (auto& [i, s] : kept)
            if (s.comp == c)
                ++n;
        return n;
    };
    for (;;) {
        std::vector<int> unstable;
        for (int c = 0; c < C; ++c)
            if (alive[c] && count(c) < 3)
                unstable.push_back(c);
        if (unstable.empty())
            break;
        int c = unstable.front();
        if (order)
            c = unstable[std::uniform_int_distribution<std::size_t>(0, unstable.size() - 1)(*order)];
        auto inc = incident(c);
        auto other = [&](int k) { return nodes[k].a.comp == c ? nodes[k].b : nodes[k].a; };
        if (inc.size() == 1) {
            const Slot s = other(inc[0]);
            node_alive[inc[0]] = false;
            for (auto& [i, sl] : kept)
                if (sl.comp == c)
                    sl = s;
        } else if (inc.size() == 2) {
            const Slot s1 = other(inc[0]);
            const Slot s2 = other(inc[1]);
            node_alive[inc[0]] = false;
            node_alive[inc[1]] = false;
            nodes.push_back({s1, s2});
            node_alive.push_back(true);
        } else {
            throw std::logic_error("contraction reached a component without nodes");
        }
        alive[c] = false;
    }

    std::vector<int> renum(C, -1);
    Contraction out;
    out.tree.field = t.field;
    for (int c = 0; c < C; ++c)
        if (alive[c]) {
            renum[c] = out.tree.size();
            out.tree.ids.push_back(t.ids[c]);
        }
    for (std::size_t k = 0; k < nodes.size(); ++k)
        if (node_alive[k])
            out.tree.nodes.push_back({{renum[nodes[k].a.comp], nodes[k].a.pos}, {renum[nodes[k].b.comp], nodes[k].b.pos}});
    normalize_nodes(out.tree);
    for (auto& [i, s] : kept)
        out.tree.marks[i] = {renum[s.comp], s.pos};

    auto adj = adjacency(t);
    out.image.resize(C);
    for (int c = 0; c < C; ++c) {
        if (alive[c]) {
            out.image[c] = {false, renum[c], {}};
            continue;
        }
        auto dist = bfs_distance(adj, c);
        int best = -1;
        for (int d = 0; d < C; ++d)
            if (alive[d] && (best < 0 || dist[d] < dist[best]))
                best = d;
        out.image[c] = {true, renum[best], *toward(t, best)[c]};
    }
    auto carry = [&](int i, const Slot& s) {
        const auto& im = out.image[s.comp];
        out.tree.extra[i] = im.collapsed ? Slot{im.comp, im.point} : Slot{im.comp, s.pos};
    };
    for (const auto& [i, s] : t.marks)
        if (!keep.count(i))
            carry(i, s);
    for (const auto& [i, s] : t.extra)
        carry(i, s);
    return out;
}

MarkedTree stabilize(const MarkedTree& t, int new_mark, const StabilizeAt& where)
{
    if (t.marks.count(new_mark))
        throw std::invalid_argument("mark " + std::to_string(new_mark) + " already present");
    MarkedTree r = t;
    r.extra.erase(new_mark);
    const int next_id = t.ids.empty() ? 0 : *std::max_element(t.ids.begin(), t.ids.end()) + 1;
    switch (where.kind) {
    case StabilizeAt::Smooth: {
        const Slot& s = where.slot;
        if (s.comp < 0 || s.comp >= t.size())
            throw std::invalid_argument("position not on the tree");
        for (const auto& [i, sl] : t.marks)
            if (sl == s)
                throw std::invalid_argument("position is a marked point");
        for (const auto& nd : t.nodes)
            if (nd.a == s || nd.b == s)
                throw std::invalid_argument("position is a node");
        r.marks[new_mark] = s;
        return r;
    }
    case StabilizeAt::AtMark: {
        auto it = t.marks.find(where.mark);
        if (it == t.marks.end())
            throw std::invalid_argument("position not on the tree");
        const int nc = r.size();
        r.ids.push_back(next_id);
        r.marks[where.mark] = {nc, affine(0)};
        r.marks[new_mark] = {nc, affine(1)};
        r.nodes.push_back({it->second, {nc, infinity_point()}});
        break;
    }
    case StabilizeAt::AtNode: {
        if (where.node < 0 || where.node >= static_cast<int>(t.nodes.size()))
            throw std::invalid_argument("position not on the tree");
        const Node old = t.nodes[where.node];
        const int nc = r.size();
        r.ids.push_back(next_id);
        r.nodes.erase(r.nodes.begin() + where.node);
        r.nodes.push_back({old.a, {nc, affine(0)}});
        r.marks[new_mark] = {nc, affine(1)};
        r.nodes.push_back({old.b, {nc, infinity_point()}});
        break;
    }
    }
    normalize_nodes(r);
    return r;
}

ComponentContraction contract_to_component(const MarkedTree& t, int mark)
{
    auto it = t.marks.find(mark);
    if (it == t.marks.end())
        throw std::invalid_argument("mark " + std::to_string(mark) + " is not on the tree");
    const int c0 = it->second.comp;
    ComponentContraction out;
    out.image = toward(t, c0);
    out.tree.field = t.field;
    out.tree.ids = {t.ids[c0]};
    auto place = [&](const Slot& s) { return Slot{0, s.comp == c0 ? s.pos : *out.image[s.comp]}; };
    for (const auto& [i, s] : t.marks)
        out.tree.marks[i] = place(s);
    for (const auto& [i, s] : t.extra)
        out.tree.extra[i] = place(s);
    return out;
}

std::optional<Isomorphism> are_isomorphic(const MarkedTree& t1, const MarkedTree& t2)
{
    if (t1.marks.size() != t2.marks.size())
        throw std::invalid_argument("mark sets differ");
    for (auto a = t1.marks.begin(), b = t2.marks.begin(); a != t1.marks.end(); ++a, ++b)
        if (a->first != b->first)
            throw std::invalid_argument("mark sets differ");
    if (t1.size() != t2.size() || t1.nodes.size() != t2.nodes.size())
        return std::nullopt;
    const Field& K = t1.K();
    const auto B1 = branches(t1);
    const auto B2 = branches(t2);

    using Signature = std::vector<std::vector<int>>;
    auto order_of = [](const std::vector<std::vector<int>>& sets) {
        std::vector<std::size_t> idx(sets.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return sets[x] < sets[y]; });
        return idx;
    };
    std::map<Signature, int> index2;
    for (int c = 0; c < t2.size(); ++c) {
        Signature s = B2.sets[c];
        std::sort(s.begin(), s.end());
        if (!index2.emplace(s, c).second)
            return std::nullopt;
    }
    Isomorphism iso;
    iso.comp_map.resize(t1.size());
    iso.maps.resize(t1.size());
    for (int c = 0; c < t1.size(); ++c) {
        Signature s = B1.sets[c];
        std::sort(s.begin(), s.end());
        auto it = index2.find(s);
        if (it == index2.end() || s.size() < 3)
            return std::nullopt;
        const int d = it->second;
        const auto o1 = order_of(B1.sets[c]);
        const auto o2 = order_of(B2.sets[d]);
        ProjPoint src[3], dst[3];
        for (int j = 0; j < 3; ++j) {
            src[j] = B1.points[c][o1[j]].second;
            dst[j] = B2.points[d][o2[j]].second;
        }
        Mobius M;
        try {
            M = three_point(K, src, dst);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
        for (std::size_t j = 3; j < o1.size(); ++j)
            if (apply(K, M, B1.points[c][o1[j]].second) != B2.points[d][o2[j]].second)
                return std::nullopt;
        iso.comp_map[c] = d;
        iso.maps[c] = M;
    }
    return iso;
}

}  // namespace vfern
