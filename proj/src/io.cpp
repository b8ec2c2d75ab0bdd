#include "vfern/io.hpp"

#include <set>

namespace vfern {

namespace {

const json& field_at(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

unsigned uint_of(const json& j, const char* what)
{
    if (!j.is_number_unsigned())
        throw ParseError(std::string(what) + " must be a nonnegative integer");
    return j.get<unsigned>();
}

int int_of(const std::string& s, const char* what)
{
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size())
        throw ParseError(std::string("bad ") + what + " \"" + s + "\"");
    return v;
}

std::vector<unsigned> digits_of(const json& j, unsigned p, std::size_t max_len)
{
    if (!j.is_array() || j.size() > max_len)
        throw ParseError("field element must be a coefficient list of length at most " +
                         std::to_string(max_len));
    std::vector<unsigned> c;
    for (const auto& x : j) {
        const unsigned d = uint_of(x, "coefficient");
        if (d >= p)
            throw ParseError("coefficient out of range");
        c.push_back(d);
    }
    return c;
}

Slot slot_from_json(const Field& K, const json& j, const std::map<int, int>& index_of)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer())
        throw ParseError("a slot is [component, point]");
    const int id = j[0].get<int>();
    auto it = index_of.find(id);
    if (it == index_of.end())
        throw ParseError("unknown component id " + std::to_string(id));
    return {it->second, point_from_json(K, j[1])};
}

json slot_to_json(const MarkedTree& t, const Slot& s)
{
    return json::array({t.ids.at(s.comp), point_to_json(t.K(), s.pos)});
}

std::map<int, Slot> marks_from_json(const Field& K, const json& j, const std::map<int, int>& index_of)
{
    if (!j.is_object())
        throw ParseError("marking must be an object");
    std::map<int, Slot> out;
    for (const auto& [k, v] : j.items())
        out[int_of(k, "mark label")] = slot_from_json(K, v, index_of);
    return out;
}

json special_of(const MarkedTree& t, int c)
{
    json s = json::object();
    for (const auto& [i, sl] : t.marks)
        if (sl.comp == c)
            s["m" + std::to_string(i)] = point_to_json(t.K(), sl.pos);
    for (std::size_t k = 0; k < t.nodes.size(); ++k) {
        const auto& nd = t.nodes[k];
        if (nd.a.comp == c)
            s["n" + std::to_string(k)] = point_to_json(t.K(), nd.a.pos);
        if (nd.b.comp == c)
            s["n" + std::to_string(k)] = point_to_json(t.K(), nd.b.pos);
    }
    for (const auto& [i, sl] : t.extra)
        if (sl.comp == c)
            s["x" + std::to_string(i)] = point_to_json(t.K(), sl.pos);
    return s;
}

}  // namespace

json field_to_json(const ExtField& F)
{
    return {{"p", F.p}, {"e", F.e}, {"m", F.m}, {"modulus", F.big->modulus()}};
}

ExtFieldPtr field_from_json(const json& j)
{
    const unsigned p = uint_of(field_at(j, "p"), "p");
    const unsigned e = uint_of(field_at(j, "e"), "e");
    const unsigned m = uint_of(field_at(j, "m"), "m");
    ExtFieldPtr F;
    try {
        F = field_make(p, e, m);
    } catch (const std::exception& ex) {
        throw ParseError(ex.what());
    }
    if (j.contains("modulus")) {
        const auto mod = digits_of(j.at("modulus"), p, e * m + 1);
        if (mod != F->big->modulus())
            throw ParseError("only the canonical modulus is supported");
    }
    return F;
}

json elem_to_json(const Field& K, Elem a) { return K.coeffs(a); }

Elem elem_from_json(const Field& K, const json& j)
{
    return K.from_coeffs(digits_of(j, K.p(), K.degree()));
}

json point_to_json(const Field& K, const ProjPoint& p)
{
    return json::array({elem_to_json(K, p.x), elem_to_json(K, p.y)});
}

ProjPoint point_from_json(const Field& K, const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw ParseError("a point is [x, y]");
    try {
        return proj(K, elem_from_json(K, j[0]), elem_from_json(K, j[1]));
    } catch (const std::domain_error& ex) {
        throw ParseError(ex.what());
    }
}

json vec_to_json(const VectorSpace& V, Vec v)
{
    json out = json::array();
    for (Elem c : V.coords(v))
        out.push_back(elem_to_json(V.scalars(), c));
    return out;
}

Vec vec_from_json(const VectorSpace& V, const json& j)
{
    if (!j.is_array() || j.size() != V.n())
        throw ParseError("vector must have " + std::to_string(V.n()) + " coordinates");
    std::vector<Elem> c;
    for (const auto& x : j)
        c.push_back(elem_from_json(V.scalars(), x));
    return V.make(c);
}

json flag_to_json(const VectorSpace& V, const Flag& f)
{
    json out = json::array();
    for (const auto& W : f) {
        json b = json::array();
        for (Vec v : W.basis())
            b.push_back(vec_to_json(V, v));
        out.push_back(b);
    }
    return out;
}

json tree_to_json(const MarkedTree& t)
{
    json j;
    j["field"] = field_to_json(*t.field);
    json comps = json::array();
    for (int c = 0; c < t.size(); ++c)
        comps.push_back({{"id", t.ids[c]}, {"special", special_of(t, c)}});
    j["components"] = comps;
    json nodes = json::array();
    for (const auto& nd : t.nodes)
        nodes.push_back(json::array({slot_to_json(t, nd.a), slot_to_json(t, nd.b)}));
    j["nodes"] = nodes;
    json marking = json::object();
    for (const auto& [i, s] : t.marks)
        marking[std::to_string(i)] = slot_to_json(t, s);
    j["marking"] = marking;
    if (!t.extra.empty()) {
        json extra = json::object();
        for (const auto& [i, s] : t.extra)
            extra[std::to_string(i)] = slot_to_json(t, s);
        j["extra"] = extra;
    }
    return j;
}

MarkedTree tree_from_json(const json& j)
{
    MarkedTree t;
    t.field = field_from_json(field_at(j, "field"));
    const Field& K = t.K();
    const json& comps = field_at(j, "components");
    if (!comps.is_array() || comps.empty())
        throw ParseError("components must be a nonempty list");
    std::map<int, int> index_of;
    for (const auto& c : comps) {
        const json& id = field_at(c, "id");
        if (!id.is_number_integer())
            throw ParseError("component id must be an integer");
        if (!index_of.emplace(id.get<int>(), t.size()).second)
            throw ParseError("duplicate component id");
        t.ids.push_back(id.get<int>());
    }
    const json& nodes = field_at(j, "nodes");
    if (!nodes.is_array())
        throw ParseError("nodes must be a list");
    for (const auto& nd : nodes) {
        if (!nd.is_array() || nd.size() != 2)
            throw ParseError("a node is a pair of slots");
        t.nodes.push_back({slot_from_json(K, nd[0], index_of), slot_from_json(K, nd[1], index_of)});
    }
    t.marks = marks_from_json(K, field_at(j, "marking"), index_of);
    if (j.contains("extra"))
        t.extra = marks_from_json(K, j.at("extra"), index_of);
    for (std::size_t c = 0; c < comps.size(); ++c)
        if (comps[c].contains("special") && comps[c].at("special") != special_of(t, static_cast<int>(c)))
            throw ParseError("special points of component " + std::to_string(t.ids[c]) +
                             " disagree with nodes and marking");
    return t;
}

json fern_to_json(const Fern& f)
{
    json j = tree_to_json(f.tree);
    j["V"] = {{"n", f.space.amb.n()}, {"q", f.space.amb.q()}};
    json b = json::array();
    for (Vec v : f.space.basis)
        b.push_back(vec_to_json(f.space.amb, v));
    j["flag_basis"] = b;
    return j;
}

Fern fern_from_json(const json& j)
{
    MarkedTree t = tree_from_json(j);
    const json& V = field_at(j, "V");
    const unsigned n = uint_of(field_at(V, "n"), "n");
    const unsigned q = uint_of(field_at(V, "q"), "q");
    if (q != t.field->q())
        throw ParseError("V.q does not match the field");
    if (n == 0 || n > 16)
        throw ParseError("V.n out of range");
    VectorSpace amb(t.field->small, n);
    const json& fb = field_at(j, "flag_basis");
    if (!fb.is_array())
        throw ParseError("flag_basis must be a list");
    std::vector<Vec> basis;
    for (const auto& v : fb)
        basis.push_back(vec_from_json(amb, v));
    FernSpace S;
    try {
        S = make_space(amb, basis);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
    return require_fern(t, S);
}

json values_to_json(const FernSpace& S, const Field& K, const std::map<Vec, Elem>& values)
{
    json out = json::object();
    for (const auto& [v, x] : values)
        out[S.amb.str(v)] = elem_to_json(K, x);
    return out;
}

json class_point_to_json(const VectorSpace& V, const Field& K, const ClassPoint& cp)
{
    json out = json::object();
    for (const auto& f : cp.entries) {
        json vals = json::array();
        for (Elem x : f.values)
            vals.push_back(elem_to_json(K, x));
        out[f.W.key(V)] = vals;
    }
    return out;
}

}  // namespace vfern
