#pragma once

#include "vfern/gf.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace vfern {

// (x:y), normalized to (x:1) or (1:0).
struct ProjPoint {
    Elem x = 0;
    Elem y = 1;

    bool operator==(const ProjPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const { return y != o.y ? y > o.y : x < o.x; }
    bool is_infinity() const { return y == 0; }
};

ProjPoint proj(const Field& K, Elem x, Elem y);
inline ProjPoint affine(Elem x) { return {x, 1}; }
inline ProjPoint infinity_point() { return {1, 0}; }

// z -> (a x + b y : c x + d y)
struct Mobius {
    Elem a = 1, b = 0, c = 0, d = 1;
};

ProjPoint apply(const Field& K, const Mobius& M, const ProjPoint& z);
Mobius compose(const Field& K, const Mobius& M, const Mobius& N);  // M after N
Mobius inverse(const Field& K, const Mobius& M);
// sends p0 -> 0, p1 -> 1, pinf -> infinity; the three points must be distinct
Mobius to_standard(const Field& K, const ProjPoint& p0, const ProjPoint& p1, const ProjPoint& pinf);
// sends src[i] -> dst[i]
Mobius three_point(const Field& K, const ProjPoint src[3], const ProjPoint dst[3]);
// sends a -> 0 and b -> infinity, with determinant-free scaling
Mobius zero_infinity(const Field& K, const ProjPoint& a, const ProjPoint& b);
bool same_map(const Field& K, const Mobius& M, const Mobius& N);

// Value at d of the coordinate sending a, b, c to 0, 1, infinity.
Elem cross_ratio(const Field& K, const ProjPoint& a, const ProjPoint& b, const ProjPoint& c,
                 const ProjPoint& d);

// ---------------------------------------------------------------------------

struct Slot {
    int comp = 0;
    ProjPoint pos;
    bool operator==(const Slot& o) const { return comp == o.comp && pos == o.pos; }
    bool operator<(const Slot& o) const { return comp != o.comp ? comp < o.comp : pos < o.pos; }
};

struct Node {
    Slot a;
    Slot b;
    bool operator==(const Node& o) const { return a == o.a && b == o.b; }
};

// A tree of projective lines over the big field. Components are indexed
// 0..ids.size()-1; ids are opaque labels kept for serialization. Marks outside
// the structural marking ("extra") ride along after contraction.
struct MarkedTree {
    ExtFieldPtr field;
    std::vector<int> ids;
    std::vector<Node> nodes;
    std::map<int, Slot> marks;
    std::map<int, Slot> extra;

    int size() const { return static_cast<int>(ids.size()); }
    const Field& K() const { return *field->big; }
    bool operator==(const MarkedTree& o) const;
};

// Sort nodes canonically and orient each so that a.comp < b.comp.
void normalize_nodes(MarkedTree& t);

struct StabilityReport {
    bool stable = true;
    std::vector<std::string> violations;
};

StabilityReport validate(const MarkedTree& t);

struct DualGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> half_edges;  // (vertex, mark)

    int external_edges(const std::set<int>& E) const;
    std::vector<int> degrees() const;
};

DualGraph dual_graph(const MarkedTree& t);

// Image of a component under a contraction: a surviving component, or a point.
struct ComponentImage {
    bool collapsed = false;
    int comp = 0;
    ProjPoint point;
};

struct Contraction {
    MarkedTree tree;
    std::vector<ComponentImage> image;
};

// Collapse order: nullptr picks the lowest unstable component each round,
// otherwise a uniformly random one.
Contraction contract(const MarkedTree& t, const std::set<int>& keep, std::mt19937_64* order = nullptr);

struct StabilizeAt {
    enum Kind { Smooth, AtNode, AtMark } kind = Smooth;
    Slot slot;       // Smooth
    int node = 0;    // AtNode
    int mark = 0;    // AtMark
};

MarkedTree stabilize(const MarkedTree& t, int new_mark, const StabilizeAt& where);

struct ComponentContraction {
    MarkedTree tree;
    std::vector<std::optional<ProjPoint>> image;  // per original component; empty for the kept one
};

ComponentContraction contract_to_component(const MarkedTree& t, int mark);

struct Isomorphism {
    std::vector<int> comp_map;
    std::vector<Mobius> maps;  // coordinates of comp c in t1 -> comp_map[c] in t2
};

std::optional<Isomorphism> are_isomorphic(const MarkedTree& t1, const MarkedTree& t2);

// Mark sets of the branches at each special point of each component. Node
// branches are keyed by "n<index>", marks by "m<label>".
struct BranchData {
    std::vector<std::vector<std::pair<std::string, ProjPoint>>> points;
    std::vector<std::vector<std::vector<int>>> sets;
};
BranchData branches(const MarkedTree& t);

// Components on the path from a to b, inclusive.
std::vector<int> tree_path(const MarkedTree& t, int a, int b);
// For every component d != c: the position on c of the node leading towards d.
std::vector<std::optional<ProjPoint>> toward(const MarkedTree& t, int c);

MarkedTree remark(const MarkedTree& t, const std::map<int, int>& relabel);

}  // namespace vfern
