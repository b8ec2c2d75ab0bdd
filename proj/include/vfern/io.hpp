#pragma once

#include "vfern/universal.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace vfern {

using json = nlohmann::json;

// Structurally malformed input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json field_to_json(const ExtField& F);
ExtFieldPtr field_from_json(const json& j);

// Field elements are coefficient lists over F_p, lowest degree first.
json elem_to_json(const Field& K, Elem a);
Elem elem_from_json(const Field& K, const json& j);

json point_to_json(const Field& K, const ProjPoint& p);
ProjPoint point_from_json(const Field& K, const json& j);

// Vectors are lists of coordinates, each a coefficient list of F_q.
json vec_to_json(const VectorSpace& V, Vec v);
Vec vec_from_json(const VectorSpace& V, const json& j);

json flag_to_json(const VectorSpace& V, const Flag& f);

json tree_to_json(const MarkedTree& t);
MarkedTree tree_from_json(const json& j);

// Mark labels of a fern are packed vector codes; the infinity mark is q^n.
json fern_to_json(const Fern& f);
Fern fern_from_json(const json& j);

json values_to_json(const FernSpace& S, const Field& K, const std::map<Vec, Elem>& values);
json class_point_to_json(const VectorSpace& V, const Field& K, const ClassPoint& cp);

}  // namespace vfern
