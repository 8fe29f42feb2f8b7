#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "folia/reduction.hpp"

namespace folia {

using Json = nlohmann::json;

// The marked exceptional divisor: components with self-intersections and
// dicritical flags, corner edges of the dual tree, and the singular points
// of the reduced foliation with their Camacho-Sad data. Immutable value
// type; make_divisor validates the model invariants.
struct MarkedDivisor {
    std::vector<Component> components;
    std::vector<EdgeRec> edges;              // canonical order, a < b
    std::vector<SingularityRecord> points;   // the marked set (excludes regular corners)
    bool generalized_curve = true;

    int points_on(int comp) const;           // singular points lying on a component
    std::vector<int> edges_at(int comp) const;
};

// Builds the divisor from a COMPLETE reduction outcome. Throws
// std::invalid_argument when the outcome is not COMPLETE or violates the
// model invariants (non-tree dual graph, marked point on a dicritical
// component, corner on != 2 components).
MarkedDivisor make_divisor(const ReductionOutcome& out);

// returns human-readable invariant violations, empty when the model is sound
std::vector<std::string> validate_divisor(const MarkedDivisor& d);

using IntersectionMatrix = std::vector<std::vector<long>>;

IntersectionMatrix intersection_matrix(const MarkedDivisor& d);

// alternating leading principal minors, exact integer arithmetic
bool is_negative_definite(const IntersectionMatrix& m);

struct CsResidual {
    int component = 0;
    bool determined = false; // false when some index on the component is undetermined
    FieldElem residual;      // sum of CS indices minus the self-intersection
};

// Camacho-Sad index theorem used as an oracle: for every invariant
// non-dicritical component the indices along it sum to its
// self-intersection, so each residual must be exactly zero.
std::vector<CsResidual> verify_camacho_sad(const MarkedDivisor& d);

// edges whose corner record carries a positive real (nodal) index
std::vector<int> nodal_corner_edges(const MarkedDivisor& d);

Json divisor_to_json(const MarkedDivisor& d);
MarkedDivisor divisor_from_json(const Json& j);
std::string to_dot(const MarkedDivisor& d);

// scalar (de)serialization shared with the other file formats
Json field_elem_to_json(const FieldElem& e);
FieldElem field_elem_from_json(const Json& j, const TowerPtr& tower);
Json tower_to_json(const TowerPtr& t);
TowerPtr tower_from_json(const Json& j);

} // namespace folia
