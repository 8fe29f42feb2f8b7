#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/poly2.hpp"

namespace folia {

// Local coordinate axes as curves: Axis::x is {y = 0}, Axis::y is {x = 0}.
enum class Axis { x, y };

struct LocalBranch {
    Axis axis;
    int component; // divisor component carried by this axis
};

// A local chart of the blown-up surface at a point of interest. The form is
// the strict transform (all exceptional factors divided out); divisor
// branches through the origin are coordinate axes.
struct Chart {
    std::string id; // word over {0,1}: affine chart chosen at each blow-up
    OneForm form;
    TowerPtr tower;
    std::vector<LocalBranch> branches;

    bool has_branch(Axis a, int* comp = nullptr) const {
        for (const auto& b : branches)
            if (b.axis == a) {
                if (comp) *comp = b.component;
                return true;
            }
        return false;
    }
};

enum class SingClass {
    regular,
    reduced_nondegenerate,
    saddle_node,
    non_reduced,
    undetermined,
};

std::string to_string(SingClass c);

struct Classification {
    SingClass cls = SingClass::regular;
    FieldElem trace, det;
    std::optional<FieldElem> ratio; // an eigenvalue ratio when computable in-field
    Tri nodal = Tri::no;            // for reduced_nondegenerate: ratio real > 0
    std::string note;
};

// Classifies a singular point from the linear part of the dual vector field.
// With T = trace and D = det: D = 0, T = 0 -> non-reduced; D = 0, T != 0 ->
// saddle-node; D != 0 with eigenvalue ratio a positive rational ->
// non-reduced; otherwise reduced. Rationality of the ratio reduces to an
// exact square test on T^2 - 4D.
Classification classify_linear_part(const Mat2& J);

// Camacho-Sad index along an invariant coordinate axis through a reduced
// nondegenerate singularity: the transverse eigenvalue over the tangent one.
// Requires the axis to be an eigendirection of J.
FieldElem camacho_sad_index(const Mat2& J, Axis branch);

struct BlowUpCharts {
    Chart chart0; // (x, y) <- (x, x y), exceptional axis {x = 0}
    Chart chart1; // (x, y) <- (x y, y), exceptional axis {y = 0}
    bool dicritical = false;
    int nu = 0;
};

// One point blow-up at the origin of the chart; the new component is not yet
// wired into any divisor bookkeeping (callers do that). The exceptional axis
// in each output chart carries component id `new_component`.
BlowUpCharts blow_up_origin(const Chart& c, int new_component);

// Spec-shaped wrapper: translates the center to the origin first; keeps the
// divisor branches that pass through the center. The center must be singular.
BlowUpCharts blow_up_point(const Chart& c, const FieldElem& cx, const FieldElem& cy,
                           int new_component);

struct AxisPoints {
    std::vector<FieldElem> on_chart0; // positions along the exceptional axis of chart0
    bool at_infinity = false;         // the remaining point, the origin of chart1
    TowerPtr tower;                   // possibly extended by the root search
    bool extended = false;
};

// All singular points of the strict transform on the freshly created
// exceptional component: common zeros of both coefficients restricted to the
// axis in chart0, plus the corner at infinity checked in chart1.
AxisPoints find_divisor_singularities(const BlowUpCharts& bu, long tower_degree_cap);

struct CsEntry {
    int component;
    bool determined = false;
    FieldElem value;
};

struct SingularityRecord {
    int index = 0;
    std::string chart;
    std::vector<int> components; // 1 for an axis point, 2 for a corner
    FieldElem coordinate;        // position along the younger component's axis
    TowerPtr tower;
    Classification cls;
    std::vector<CsEntry> cs;
    bool is_corner() const { return components.size() == 2; }
};

struct Component {
    int id = 0;
    std::string name;
    int self_intersection = 0;
    bool dicritical = false;
};

struct EdgeRec {
    int a = 0, b = 0;          // component ids, a < b
    bool regular_corner = false;
    int point = -1;            // index into points when the corner is singular
};

struct BlowUpNode {
    std::string parent_chart;
    std::string center;     // human-readable description of the center
    int component_created;
    int nu = 0;
    bool dicritical = false;
};

enum class ReduceStatus { complete, undetermined, depth_limit };

struct ReductionOutcome {
    ReduceStatus status = ReduceStatus::complete;
    bool origin_singular = true;
    std::optional<Classification> origin_class; // set when no blow-up was needed
    int blow_up_count = 0;
    bool generalized_curve = true;
    std::vector<Component> components;
    std::vector<EdgeRec> edges;
    std::vector<SingularityRecord> points;
    std::vector<BlowUpNode> tree;
    std::string note;

    const Component& component(int id) const { return components.at(id); }
};

struct ReduceConfig {
    int max_blow_ups = 64;
    long tower_degree_cap = 8;
};

// Iterated point blow-ups until every singularity on the divisor is reduced.
// Deterministic: pending points are processed in lexicographic order of
// (chart id, point coordinate key), so outputs are reproducible bit for bit.
ReductionOutcome reduce(const OneForm& w, const ReduceConfig& cfg = {});

} // namespace folia
