#pragma once

#include <string>
#include <vector>

#include "folia/jets.hpp"
#include "folia/moduli.hpp"

namespace folia {

// An active oriented edge of a gluing configuration: the edge, the vertex it
// is oriented from, its parameter slot and the basic field attached to it.
struct KsEdgeConfig {
    int edge = 0;
    int from_vertex = 0;
    int slot = 0; // 1-based
    JetVectorField field;
};

struct KsConfig {
    GroupGraph graph;
    std::vector<KsEdgeConfig> active;
    std::vector<Rat> ztilde; // declared base point, one value per slot
    int order = 6;
};

// Transition cocycle of the family relative to its fiber at ztilde, one map
// per oriented edge of the tree. The maps are expressed in the shifted
// parameters d_k = z_k - ztilde_k (the only exact representation: a flow at
// a fixed nonzero time is transcendental). Derivatives at z = ztilde are
// then jet coefficients at d = 0.
struct KsTransition {
    int edge = 0;
    int from_vertex = 0;
    enum class Form { forward, backward, identity } form = Form::identity;
    JetMap map;
};

std::vector<KsTransition> build_ks_transitions(const KsConfig& cfg);

struct KsVerdict {
    int edge = 0;
    int from_vertex = 0;
    int slot = 0;
    std::string expected; // "X", "-X" or "0"
    bool match = false;
};

// Checks the derivative table of the transition cocycle: at the base point
// the z_k derivative of an oriented-edge transition is X_e on its own slot
// for the chosen orientation, -X_e for the reversed one, 0 everywhere else.
std::vector<KsVerdict> kodaira_spencer_check(const KsConfig& cfg,
                                             const std::vector<KsTransition>& transitions);

// --- scenario files -----------------------------------------------------------

struct ScenarioResult {
    std::vector<KsVerdict> verdicts;
    bool all_match = true;
    std::string table; // human-readable verdict table
};

// Runs a scenario JSON (tree, dims, per-edge fields, order, base point,
// optional corrupted edges as a negative control); see docs/formats.md.
ScenarioResult run_scenario(const Json& j);

} // namespace folia
