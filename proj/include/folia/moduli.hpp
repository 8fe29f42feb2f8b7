#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folia/divisor.hpp"
#include "folia/ratmat.hpp"

namespace folia {

// 0/1-dimensional space assignment on the vertices and edges of the dual
// tree. dim 0 is forced on dicritical vertices and on nodal-corner edges;
// everything else defaults to a documented heuristic and can be overridden.
struct GroupGraph {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges; // a < b, sorted
    std::vector<int> dim_v;                 // 0 or 1
    std::vector<int> dim_e;
    std::vector<std::string> prov_v;        // "RULE" or "ANNOTATION"
    std::vector<std::string> prov_e;

    int vertex_index(const std::string& name) const;
    int edge_index(int a, int b) const;
    std::string edge_name(int e) const; // "A:B"
};

struct Annotations {
    std::map<std::string, int> vertex_dims; // by vertex name
    std::map<std::string, int> edge_dims;   // by "A:B" name
    std::optional<bool> tr;                 // transverse-rigidity annotation
};

// synthetic graph for tests and scenarios; must be a tree
GroupGraph make_group_graph(std::vector<std::string> vertices,
                            std::vector<std::pair<int, int>> edges,
                            std::vector<int> dim_v, std::vector<int> dim_e);

// Rules: dicritical vertices 0; other vertices 1 when they carry at most 2
// marked points, else 0; edges 0 at nodal corners and at corners with a
// dicritical endpoint, else 1. Annotations override (never the forced zeros).
GroupGraph build_group_graph(const MarkedDivisor& d, const Annotations& ann = {});

// the two coboundary matrices over Q, with index bookkeeping
struct CochainComplex {
    RatMatrix d0; // rows: oriented copies (D,e) with dim e = 1; cols: dim-1 vertices
    RatMatrix d1; // rows: dim-1 edges; cols: same oriented copies
    std::vector<int> v_cols;                    // vertex index per column of d0
    std::vector<std::pair<int, int>> oriented;  // (vertex, edge) per row of d0
    std::vector<int> e_rows;                    // edge index per row of d1
    long dim_v_total = 0, dim_or_total = 0, dim_e_total = 0;
};

CochainComplex build_complex(const GroupGraph& g);

// dim ker d1 - rank d0, exact
long h1_dimension(const CochainComplex& c);

struct ActiveEdges {
    std::vector<int> s_vertices;               // members of S
    std::vector<int> s_edges;
    std::vector<int> a_prime;                  // edge indices
    std::vector<int> a_dprime;                 // after one removal per big component
    std::vector<std::pair<int, int>> oriented; // chosen (vertex, edge) per active edge
    std::map<int, int> kappa;                  // edge index -> slot in 1..tau
    long tau() const { return static_cast<long>(a_dprime.size()); }
};

ActiveEdges active_edges(const GroupGraph& g);

// same construction with an injected removal choice (used by the invariance
// property test); chooser picks an element of the candidate list
ActiveEdges active_edges_with_choice(
    const GroupGraph& g, const std::function<int(const std::vector<int>&)>& choose);

struct NcReport {
    bool holds = true;
    // one ordered component-id chain per failing connected piece
    std::vector<std::vector<int>> witnesses;
};

// No-chain condition: every connected piece of the non-dicritical part of
// the divisor must contain a component carrying != 2 marked points.
NcReport check_no_chain(const MarkedDivisor& d);

// per component: marked points plus regular corners (the distinguished
// points of the component, the strand datum of its braid factor)
std::vector<int> braid_factors(const MarkedDivisor& d);

class TauMismatch : public std::runtime_error {
public:
    explicit TauMismatch(const std::string& w) : std::runtime_error(w) {}
};

// the two tau routes must agree (geometric basis theorem at dimension level);
// throws TauMismatch otherwise
void verify_tau_consistency(long cohomology_route, long active_edge_route);

enum class TrVerdict { annotated_true, annotated_false, unknown };

struct ModuliSkeleton {
    long tau = 0;
    GroupGraph graph;
    ActiveEdges active;
    NcReport nc;
    TrVerdict tr = TrVerdict::unknown;
    std::vector<int> braid_counts;
    std::vector<std::string> assumptions;
};

// assembles tau (cohomology route and active-edge route, asserting they
// agree), the no-chain verdict, the TR annotation and the braid data
ModuliSkeleton moduli_skeleton(const MarkedDivisor& d, const Annotations& ann = {});

Json skeleton_to_json(const ModuliSkeleton& s, const MarkedDivisor& d);
std::string skeleton_to_text(const ModuliSkeleton& s, const MarkedDivisor& d);

Annotations annotations_from_json(const Json& j);

} // namespace folia
