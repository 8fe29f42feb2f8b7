#include "folia/moduli.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace folia {

int GroupGraph::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int GroupGraph::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i] == std::make_pair(a, b)) return static_cast<int>(i);
    return -1;
}

std::string GroupGraph::edge_name(int e) const {
    return vertices[edges[e].first] + ":" + vertices[edges[e].second];
}

namespace {

void require_tree(const GroupGraph& g) {
    size_t n = g.vertices.size();
    if (n == 0) {
        if (!g.edges.empty()) throw std::invalid_argument("group graph: edges without vertices");
        return;
    }
    if (g.edges.size() != n - 1)
        throw std::invalid_argument("group graph: not a tree (|E| != |V|-1)");
    std::vector<int> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    size_t cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : g.edges) {
            int w = a == v ? b : (b == v ? a : -1);
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
        }
    }
    if (cnt != n) throw std::invalid_argument("group graph: not connected");
}

} // namespace

GroupGraph make_group_graph(std::vector<std::string> vertices,
                            std::vector<std::pair<int, int>> edges,
                            std::vector<int> dim_v, std::vector<int> dim_e) {
    GroupGraph g;
    g.vertices = std::move(vertices);
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    g.dim_v = std::move(dim_v);
    g.dim_e = std::move(dim_e);
    if (g.dim_v.size() != g.vertices.size() || g.dim_e.size() != g.edges.size())
        throw std::invalid_argument("group graph: dimension vectors of wrong length");
    for (int d : g.dim_v)
        if (d != 0 && d != 1) throw std::invalid_argument("group graph: dims must be 0/1");
    for (int d : g.dim_e)
        if (d != 0 && d != 1) throw std::invalid_argument("group graph: dims must be 0/1");
    g.prov_v.assign(g.vertices.size(), "RULE");
    g.prov_e.assign(g.edges.size(), "RULE");
    require_tree(g);
    return g;
}

GroupGraph build_group_graph(const MarkedDivisor& d, const Annotations& ann) {
    GroupGraph g;
    for (const auto& c : d.components) g.vertices.push_back(c.name);
    for (const auto& e : d.edges) g.edges.emplace_back(e.a, e.b);
    std::sort(g.edges.begin(), g.edges.end());
    g.dim_v.assign(g.vertices.size(), 0);
    g.prov_v.assign(g.vertices.size(), "RULE");
    g.dim_e.assign(g.edges.size(), 0);
    g.prov_e.assign(g.edges.size(), "RULE");

    for (size_t i = 0; i < d.components.size(); ++i) {
        const auto& c = d.components[i];
        if (c.dicritical) {
            g.dim_v[i] = 0; // forced
            continue;
        }
        // heuristic: rigid holonomy expected once >= 3 singular points sit on
        // the component, so the transverse symmetry space drops to 0
        g.dim_v[i] = d.points_on(c.id) <= 2 ? 1 : 0;
    }
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        bool dic = d.components[a].dicritical || d.components[b].dicritical;
        int ei = -1;
        for (size_t k = 0; k < d.edges.size(); ++k)
            if (d.edges[k].a == a && d.edges[k].b == b) ei = static_cast<int>(k);
        bool nodal = ei >= 0 && d.edges[ei].point >= 0 &&
                     d.points[d.edges[ei].point].cls.nodal == Tri::yes;
        g.dim_e[i] = (dic || nodal) ? 0 : 1;
    }

    for (const auto& [name, dim] : ann.vertex_dims) {
        int vi = g.vertex_index(name);
        if (vi < 0) throw std::invalid_argument("annotation for unknown component: " + name);
        if (d.components[vi].dicritical) continue; // forced zero stays
        if (dim != 0 && dim != 1) throw std::invalid_argument("annotation dims must be 0/1");
        g.dim_v[vi] = dim;
        g.prov_v[vi] = "ANNOTATION";
    }
    for (const auto& [name, dim] : ann.edge_dims) {
        int found = -1;
        for (size_t i = 0; i < g.edges.size(); ++i)
            if (g.edge_name(static_cast<int>(i)) == name) found = static_cast<int>(i);
        if (found < 0) throw std::invalid_argument("annotation for unknown edge: " + name);
        if (dim != 0 && dim != 1) throw std::invalid_argument("annotation dims must be 0/1");
        g.dim_e[found] = dim;
        g.prov_e[found] = "ANNOTATION";
    }
    require_tree(g);
    return g;
}

CochainComplex build_complex(const GroupGraph& g) {
    CochainComplex c;
    for (size_t v = 0; v < g.vertices.size(); ++v)
        if (g.dim_v[v] == 1) c.v_cols.push_back(static_cast<int>(v));
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.dim_e[e] != 1) continue;
        c.e_rows.push_back(static_cast<int>(e));
        c.oriented.emplace_back(g.edges[e].first, static_cast<int>(e));
        c.oriented.emplace_back(g.edges[e].second, static_cast<int>(e));
    }
    c.dim_v_total = static_cast<long>(c.v_cols.size());
    c.dim_or_total = static_cast<long>(c.oriented.size());
    c.dim_e_total = static_cast<long>(c.e_rows.size());

    // d0((X_D)_D) = (X_{D'} - X_D) at the oriented copy (D, <D,D'>)
    c.d0.assign(c.oriented.size(), std::vector<Rat>(c.v_cols.size(), Rat(0)));
    for (size_t r = 0; r < c.oriented.size(); ++r) {
        auto [v, e] = c.oriented[r];
        int other = g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
        for (size_t col = 0; col < c.v_cols.size(); ++col) {
            if (c.v_cols[col] == other) c.d0[r][col] += 1;
            if (c.v_cols[col] == v) c.d0[r][col] -= 1;
        }
    }
    // d1 sums the two oriented copies of each edge
    c.d1.assign(c.e_rows.size(), std::vector<Rat>(c.oriented.size(), Rat(0)));
    for (size_t r = 0; r < c.e_rows.size(); ++r)
        for (size_t col = 0; col < c.oriented.size(); ++col)
            if (c.oriented[col].second == c.e_rows[r]) c.d1[r][col] = 1;
    return c;
}

long h1_dimension(const CochainComplex& c) {
    long rank0 = c.d0.empty() || c.d0[0].empty() ? 0 : rat_rank(c.d0);
    long rank1 = c.d1.empty() || c.d1[0].empty() ? 0 : rat_rank(c.d1);
    long ker1 = c.dim_or_total - rank1;
    return ker1 - rank0;
}

// --- active edges -----------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

ActiveEdges active_edges_with_choice(
    const GroupGraph& g, const std::function<int(const std::vector<int>&)>& choose) {
    ActiveEdges out;
    size_t n = g.vertices.size(), m = g.edges.size();
    for (size_t v = 0; v < n; ++v)
        if (g.dim_v[v] == 1) out.s_vertices.push_back(static_cast<int>(v));
    for (size_t e = 0; e < m; ++e)
        if (g.dim_e[e] == 1) out.s_edges.push_back(static_cast<int>(e));

    // S-components in the incidence topology: vertex and edge adjacent iff
    // incident and both in S
    UnionFind uf(n + m);
    for (int e : out.s_edges) {
        auto [a, b] = g.edges[e];
        if (g.dim_v[a] == 1) uf.unite(static_cast<int>(n) + e, a);
        if (g.dim_v[b] == 1) uf.unite(static_cast<int>(n) + e, b);
    }

    for (int e : out.s_edges) {
        auto [a, b] = g.edges[e];
        if (g.dim_v[a] == 0 || g.dim_v[b] == 0) out.a_prime.push_back(e);
    }

    // group A' edges by S-component; decide which components are single edges
    std::map<int, std::vector<int>> aprime_by_comp;
    for (int e : out.a_prime)
        aprime_by_comp[uf.find(static_cast<int>(n) + e)].push_back(e);
    std::map<int, int> comp_size; // number of S-members per component root
    for (int v : out.s_vertices) comp_size[uf.find(v)]++;
    for (int e : out.s_edges) comp_size[uf.find(static_cast<int>(n) + e)]++;

    std::vector<int> removed;
    for (auto& [root, candidates] : aprime_by_comp) {
        std::sort(candidates.begin(), candidates.end());
        if (comp_size[root] <= 1) continue; // component reduced to a single edge
        int pick = choose(candidates);
        removed.push_back(candidates.at(pick));
    }
    for (int e : out.a_prime)
        if (std::find(removed.begin(), removed.end(), e) == removed.end())
            out.a_dprime.push_back(e);

    int slot = 1;
    for (int e : out.a_dprime) {
        auto [a, b] = g.edges[e];
        int from;
        bool a_out = g.dim_v[a] == 0, b_out = g.dim_v[b] == 0;
        if (a_out && !b_out) from = a;
        else if (b_out && !a_out) from = b;
        else from = g.vertices[a] <= g.vertices[b] ? a : b;
        out.oriented.emplace_back(from, e);
        out.kappa[e] = slot++;
    }
    return out;
}

ActiveEdges active_edges(const GroupGraph& g) {
    return active_edges_with_choice(g, [](const std::vector<int>&) { return 0; });
}

// --- no-chain condition ------------------------------------------------------

NcReport check_no_chain(const MarkedDivisor& d) {
    NcReport rep;
    size_t n = d.components.size();
    if (n == 0) return rep;
    UnionFind uf(n);
    for (const auto& e : d.edges)
        if (!d.components[e.a].dicritical && !d.components[e.b].dicritical)
            uf.unite(e.a, e.b);
    std::map<int, std::vector<int>> groups;
    for (size_t v = 0; v < n; ++v)
        if (!d.components[v].dicritical) groups[uf.find(static_cast<int>(v))].push_back(static_cast<int>(v));

    for (auto& [root, members] : groups) {
        bool ok = false;
        for (int v : members)
            if (d.points_on(v) != 2) { ok = true; break; }
        if (ok) continue;
        rep.holds = false;
        // every member has exactly 2 marked points: the piece is a chain;
        // order it as a path starting from the lexicographically first endpoint
        std::vector<int> chain;
        auto nbrs = [&](int v) {
            std::vector<int> r;
            for (const auto& e : d.edges) {
                int w = e.a == v ? e.b : (e.b == v ? e.a : -1);
                if (w >= 0 && !d.components[w].dicritical &&
                    std::find(members.begin(), members.end(), w) != members.end())
                    r.push_back(w);
            }
            return r;
        };
        std::vector<int> endpoints;
        for (int v : members)
            if (nbrs(v).size() <= 1) endpoints.push_back(v);
        std::sort(endpoints.begin(), endpoints.end(),
                  [&](int a, int b) { return d.components[a].name < d.components[b].name; });
        int cur = endpoints.empty() ? members.front() : endpoints.front();
        int prev = -1;
        while (true) {
            chain.push_back(cur);
            int next = -1;
            for (int w : nbrs(cur))
                if (w != prev) { next = w; break; }
            if (next < 0) break;
            prev = cur;
            cur = next;
            if (chain.size() > members.size()) break; // safety
        }
        rep.witnesses.push_back(std::move(chain));
    }
    return rep;
}

std::vector<int> braid_factors(const MarkedDivisor& d) {
    std::vector<int> out(d.components.size(), 0);
    for (size_t i = 0; i < d.components.size(); ++i) {
        int id = static_cast<int>(i);
        int distinguished = d.points_on(id);
        for (int e : d.edges_at(id))
            if (d.edges[e].regular_corner) ++distinguished;
        out[i] = distinguished;
    }
    return out;
}

// --- skeleton -----------------------------------------------------------------

void verify_tau_consistency(long cohomology_route, long active_edge_route) {
    if (cohomology_route != active_edge_route)
        throw TauMismatch("tau mismatch: cohomology gives " + std::to_string(cohomology_route) +
                          ", active edges give " + std::to_string(active_edge_route));
}

ModuliSkeleton moduli_skeleton(const MarkedDivisor& d, const Annotations& ann) {
    if (!d.generalized_curve)
        throw std::invalid_argument(
            "moduli_skeleton: the foliation is not a generalized curve");
    ModuliSkeleton s;
    s.graph = build_group_graph(d, ann);
    CochainComplex c = build_complex(s.graph);
    long tau_cohomology = h1_dimension(c);
    s.active = active_edges(s.graph);
    verify_tau_consistency(tau_cohomology, s.active.tau());
    s.tau = tau_cohomology;
    s.nc = check_no_chain(d);
    s.braid_counts = braid_factors(d);
    if (ann.tr) s.tr = *ann.tr ? TrVerdict::annotated_true : TrVerdict::annotated_false;

    bool dicritical_edge = false;
    for (size_t i = 0; i < s.graph.edges.size(); ++i) {
        auto [a, b] = s.graph.edges[i];
        if (d.components[a].dicritical || d.components[b].dicritical) dicritical_edge = true;
    }
    if (dicritical_edge)
        s.assumptions.push_back(
            "corners on dicritical components are assigned edge dimension 0 "
            "(annotation can override)");
    for (size_t i = 0; i < s.graph.vertices.size(); ++i)
        if (s.graph.prov_v[i] == "RULE" && !d.components[i].dicritical) {
            s.assumptions.push_back(
                "vertex dimensions follow the marked-point-count heuristic "
                "(<= 2 points: dim 1), not a holonomy computation");
            break;
        }
    for (const auto& e : d.edges)
        if (e.point >= 0 && d.points[e.point].cls.nodal == Tri::unknown)
            s.assumptions.push_back("nodal status of a corner is undetermined; treated "
                                    "as non-nodal in the group graph");
    return s;
}

Json skeleton_to_json(const ModuliSkeleton& s, const MarkedDivisor& d) {
    Json j;
    j["fmv"] = 1;
    j["tau"] = s.tau;
    Json dims;
    Json dv = Json::object(), de = Json::object();
    for (size_t i = 0; i < s.graph.vertices.size(); ++i)
        dv[s.graph.vertices[i]] =
            Json{{"dim", s.graph.dim_v[i]}, {"provenance", s.graph.prov_v[i]}};
    for (size_t i = 0; i < s.graph.edges.size(); ++i)
        de[s.graph.edge_name(static_cast<int>(i))] =
            Json{{"dim", s.graph.dim_e[i]}, {"provenance", s.graph.prov_e[i]}};
    dims["vertices"] = dv;
    dims["edges"] = de;
    j["group_graph"] = dims;
    Json act = Json::array();
    for (auto [v, e] : s.active.oriented)
        act.push_back(Json{{"edge", s.graph.edge_name(e)},
                           {"oriented_from", s.graph.vertices[v]},
                           {"slot", s.active.kappa.at(e)}});
    j["active_edges"] = act;
    j["nc"] = Json{{"holds", s.nc.holds}};
    if (!s.nc.holds) {
        Json w = Json::array();
        for (const auto& chain : s.nc.witnesses) {
            Json cj = Json::array();
            for (int v : chain) cj.push_back(d.components[v].name);
            w.push_back(cj);
        }
        j["nc"]["witnesses"] = w;
    }
    j["tr"] = s.tr == TrVerdict::annotated_true    ? "ANNOTATED_TRUE"
              : s.tr == TrVerdict::annotated_false ? "ANNOTATED_FALSE"
                                                   : "UNKNOWN";
    Json braid = Json::object();
    for (size_t i = 0; i < s.braid_counts.size(); ++i)
        braid[d.components[i].name] = s.braid_counts[i];
    j["braid_marked_points"] = braid;
    j["unitary_quotient_group"] = "UNKNOWN";
    j["lattice_rank"] = "UNKNOWN";
    j["assumptions"] = s.assumptions;
    return j;
}

std::string skeleton_to_text(const ModuliSkeleton& s, const MarkedDivisor& d) {
    std::ostringstream os;
    os << "moduli skeleton\n";
    os << "  tau (continuous parameters) = " << s.tau << "\n";
    os << "  active oriented edges:";
    if (s.active.oriented.empty()) os << " none";
    os << "\n";
    for (auto [v, e] : s.active.oriented)
        os << "    slot " << s.active.kappa.at(e) << ": " << s.graph.edge_name(e)
           << " oriented from " << s.graph.vertices[v] << "\n";
    os << "  no-chain condition: " << (s.nc.holds ? "holds" : "FAILS") << "\n";
    for (const auto& chain : s.nc.witnesses) {
        os << "    violating chain:";
        for (int v : chain) os << " " << d.components[v].name;
        os << "\n";
    }
    os << "  transverse rigidity: "
       << (s.tr == TrVerdict::annotated_true    ? "ANNOTATED_TRUE"
           : s.tr == TrVerdict::annotated_false ? "ANNOTATED_FALSE"
                                                : "UNKNOWN")
       << "\n";
    os << "  braid factor marked points:";
    for (size_t i = 0; i < s.braid_counts.size(); ++i)
        os << " " << d.components[i].name << "=" << s.braid_counts[i];
    if (s.braid_counts.empty()) os << " (empty divisor)";
    os << "\n";
    os << "  unitary quotient group: UNKNOWN (not computed)\n";
    os << "  lattice rank: UNKNOWN (not computed)\n";
    if (!s.assumptions.empty()) {
        os << "  assumptions:\n";
        for (const auto& a : s.assumptions) os << "    - " << a << "\n";
    }
    return os.str();
}

Annotations annotations_from_json(const Json& j) {
    Annotations ann;
    if (j.contains("vertices"))
        for (auto it = j.at("vertices").begin(); it != j.at("vertices").end(); ++it)
            ann.vertex_dims[it.key()] = it.value().get<int>();
    if (j.contains("edges"))
        for (auto it = j.at("edges").begin(); it != j.at("edges").end(); ++it)
            ann.edge_dims[it.key()] = it.value().get<int>();
    if (j.contains("tr")) ann.tr = j.at("tr").get<bool>();
    return ann;
}

} // namespace folia
