#include <doctest.h>

#include <random>
#include <set>

#include "folia/moduli.hpp"
#include "folia/parser.hpp"

using namespace folia;

namespace {

MarkedDivisor cusp_divisor() {
    return make_divisor(reduce(parse_one_form("2*y*dy - 3*x^2*dx")));
}

GroupGraph path3(int va, int vb, int vc, int eab, int ebc) {
    return make_group_graph({"A", "B", "C"}, {{0, 1}, {1, 2}}, {va, vb, vc}, {eab, ebc});
}

GroupGraph random_graph(std::mt19937_64& rng, int max_vertices) {
    int n = 1 + static_cast<int>(rng() % max_vertices);
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        names.push_back("V" + std::to_string(v + 1));
        if (v > 0) edges.emplace_back(static_cast<int>(rng() % v), v);
    }
    std::vector<int> dv(n), de(n > 1 ? n - 1 : 0);
    for (auto& x : dv) x = static_cast<int>(rng() % 2);
    for (auto& x : de) x = static_cast<int>(rng() % 2);
    return make_group_graph(names, edges, dv, de);
}

// chain of four invariant components, marked points exactly at the three
// corners plus one extra point on each extreme component: every component
// carries exactly two
MarkedDivisor excluded_chain() {
    MarkedDivisor d;
    for (int i = 0; i < 4; ++i)
        d.components.push_back(Component{i, "E" + std::to_string(i + 1), -2, false});
    auto corner = [&](int a, int b, int index) {
        SingularityRecord p;
        p.index = index;
        p.components = {a, b};
        p.cls.cls = SingClass::reduced_nondegenerate;
        p.cls.trace = FieldElem(0);
        p.cls.det = FieldElem(-1);
        p.cs.push_back(CsEntry{a, true, FieldElem(-1)});
        p.cs.push_back(CsEntry{b, true, FieldElem(-1)});
        return p;
    };
    auto axis_point = [&](int a, int index) {
        SingularityRecord p;
        p.index = index;
        p.components = {a};
        p.cls.cls = SingClass::reduced_nondegenerate;
        p.cls.trace = FieldElem(0);
        p.cls.det = FieldElem(-1);
        p.cs.push_back(CsEntry{a, true, FieldElem(-1)});
        return p;
    };
    d.points.push_back(corner(0, 1, 0));
    d.points.push_back(corner(1, 2, 1));
    d.points.push_back(corner(2, 3, 2));
    d.points.push_back(axis_point(0, 3));
    d.points.push_back(axis_point(3, 4));
    d.edges.push_back(EdgeRec{0, 1, false, 0});
    d.edges.push_back(EdgeRec{1, 2, false, 1});
    d.edges.push_back(EdgeRec{2, 3, false, 2});
    return d;
}

RatMatrix matmul(const RatMatrix& a, const RatMatrix& b) {
    if (a.empty() || b.empty()) return {};
    RatMatrix r(a.size(), std::vector<Rat>(b[0].size(), Rat(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

bool is_zero_matrix(const RatMatrix& m) {
    for (const auto& row : m)
        for (const auto& v : row)
            if (sgn(v) != 0) return false;
    return true;
}

} // namespace

TEST_SUITE_BEGIN("moduli");

TEST_CASE("group graph of the cusp follows the marked-point rule") {
    auto d = cusp_divisor();
    GroupGraph g = build_group_graph(d);
    REQUIRE(g.vertices == std::vector<std::string>{"E1", "E2", "E3"});
    CHECK(g.dim_v == std::vector<int>{1, 1, 0}); // E3 carries three points
    CHECK(g.dim_e == std::vector<int>{1, 1});
    for (const auto& p : g.prov_v) CHECK(p == "RULE");
}

TEST_CASE("dicritical vertices are forced to zero") {
    auto d = make_divisor(reduce(parse_one_form("x*dy - y*dx")));
    Annotations ann;
    ann.vertex_dims["E1"] = 1; // must not override the forced zero
    GroupGraph g = build_group_graph(d, ann);
    CHECK(g.dim_v == std::vector<int>{0});
}

TEST_CASE("annotations override the heuristic with provenance") {
    auto d = cusp_divisor();
    Annotations ann;
    ann.vertex_dims["E1"] = 0;
    ann.edge_dims["E1:E3"] = 0;
    GroupGraph g = build_group_graph(d, ann);
    CHECK(g.dim_v[0] == 0);
    CHECK(g.prov_v[0] == "ANNOTATION");
    CHECK(g.prov_v[1] == "RULE");
    int e13 = g.edge_index(0, 2);
    CHECK(g.dim_e[e13] == 0);
    CHECK(g.prov_e[e13] == "ANNOTATION");
    CHECK_THROWS_AS(build_group_graph(d, Annotations{{{"E9", 1}}, {}, {}}),
                    std::invalid_argument);
}

TEST_CASE("complex shapes count dimensions") {
    auto c1 = build_complex(path3(1, 1, 1, 1, 1));
    CHECK(c1.dim_v_total == 3);
    CHECK(c1.dim_or_total == 4);
    CHECK(c1.dim_e_total == 2);
    auto c2 = build_complex(path3(0, 0, 0, 0, 0));
    CHECK(c2.dim_v_total == 0);
    CHECK(c2.dim_or_total == 0);
    CHECK(c2.dim_e_total == 0);
    auto star = make_group_graph({"C", "L1", "L2", "L3"}, {{0, 1}, {0, 2}, {0, 3}},
                                 {0, 1, 1, 1}, {1, 1, 1});
    auto c3 = build_complex(star);
    CHECK(c3.dim_v_total == 3);
    CHECK(c3.dim_or_total == 6);
    CHECK(c3.dim_e_total == 3);
}

TEST_CASE("h1 dimensions of the documented examples") {
    CHECK(h1_dimension(build_complex(path3(1, 1, 1, 1, 1))) == 0);
    CHECK(h1_dimension(build_complex(path3(0, 0, 0, 1, 1))) == 2);
    CHECK(h1_dimension(build_complex(make_group_graph({}, {}, {}, {}))) == 0);
    CHECK(h1_dimension(build_complex(make_group_graph({"A", "B"}, {{0, 1}}, {0, 0}, {1}))) == 1);
}

TEST_CASE("active edges of the documented examples") {
    auto a1 = active_edges(path3(1, 1, 1, 1, 1));
    CHECK(a1.a_prime.empty());
    CHECK(a1.tau() == 0);

    auto a2 = active_edges(path3(0, 0, 0, 1, 1));
    CHECK(a2.a_prime.size() == 2);
    CHECK(a2.tau() == 2); // two single-edge components, nothing removed
    CHECK(a2.kappa.size() == 2);

    auto a3 = active_edges(make_group_graph({"A", "B"}, {{0, 1}}, {0, 0}, {1}));
    CHECK(a3.tau() == 1);
    REQUIRE(a3.oriented.size() == 1);
    CHECK(a3.oriented[0].first == 0); // lexicographic choice when both are outside S
}

TEST_CASE("dual oracle: cohomology equals active-edge count on 500 random graphs") {
    std::mt19937_64 rng(987654321);
    int multi_component_instances = 0;
    for (int iter = 0; iter < 500; ++iter) {
        GroupGraph g = random_graph(rng, 12);
        CAPTURE(iter);
        auto c = build_complex(g);
        // d1 . d0 = 0 exactly
        if (!c.d0.empty() && !c.d1.empty()) CHECK(is_zero_matrix(matmul(c.d1, c.d0)));
        long h1 = h1_dimension(c);
        auto act = active_edges(g);
        CHECK(h1 == act.tau());
        // kappa is a bijection onto 1..tau
        std::set<int> slots;
        for (const auto& [e, s] : act.kappa) slots.insert(s);
        CHECK(static_cast<long>(slots.size()) == act.tau());
        if (!slots.empty()) {
            CHECK(*slots.begin() == 1);
            CHECK(*slots.rbegin() == act.tau());
        }
        // removal-choice invariance: 10 random alternatives
        for (int alt = 0; alt < 10; ++alt) {
            auto choice = [&rng](const std::vector<int>& candidates) {
                return static_cast<int>(rng() % candidates.size());
            };
            auto act2 = active_edges_with_choice(g, choice);
            CHECK(act2.tau() == act.tau());
        }
        if (act.a_prime.size() != act.a_dprime.size()) ++multi_component_instances;
    }
    // negative control: skipping the removal step overcounts somewhere
    CHECK(multi_component_instances > 0);
}

TEST_CASE("negative control: A' alone overcounts on the star") {
    auto star = make_group_graph({"C", "L1", "L2", "L3"}, {{0, 1}, {0, 2}, {0, 3}},
                                 {0, 1, 1, 1}, {1, 1, 1});
    auto act = active_edges(star);
    CHECK(act.a_prime.size() == 3);
    CHECK(act.tau() == 0);
    CHECK(h1_dimension(build_complex(star)) == 0);
}

TEST_CASE("no-chain condition excludes exactly the marked chain") {
    auto chain = excluded_chain();
    auto rep = check_no_chain(chain);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.witnesses.size() == 1);
    CHECK(rep.witnesses[0] == std::vector<int>{0, 1, 2, 3});

    CHECK(check_no_chain(cusp_divisor()).holds);

    // single invariant component with three marked points
    MarkedDivisor single;
    single.components.push_back(Component{0, "E1", -1, false});
    for (int i = 0; i < 3; ++i) {
        SingularityRecord p;
        p.index = i;
        p.components = {0};
        p.cls.cls = SingClass::reduced_nondegenerate;
        p.cs.push_back(CsEntry{0, true, FieldElem(-1)});
        single.points.push_back(p);
    }
    CHECK(check_no_chain(single).holds);
}

TEST_CASE("no-chain verdict is invariant under component relabeling") {
    auto chain = excluded_chain();
    std::mt19937_64 rng(5150);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<int> perm = {0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        MarkedDivisor moved;
        moved.components.resize(4);
        for (int i = 0; i < 4; ++i) {
            moved.components[perm[i]] = chain.components[i];
            moved.components[perm[i]].id = perm[i];
        }
        for (auto p : chain.points) {
            for (auto& c : p.components) c = perm[c];
            for (auto& e : p.cs) e.component = perm[e.component];
            std::sort(p.components.begin(), p.components.end());
            moved.points.push_back(p);
        }
        for (auto e : chain.edges) {
            e.a = perm[e.a];
            e.b = perm[e.b];
            if (e.a > e.b) std::swap(e.a, e.b);
            moved.edges.push_back(e);
        }
        auto rep = check_no_chain(moved);
        CHECK_FALSE(rep.holds);
        REQUIRE(rep.witnesses.size() == 1);
        CHECK(rep.witnesses[0].size() == 4);
    }
}

TEST_CASE("braid factors count marked points and corners") {
    CHECK(braid_factors(cusp_divisor()) == std::vector<int>{1, 1, 3});

    MarkedDivisor dic; // one dicritical component with two regular corners
    dic.components.push_back(Component{0, "E1", -1, true});
    dic.components.push_back(Component{1, "E2", -2, false});
    dic.components.push_back(Component{2, "E3", -2, false});
    dic.edges.push_back(EdgeRec{0, 1, true, -1});
    dic.edges.push_back(EdgeRec{0, 2, true, -1});
    auto counts = braid_factors(dic);
    CHECK(counts[0] == 2);

    MarkedDivisor lone;
    lone.components.push_back(Component{0, "E1", -1, false});
    CHECK(braid_factors(lone) == std::vector<int>{0});
}

TEST_CASE("moduli skeleton of the cusp") {
    auto d = cusp_divisor();
    auto sk = moduli_skeleton(d);
    CHECK(sk.tau == 0);
    CHECK(sk.nc.holds);
    CHECK(sk.tr == TrVerdict::unknown);
    CHECK(sk.braid_counts == std::vector<int>{1, 1, 3});
    CHECK_FALSE(sk.assumptions.empty());
    Json j = skeleton_to_json(sk, d);
    CHECK(j.at("tau") == 0);
    CHECK(j.at("unitary_quotient_group") == "UNKNOWN");
    CHECK(j.at("lattice_rank") == "UNKNOWN");
}

TEST_CASE("annotations drive tau") {
    auto d = cusp_divisor();
    Annotations ann;
    ann.vertex_dims["E1"] = 0;
    ann.vertex_dims["E2"] = 0;
    ann.tr = true;
    auto sk = moduli_skeleton(d, ann);
    CHECK(sk.tau == 2); // both corner edges become isolated dim-1 edges
    CHECK(sk.tr == TrVerdict::annotated_true);
}

TEST_CASE("the moduli gate requires a generalized curve") {
    auto o = reduce(parse_one_form("-y^2*dx + x*dy"));
    auto d = make_divisor(o);
    CHECK_FALSE(d.generalized_curve);
    CHECK_THROWS_AS(moduli_skeleton(d), std::invalid_argument);
}

TEST_CASE("tau route disagreement raises the consistency error") {
    CHECK_THROWS_AS(verify_tau_consistency(1, 2), TauMismatch);
    CHECK_NOTHROW(verify_tau_consistency(3, 3));
}

TEST_SUITE_END();
