#include "folia/jetlab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace folia {

std::vector<KsTransition> build_ks_transitions(const KsConfig& cfg) {
    if (cfg.order < 2)
        throw std::invalid_argument("kodaira-spencer: order too low to distinguish the "
                                    "derivative table (need at least 2)");
    for (const auto& a : cfg.active)
        if (a.slot < 1 || static_cast<size_t>(a.slot) > cfg.ztilde.size())
            throw std::invalid_argument("kodaira-spencer: base point has no value for slot " +
                                        std::to_string(a.slot));
    std::vector<KsTransition> out;
    for (size_t e = 0; e < cfg.graph.edges.size(); ++e) {
        auto [va, vb] = cfg.graph.edges[e];
        const KsEdgeConfig* act = nullptr;
        for (const auto& a : cfg.active)
            if (a.edge == static_cast<int>(e)) act = &a;
        for (int from : {va, vb}) {
            KsTransition t;
            t.edge = static_cast<int>(e);
            t.from_vertex = from;
            if (!act) {
                t.form = KsTransition::Form::identity;
                t.map = jet_identity(cfg.order);
            } else if (act->from_vertex == from) {
                // exp(X_e) at time z_k - ztilde_k, i.e. at the shifted parameter
                t.form = KsTransition::Form::forward;
                t.map = flow(act->field, PPoly::param(act->slot - 1), cfg.order);
            } else {
                // the opposite orientation carries the compositional inverse
                t.form = KsTransition::Form::backward;
                t.map = jet_inverse(flow(act->field, PPoly::param(act->slot - 1), cfg.order));
            }
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<KsVerdict> kodaira_spencer_check(const KsConfig& cfg,
                                             const std::vector<KsTransition>& transitions) {
    std::vector<KsVerdict> out;
    size_t nslots = cfg.ztilde.size();
    for (const auto& t : transitions) {
        const KsEdgeConfig* act = nullptr;
        for (const auto& a : cfg.active)
            if (a.edge == t.edge) act = &a;
        for (size_t k = 1; k <= nslots; ++k) {
            KsVerdict v;
            v.edge = t.edge;
            v.from_vertex = t.from_vertex;
            v.slot = static_cast<int>(k);
            Jet2 d1 = t.map.f1.dparam(static_cast<int>(k) - 1).params_at_zero();
            Jet2 d2 = t.map.f2.dparam(static_cast<int>(k) - 1).params_at_zero();
            Jet2 want1(cfg.order), want2(cfg.order);
            v.expected = "0";
            if (act && act->slot == static_cast<int>(k)) {
                if (act->from_vertex == t.from_vertex) {
                    v.expected = "X";
                    want1 = act->field.p;
                    want2 = act->field.q;
                } else {
                    v.expected = "-X";
                    want1 = -act->field.p;
                    want2 = -act->field.q;
                }
            }
            v.match = (d1 == want1) && (d2 == want2);
            out.push_back(std::move(v));
        }
    }
    return out;
}

// --- scenarios ---------------------------------------------------------------

namespace {

JetVectorField field_from_json(const Json& fj, int order) {
    std::string kind = fj.at("kind").get<std::string>();
    if (kind == "euler") {
        JetVectorField z;
        z.p = Jet2(order);
        z.q = Jet2::coordinate(2, order);
        return z;
    }
    if (kind == "resonant_generator") {
        LocalModel m = local_model_resonant(fj.at("a").get<int>(), fj.at("b").get<int>(),
                                            fj.at("k").get<int>(),
                                            FieldElem(rat_from_string(
                                                fj.at("zeta").get<std::string>())),
                                            order);
        return m.generator;
    }
    if (kind == "poly") {
        JetVectorField z;
        z.p = Jet2(order);
        z.q = Jet2(order);
        auto read = [&](const Json& comp, Jet2& into) {
            for (const auto& term : comp) {
                int i = term.at(0).get<int>();
                int j = term.at(1).get<int>();
                FieldElem c(rat_from_string(term.at(2).get<std::string>()));
                if (i == 0 && j == 0)
                    throw std::invalid_argument("scenario: fields must vanish at the corner");
                into.set(i, j, PPoly::constant(c) + into.coeff(i, j));
            }
        };
        if (fj.contains("p")) read(fj.at("p"), z.p);
        if (fj.contains("q")) read(fj.at("q"), z.q);
        return z;
    }
    throw std::invalid_argument("scenario: unknown field kind '" + kind + "'");
}

} // namespace

ScenarioResult run_scenario(const Json& j) {
    if (!j.is_object() || !j.contains("fmv"))
        throw std::invalid_argument("scenario: missing version field 'fmv'");
    if (j.at("fmv").get<int>() != 1)
        throw std::invalid_argument("scenario: unsupported version");
    int order = j.at("order").get<int>();

    std::vector<std::string> vertices;
    for (const auto& v : j.at("tree").at("vertices")) vertices.push_back(v.get<std::string>());
    std::vector<std::pair<int, int>> edges;
    auto vidx = [&](const std::string& n) {
        auto it = std::find(vertices.begin(), vertices.end(), n);
        if (it == vertices.end())
            throw std::invalid_argument("scenario: unknown vertex '" + n + "'");
        return static_cast<int>(it - vertices.begin());
    };
    for (const auto& e : j.at("tree").at("edges"))
        edges.emplace_back(vidx(e.at(0).get<std::string>()), vidx(e.at(1).get<std::string>()));

    std::vector<int> dimv(vertices.size(), 0), dime(edges.size(), 0);
    GroupGraph skeleton = make_group_graph(vertices, edges, dimv, dime); // sorts edges
    if (j.contains("dims")) {
        const Json& d = j.at("dims");
        if (d.contains("vertices"))
            for (auto it = d.at("vertices").begin(); it != d.at("vertices").end(); ++it)
                skeleton.dim_v[static_cast<size_t>(vidx(it.key()))] = it.value().get<int>();
        if (d.contains("edges"))
            for (auto it = d.at("edges").begin(); it != d.at("edges").end(); ++it) {
                bool found = false;
                for (size_t e = 0; e < skeleton.edges.size(); ++e)
                    if (skeleton.edge_name(static_cast<int>(e)) == it.key()) {
                        skeleton.dim_e[e] = it.value().get<int>();
                        found = true;
                    }
                if (!found)
                    throw std::invalid_argument("scenario: unknown edge '" + it.key() + "'");
            }
    }

    ActiveEdges act = active_edges(skeleton);

    KsConfig cfg;
    cfg.graph = skeleton;
    cfg.order = order;
    for (const auto& z : j.at("ztilde")) cfg.ztilde.push_back(rat_from_string(z.get<std::string>()));
    if (cfg.ztilde.size() < static_cast<size_t>(act.tau()))
        throw std::invalid_argument("scenario: ztilde shorter than the number of slots");

    std::set<std::string> corrupted;
    if (j.contains("corrupt_sign"))
        for (const auto& e : j.at("corrupt_sign")) corrupted.insert(e.get<std::string>());

    for (auto [v, e] : act.oriented) {
        KsEdgeConfig ec;
        ec.edge = e;
        ec.from_vertex = v;
        ec.slot = act.kappa.at(e);
        std::string ename = skeleton.edge_name(e);
        if (!j.contains("fields") || !j.at("fields").contains(ename))
            throw std::invalid_argument("scenario: no field given for active edge " + ename);
        ec.field = field_from_json(j.at("fields").at(ename), order);
        cfg.active.push_back(std::move(ec));
    }

    auto transitions = build_ks_transitions(cfg);
    if (!corrupted.empty()) {
        // negative control: flip the sign of the forward transition's field
        for (auto& t : transitions) {
            if (t.form != KsTransition::Form::forward) continue;
            if (!corrupted.count(skeleton.edge_name(t.edge))) continue;
            for (auto& a : cfg.active)
                if (a.edge == t.edge) {
                    JetVectorField neg{-a.field.p, -a.field.q};
                    t.map = flow(neg, PPoly::param(a.slot - 1), cfg.order);
                }
        }
    }
    auto verdicts = kodaira_spencer_check(cfg, transitions);

    ScenarioResult res;
    res.verdicts = verdicts;
    std::ostringstream os;
    os << "edge        from        slot  expected  verdict\n";
    for (const auto& v : verdicts) {
        std::string ename = skeleton.edge_name(v.edge);
        std::string fname = skeleton.vertices[v.from_vertex];
        os << ename << std::string(ename.size() < 12 ? 12 - ename.size() : 1, ' ')
           << fname << std::string(fname.size() < 12 ? 12 - fname.size() : 1, ' ')
           << v.slot << "     " << v.expected
           << std::string(v.expected.size() < 10 ? 10 - v.expected.size() : 1, ' ')
           << (v.match ? "MATCH" : "FAIL") << "\n";
        if (!v.match) res.all_match = false;
    }
    if (verdicts.empty()) os << "(no edges)\n";
    res.table = os.str();
    return res;
}

} // namespace folia
