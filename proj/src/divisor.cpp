#include "folia/divisor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "folia/ratmat.hpp"

namespace folia {

int MarkedDivisor::points_on(int comp) const {
    int n = 0;
    for (const auto& p : points)
        if (std::find(p.components.begin(), p.components.end(), comp) != p.components.end())
            ++n;
    return n;
}

std::vector<int> MarkedDivisor::edges_at(int comp) const {
    std::vector<int> r;
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].a == comp || edges[i].b == comp) r.push_back(static_cast<int>(i));
    return r;
}

std::vector<std::string> validate_divisor(const MarkedDivisor& d) {
    std::vector<std::string> bad;
    const size_t n = d.components.size();
    if (n > 0) {
        if (d.edges.size() != n - 1)
            bad.push_back("dual graph is not a tree: |edges| != |components| - 1");
        // connectivity
        std::vector<int> comp_of(n, -1);
        std::vector<size_t> stack = {0};
        comp_of[0] = 0;
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (const auto& e : d.edges) {
                size_t w = SIZE_MAX;
                if (static_cast<size_t>(e.a) == v) w = e.b;
                if (static_cast<size_t>(e.b) == v) w = e.a;
                if (w != SIZE_MAX && comp_of[w] < 0) {
                    comp_of[w] = 0;
                    stack.push_back(w);
                }
            }
        }
        if (std::count(comp_of.begin(), comp_of.end(), -1) > 0)
            bad.push_back("dual graph is not connected");
    }
    for (const auto& p : d.points) {
        if (p.components.empty() || p.components.size() > 2)
            bad.push_back("marked point lies on " + std::to_string(p.components.size()) +
                          " components");
        for (int c : p.components)
            if (d.components.at(c).dicritical)
                bad.push_back("marked point on dicritical component " +
                              d.components[c].name);
    }
    for (const auto& e : d.edges)
        if (e.a == e.b) bad.push_back("self-loop edge in the dual graph");
    return bad;
}

MarkedDivisor make_divisor(const ReductionOutcome& out) {
    if (out.status != ReduceStatus::complete)
        throw std::invalid_argument("make_divisor: reduction outcome is not COMPLETE");
    MarkedDivisor d;
    d.components = out.components;
    d.edges = out.edges;
    d.points = out.points;
    d.generalized_curve = out.generalized_curve;
    std::sort(d.edges.begin(), d.edges.end(), [](const EdgeRec& x, const EdgeRec& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    auto bad = validate_divisor(d);
    if (!bad.empty())
        throw std::invalid_argument("make_divisor: " + bad.front());
    return d;
}

IntersectionMatrix intersection_matrix(const MarkedDivisor& d) {
    size_t n = d.components.size();
    IntersectionMatrix m(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = d.components[i].self_intersection;
    for (const auto& e : d.edges) {
        m[e.a][e.b] = 1;
        m[e.b][e.a] = 1;
    }
    return m;
}

bool is_negative_definite(const IntersectionMatrix& m) {
    size_t n = m.size();
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Int>> minor(k, std::vector<Int>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) minor[i][j] = m[i][j];
        Int det = int_det(minor);
        int want = (k % 2 == 0) ? 1 : -1;
        if (sgn(det) != want) return false;
    }
    return true;
}

std::vector<CsResidual> verify_camacho_sad(const MarkedDivisor& d) {
    std::vector<CsResidual> out;
    for (const auto& c : d.components) {
        if (c.dicritical) continue;
        CsResidual r;
        r.component = c.id;
        r.determined = true;
        FieldElem sum;
        for (const auto& p : d.points)
            for (const auto& e : p.cs)
                if (e.component == c.id) {
                    if (!e.determined) r.determined = false;
                    else sum += e.value;
                }
        r.residual = sum - FieldElem(static_cast<long>(c.self_intersection));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<int> nodal_corner_edges(const MarkedDivisor& d) {
    std::vector<int> out;
    for (size_t i = 0; i < d.edges.size(); ++i) {
        const auto& e = d.edges[i];
        if (e.point >= 0 && d.points.at(e.point).cls.nodal == Tri::yes)
            out.push_back(static_cast<int>(i));
    }
    return out;
}

// --- JSON ------------------------------------------------------------------

Json field_elem_to_json(const FieldElem& e) {
    if (e.level() == 0) return rat_to_string(e.rat());
    Json coords = Json::array();
    for (const auto& c : e.coords()) coords.push_back(field_elem_to_json(c));
    return Json{{"level", e.level()}, {"coords", coords}};
}

FieldElem field_elem_from_json(const Json& j, const TowerPtr& tower) {
    if (j.is_string()) return FieldElem(rat_from_string(j.get<std::string>()));
    if (!j.is_object() || !j.contains("level") || !j.contains("coords"))
        throw std::invalid_argument("scalar: expected \"p/q\" or {level, coords}");
    int level = j.at("level").get<int>();
    if (!tower || level < 1 || level > tower->height())
        throw std::invalid_argument("scalar: level outside the declared tower");
    std::vector<FieldElem> coords;
    for (const auto& c : j.at("coords")) coords.push_back(field_elem_from_json(c, tower));
    return FieldElem(tower, level, std::move(coords));
}

Json tower_to_json(const TowerPtr& t) {
    Json levels = Json::array();
    for (int k = 1; k <= tower_height(t); ++k) {
        Json mp = Json::array();
        for (const auto& c : t->level(k).minpoly) mp.push_back(field_elem_to_json(c));
        levels.push_back(Json{{"minpoly", mp}});
    }
    return levels;
}

TowerPtr tower_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("tower: expected an array of levels");
    TowerPtr t;
    for (const auto& lv : j) {
        std::vector<FieldElem> mp;
        for (const auto& c : lv.at("minpoly")) mp.push_back(field_elem_from_json(c, t));
        t = Tower::extend(t, std::move(mp));
    }
    return t;
}

namespace {

const char* tri_name(Tri t) {
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "unknown";
    }
}

Tri tri_from(const std::string& s) {
    if (s == "yes") return Tri::yes;
    if (s == "no") return Tri::no;
    if (s == "unknown") return Tri::unknown;
    throw std::invalid_argument("bad tri-state value '" + s + "'");
}

SingClass class_from(const std::string& s) {
    for (SingClass c : {SingClass::regular, SingClass::reduced_nondegenerate,
                        SingClass::saddle_node, SingClass::non_reduced,
                        SingClass::undetermined})
        if (to_string(c) == s) return c;
    throw std::invalid_argument("bad classification '" + s + "'");
}

} // namespace

Json divisor_to_json(const MarkedDivisor& d) {
    Json j;
    j["fmv"] = 1;
    j["generalized_curve"] = d.generalized_curve;
    Json comps = Json::array();
    for (const auto& c : d.components)
        comps.push_back(Json{{"name", c.name},
                             {"self_intersection", c.self_intersection},
                             {"dicritical", c.dicritical}});
    j["components"] = comps;
    Json edges = Json::array();
    for (const auto& e : d.edges)
        edges.push_back(Json{{"a", d.components[e.a].name},
                             {"b", d.components[e.b].name},
                             {"regular_corner", e.regular_corner},
                             {"point", e.point}});
    j["edges"] = edges;
    Json pts = Json::array();
    for (const auto& p : d.points) {
        Json pj;
        pj["chart"] = p.chart;
        Json pcs = Json::array();
        for (int c : p.components) pcs.push_back(d.components[c].name);
        pj["components"] = pcs;
        pj["tower"] = tower_to_json(p.tower);
        pj["coordinate"] = field_elem_to_json(p.coordinate);
        pj["class"] = to_string(p.cls.cls);
        pj["trace"] = field_elem_to_json(p.cls.trace);
        pj["det"] = field_elem_to_json(p.cls.det);
        pj["nodal"] = tri_name(p.cls.nodal);
        pj["saddle_node"] = p.cls.cls == SingClass::saddle_node;
        Json cs = Json::array();
        for (const auto& e : p.cs) {
            Json ej;
            ej["component"] = d.components[e.component].name;
            ej["determined"] = e.determined;
            if (e.determined) ej["value"] = field_elem_to_json(e.value);
            cs.push_back(ej);
        }
        pj["cs"] = cs;
        pts.push_back(pj);
    }
    j["points"] = pts;
    return j;
}

MarkedDivisor divisor_from_json(const Json& j) {
    auto ctx_get = [&](const Json& obj, const char* key, const char* where) -> const Json& {
        if (!obj.contains(key))
            throw std::invalid_argument(std::string("divisor JSON: missing '") + key +
                                        "' in " + where);
        return obj.at(key);
    };
    if (!j.is_object() || !j.contains("fmv"))
        throw std::invalid_argument("divisor JSON: missing version field 'fmv'");
    if (j.at("fmv").get<int>() != 1)
        throw std::invalid_argument("divisor JSON: unsupported version");
    MarkedDivisor d;
    d.generalized_curve = ctx_get(j, "generalized_curve", "root").get<bool>();
    std::map<std::string, int> by_name;
    int idx = 0;
    for (const auto& cj : ctx_get(j, "components", "root")) {
        Component c;
        c.id = idx++;
        c.name = ctx_get(cj, "name", "components").get<std::string>();
        c.self_intersection = ctx_get(cj, "self_intersection", "components").get<int>();
        c.dicritical = ctx_get(cj, "dicritical", "components").get<bool>();
        by_name[c.name] = c.id;
        d.components.push_back(std::move(c));
    }
    auto comp_id = [&](const std::string& n, const char* where) {
        auto it = by_name.find(n);
        if (it == by_name.end())
            throw std::invalid_argument(std::string("divisor JSON: unknown component '") + n +
                                        "' in " + where);
        return it->second;
    };
    for (const auto& ej : ctx_get(j, "edges", "root")) {
        EdgeRec e;
        e.a = comp_id(ctx_get(ej, "a", "edges").get<std::string>(), "edges");
        e.b = comp_id(ctx_get(ej, "b", "edges").get<std::string>(), "edges");
        if (e.a > e.b) std::swap(e.a, e.b);
        e.regular_corner = ctx_get(ej, "regular_corner", "edges").get<bool>();
        e.point = ctx_get(ej, "point", "edges").get<int>();
        d.edges.push_back(e);
    }
    int pidx = 0;
    for (const auto& pj : ctx_get(j, "points", "root")) {
        SingularityRecord p;
        p.index = pidx++;
        p.chart = ctx_get(pj, "chart", "points").get<std::string>();
        p.tower = tower_from_json(ctx_get(pj, "tower", "points"));
        for (const auto& cn : ctx_get(pj, "components", "points"))
            p.components.push_back(comp_id(cn.get<std::string>(), "points"));
        p.coordinate = field_elem_from_json(ctx_get(pj, "coordinate", "points"), p.tower);
        p.cls.cls = class_from(ctx_get(pj, "class", "points").get<std::string>());
        p.cls.trace = field_elem_from_json(ctx_get(pj, "trace", "points"), p.tower);
        p.cls.det = field_elem_from_json(ctx_get(pj, "det", "points"), p.tower);
        p.cls.nodal = tri_from(ctx_get(pj, "nodal", "points").get<std::string>());
        for (const auto& ej : ctx_get(pj, "cs", "points")) {
            CsEntry e;
            e.component = comp_id(ctx_get(ej, "component", "cs").get<std::string>(), "cs");
            e.determined = ctx_get(ej, "determined", "cs").get<bool>();
            if (e.determined)
                e.value = field_elem_from_json(ctx_get(ej, "value", "cs"), p.tower);
            p.cs.push_back(std::move(e));
        }
        d.points.push_back(std::move(p));
    }
    auto bad = validate_divisor(d);
    if (!bad.empty())
        throw std::invalid_argument("divisor JSON: " + bad.front());
    return d;
}

std::string to_dot(const MarkedDivisor& d) {
    std::ostringstream os;
    os << "graph divisor {\n";
    os << "  node [shape=circle];\n";
    for (const auto& c : d.components) {
        os << "  " << c.name << " [label=\"" << c.name << " (" << c.self_intersection
           << ")";
        if (c.dicritical) os << " dic";
        int np = d.points_on(c.id);
        if (np > 0) os << ", " << np << " sing";
        os << "\"];\n";
    }
    for (const auto& e : d.edges) {
        os << "  " << d.components[e.a].name << " -- " << d.components[e.b].name
           << " [label=\"";
        if (e.regular_corner) {
            os << "regular corner";
        } else if (e.point >= 0) {
            const auto& p = d.points[e.point];
            bool first = true;
            for (const auto& cs : p.cs) {
                if (!first) os << ", ";
                first = false;
                os << "CS(" << d.components[cs.component].name << ")=";
                os << (cs.determined ? cs.value.to_string() : "?");
            }
            if (p.cls.nodal == Tri::yes) os << ", nodal";
            if (p.cls.nodal == Tri::unknown) os << ", nodal?";
        }
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace folia
