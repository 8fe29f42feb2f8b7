#include "folia/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace folia {

std::string to_string(SingClass c) {
    switch (c) {
    case SingClass::regular: return "REGULAR";
    case SingClass::reduced_nondegenerate: return "REDUCED_NONDEGENERATE";
    case SingClass::saddle_node: return "SADDLE_NODE";
    case SingClass::non_reduced: return "NON_REDUCED";
    case SingClass::undetermined: return "UNDETERMINED";
    }
    return "?";
}

Classification classify_linear_part(const Mat2& J) {
    Classification out;
    out.trace = J.trace();
    out.det = J.det();
    const FieldElem& T = out.trace;
    const FieldElem& D = out.det;
    if (D.is_zero()) {
        out.cls = T.is_zero() ? SingClass::non_reduced : SingClass::saddle_node;
        return out;
    }
    FieldElem disc = T * T - FieldElem(4) * D;
    FieldElem s;
    switch (disc.square_root(&s)) {
    case Tri::yes: {
        FieldElem half(Rat(1, 2));
        FieldElem mu1 = (T + s) * half;
        FieldElem mu2 = (T - s) * half;
        FieldElem ratio = mu1 / mu2; // both nonzero since D != 0
        out.ratio = ratio;
        if (ratio.is_rational()) {
            Rat r = ratio.to_rational();
            if (sgn(r) > 0) {
                out.cls = SingClass::non_reduced; // ratio in Q_{>0}
            } else {
                out.cls = SingClass::reduced_nondegenerate;
                out.nodal = Tri::no;
            }
            return out;
        }
        // ratio lives in the field but is irrational: reduced; nodal iff the
        // ratio is a strictly positive real
        out.cls = SingClass::reduced_nondegenerate;
        switch (ratio.is_real()) {
        case Tri::no: out.nodal = Tri::no; break;
        case Tri::yes:
            if (auto sg = ratio.sign())
                out.nodal = *sg > 0 ? Tri::yes : Tri::no;
            else
                out.nodal = Tri::unknown;
            break;
        case Tri::unknown: out.nodal = Tri::unknown; break;
        }
        return out;
    }
    case Tri::no: {
        // non-square discriminant: a rational ratio is impossible except the
        // T = 0 case, whose ratio is -1; always reduced
        out.cls = SingClass::reduced_nondegenerate;
        if (T.is_zero()) {
            out.ratio = FieldElem(-1);
            out.nodal = Tri::no;
            return out;
        }
        auto sd = disc.sign();
        auto sD = D.sign();
        if (sd && sD)
            out.nodal = (*sd > 0 && *sD > 0) ? Tri::yes : Tri::no;
        else
            out.nodal = Tri::unknown;
        return out;
    }
    case Tri::unknown:
        out.cls = SingClass::undetermined;
        out.note = "square test undecidable for the discriminant in this tower";
        return out;
    }
    return out;
}

FieldElem camacho_sad_index(const Mat2& J, Axis branch) {
    if (branch == Axis::x) {
        if (!J.c.is_zero())
            throw std::invalid_argument("camacho_sad_index: {y=0} is not an eigendirection");
        if (J.a.is_zero())
            throw std::invalid_argument("camacho_sad_index: tangent eigenvalue vanishes");
        return J.d / J.a;
    }
    if (!J.b.is_zero())
        throw std::invalid_argument("camacho_sad_index: {x=0} is not an eigendirection");
    if (J.d.is_zero())
        throw std::invalid_argument("camacho_sad_index: tangent eigenvalue vanishes");
    return J.a / J.d;
}

// --- blow-up --------------------------------------------------------------

BlowUpCharts blow_up_origin(const Chart& c, int new_component) {
    const Poly2& A = c.form.a;
    const Poly2& B = c.form.b;
    if (!vanishes_at_origin(c.form))
        throw std::invalid_argument("blow_up: center is not singular");
    OneForm w{A, B};
    int nu = multiplicity(w);
    // tangent cone x*A_nu + y*B_nu; identically zero <=> dicritical
    Poly2 tangent = Poly2::var_x() * A.homogeneous_part(nu) +
                    Poly2::var_y() * B.homogeneous_part(nu);
    bool dicritical = tangent.is_zero();
    int k = nu + (dicritical ? 1 : 0);

    BlowUpCharts out;
    out.dicritical = dicritical;
    out.nu = nu;

    {
        Poly2 A0 = A.subst_y_xy();
        Poly2 B0 = B.subst_y_xy();
        Poly2 na = A0 + Poly2::var_y() * B0;
        Poly2 nb = Poly2::var_x() * B0;
        out.chart0.form = OneForm{na.divide_x(k), nb.divide_x(k)};
        out.chart0.id = c.id + "0";
        out.chart0.tower = c.tower;
        out.chart0.branches = {{Axis::y, new_component}};
        int old_x;
        if (c.has_branch(Axis::x, &old_x))
            out.chart0.branches.push_back({Axis::x, old_x});
    }
    {
        Poly2 A1 = A.subst_x_xy();
        Poly2 B1 = B.subst_x_xy();
        Poly2 na = Poly2::var_y() * A1;
        Poly2 nb = Poly2::var_x() * A1 + B1;
        out.chart1.form = OneForm{na.divide_y(k), nb.divide_y(k)};
        out.chart1.id = c.id + "1";
        out.chart1.tower = c.tower;
        out.chart1.branches = {{Axis::x, new_component}};
        int old_y;
        if (c.has_branch(Axis::y, &old_y))
            out.chart1.branches.push_back({Axis::y, old_y});
    }
    return out;
}

BlowUpCharts blow_up_point(const Chart& c, const FieldElem& cx, const FieldElem& cy,
                           int new_component) {
    Chart moved = c;
    moved.form.a = c.form.a.translate_x(cx).translate_y(cy);
    moved.form.b = c.form.b.translate_x(cx).translate_y(cy);
    moved.branches.clear();
    for (const auto& b : c.branches) {
        if (b.axis == Axis::x && cy.is_zero()) moved.branches.push_back(b);
        if (b.axis == Axis::y && cx.is_zero()) moved.branches.push_back(b);
    }
    return blow_up_origin(moved, new_component);
}

AxisPoints find_divisor_singularities(const BlowUpCharts& bu, long tower_degree_cap) {
    AxisPoints out;
    out.tower = bu.chart0.tower;
    UniPoly ra = bu.chart0.form.a.restrict_x0();
    UniPoly rb = bu.chart0.form.b.restrict_x0();
    UniPoly g = UniPoly::gcd(ra, rb);
    if (g.is_zero())
        throw std::logic_error("strict transform vanishes along the exceptional axis");
    if (g.degree() >= 1) {
        RootSearch rs = roots_in_field(g, bu.chart0.tower, tower_degree_cap);
        out.on_chart0 = std::move(rs.roots);
        out.tower = rs.tower;
        out.extended = rs.extended;
        std::sort(out.on_chart0.begin(), out.on_chart0.end(),
                  [](const FieldElem& a, const FieldElem& b) {
                      return FieldElem::cmp_key(a, b) < 0;
                  });
    }
    out.at_infinity = bu.chart1.form.a.coeff(0, 0).is_zero() &&
                      bu.chart1.form.b.coeff(0, 0).is_zero();
    return out;
}

// --- the reduction engine ---------------------------------------------------

namespace {

struct WorkItem {
    Chart chart;            // origin is the point in question
    FieldElem sort_coord;   // coordinate the point had on the axis it was found on
    int depth = 0;
};

bool axis_invariant(const OneForm& w, Axis a) {
    return a == Axis::x ? w.a.divisible_y(1) : w.b.divisible_x(1);
}

struct Engine {
    ReduceConfig cfg;
    ReductionOutcome out;
    std::vector<WorkItem> pending;

    void sort_pending() {
        std::stable_sort(pending.begin(), pending.end(),
                         [](const WorkItem& a, const WorkItem& b) {
                             if (a.chart.id != b.chart.id) return a.chart.id < b.chart.id;
                             return FieldElem::cmp_key(a.sort_coord, b.sort_coord) < 0;
                         });
    }

    void record_point(const WorkItem& it, Classification cls) {
        SingularityRecord rec;
        rec.index = static_cast<int>(out.points.size());
        rec.chart = it.chart.id;
        rec.coordinate = it.sort_coord;
        rec.tower = it.chart.tower;
        rec.cls = cls;
        for (const auto& b : it.chart.branches) rec.components.push_back(b.component);
        std::sort(rec.components.begin(), rec.components.end());

        VectorField2 X = dual_vector_field(it.chart.form);
        Mat2 J = linear_part(X);
        bool on_dicritical_violation = false;
        for (const auto& b : it.chart.branches) {
            CsEntry e;
            e.component = b.component;
            if (cls.cls == SingClass::reduced_nondegenerate &&
                axis_invariant(it.chart.form, b.axis)) {
                e.value = camacho_sad_index(J, b.axis);
                e.determined = true;
            } else {
                e.determined = false; // saddle-node or non-invariant branch
            }
            if (out.components[b.component].dicritical &&
                cls.cls != SingClass::non_reduced)
                on_dicritical_violation = true;
            rec.cs.push_back(e);
        }
        std::sort(rec.cs.begin(), rec.cs.end(),
                  [](const CsEntry& a, const CsEntry& b) { return a.component < b.component; });

        if (cls.cls == SingClass::saddle_node) out.generalized_curve = false;
        if (cls.cls == SingClass::undetermined) {
            out.status = ReduceStatus::undetermined;
            if (!out.note.empty()) out.note += "; ";
            out.note += "point in chart " + it.chart.id + ": " + cls.note;
        }
        if (on_dicritical_violation) {
            out.status = ReduceStatus::undetermined;
            if (!out.note.empty()) out.note += "; ";
            out.note += "reduced singularity sits on a dicritical component (chart " +
                        it.chart.id + "): outside the supported model";
        }

        // wire the record into corner edges
        if (rec.components.size() == 2) {
            for (auto& e : out.edges)
                if (e.a == rec.components[0] && e.b == rec.components[1]) {
                    e.point = rec.index;
                    e.regular_corner = false;
                }
        }
        out.points.push_back(std::move(rec));
    }

    void add_edge(int a, int b) {
        if (a > b) std::swap(a, b);
        out.edges.push_back(EdgeRec{a, b, true, -1}); // regular until a record claims it
    }

    void remove_edge(int a, int b) {
        if (a > b) std::swap(a, b);
        for (size_t i = 0; i < out.edges.size(); ++i)
            if (out.edges[i].a == a && out.edges[i].b == b) {
                out.edges.erase(out.edges.begin() + static_cast<long>(i));
                return;
            }
        throw std::logic_error("remove_edge: edge not present");
    }

    void blow_up(const WorkItem& it) {
        int new_id = static_cast<int>(out.components.size());
        BlowUpCharts bu = blow_up_origin(it.chart, new_id);

        Component comp;
        comp.id = new_id;
        comp.name = "E" + std::to_string(new_id + 1);
        comp.self_intersection = -1;
        comp.dicritical = bu.dicritical;
        out.components.push_back(comp);
        ++out.blow_up_count;

        std::ostringstream center;
        if (it.chart.id.empty()) {
            center << "origin";
        } else {
            center << "chart " << it.chart.id << ", ";
            if (it.chart.branches.size() == 2)
                center << "corner " << out.components[it.chart.branches[0].component].name
                       << "/" << out.components[it.chart.branches[1].component].name;
            else if (it.chart.branches.size() == 1)
                center << "on " << out.components[it.chart.branches[0].component].name
                       << " at " << it.sort_coord.to_string();
            else
                center << "isolated point";
        }
        out.tree.push_back(BlowUpNode{it.chart.id, center.str(), new_id, bu.nu, bu.dicritical});

        // intersection bookkeeping
        int old_x = -1, old_y = -1;
        it.chart.has_branch(Axis::x, &old_x);
        it.chart.has_branch(Axis::y, &old_y);
        if (old_x >= 0) out.components[old_x].self_intersection -= 1;
        if (old_y >= 0) out.components[old_y].self_intersection -= 1;
        if (old_x >= 0 && old_y >= 0) remove_edge(old_x, old_y);
        if (old_x >= 0) add_edge(old_x, new_id);
        if (old_y >= 0) add_edge(old_y, new_id);

        AxisPoints pts = find_divisor_singularities(bu, cfg.tower_degree_cap);
        if (pts.extended) {
            bu.chart0.tower = pts.tower;
            bu.chart1.tower = pts.tower;
        }

        for (const auto& cy : pts.on_chart0) {
            WorkItem child;
            child.depth = it.depth + 1;
            child.sort_coord = cy;
            child.chart.id = bu.chart0.id;
            child.chart.tower = pts.tower;
            child.chart.form.a = bu.chart0.form.a.translate_y(cy);
            child.chart.form.b = bu.chart0.form.b.translate_y(cy);
            child.chart.branches = {{Axis::y, new_id}};
            if (cy.is_zero() && old_x >= 0)
                child.chart.branches.push_back({Axis::x, old_x});
            pending.push_back(std::move(child));
        }
        if (pts.at_infinity) {
            WorkItem child;
            child.depth = it.depth + 1;
            child.sort_coord = FieldElem(0);
            child.chart = bu.chart1;
            pending.push_back(std::move(child));
        }
    }

    void run(const OneForm& w) {
        if (!vanishes_at_origin(w)) {
            out.origin_singular = false;
            out.origin_class = Classification{};
            out.origin_class->cls = SingClass::regular;
            return;
        }
        WorkItem root;
        root.chart = Chart{"", w, nullptr, {}};
        root.sort_coord = FieldElem(0);
        pending.push_back(root);
        bool first = true;
        while (!pending.empty()) {
            sort_pending();
            WorkItem it = pending.front();
            pending.erase(pending.begin());
            VectorField2 X = dual_vector_field(it.chart.form);
            Classification cls = classify_linear_part(linear_part(X));
            if (cls.cls == SingClass::non_reduced) {
                if (out.blow_up_count >= cfg.max_blow_ups) {
                    out.status = ReduceStatus::depth_limit;
                    out.note = "blow-up limit reached (" + std::to_string(cfg.max_blow_ups) + ")";
                    return;
                }
                blow_up(it);
            } else if (first) {
                out.origin_class = cls;
                if (cls.cls == SingClass::saddle_node) out.generalized_curve = false;
                if (cls.cls == SingClass::undetermined) {
                    out.status = ReduceStatus::undetermined;
                    out.note = cls.note;
                }
            } else {
                record_point(it, cls);
            }
            first = false;
        }
    }
};

} // namespace

ReductionOutcome reduce(const OneForm& w, const ReduceConfig& cfg) {
    if (w.is_zero()) throw std::invalid_argument("reduce: zero form");
    Engine eng;
    eng.cfg = cfg;
    try {
        eng.run(w);
    } catch (const Undetermined& u) {
        eng.out.status = ReduceStatus::undetermined;
        if (!eng.out.note.empty()) eng.out.note += "; ";
        eng.out.note += u.what();
    }
    return eng.out;
}

} // namespace folia
