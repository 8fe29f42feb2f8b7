#include <doctest.h>

#include "folia/divisor.hpp"
#include "folia/parser.hpp"
#include "folia/reduction.hpp"
#include "test_util.hpp"

using namespace folia;

namespace {

Mat2 diag(long a, long d) { return Mat2{FieldElem(a), FieldElem(0), FieldElem(0), FieldElem(d)}; }

Chart origin_chart(const std::string& text) {
    return Chart{"", parse_one_form(text), nullptr, {}};
}

} // namespace

TEST_SUITE_BEGIN("reduction");

TEST_CASE("classification from the linear part") {
    auto c1 = classify_linear_part(diag(1, -1));
    CHECK(c1.cls == SingClass::reduced_nondegenerate);
    CHECK(c1.ratio.value() == FieldElem(-1));
    CHECK(c1.nodal == Tri::no);

    CHECK(classify_linear_part(diag(1, 2)).cls == SingClass::non_reduced);
    CHECK(classify_linear_part(diag(1, 1)).cls == SingClass::non_reduced); // radial
    CHECK(classify_linear_part(diag(1, 0)).cls == SingClass::saddle_node);
    CHECK(classify_linear_part(diag(0, 0)).cls == SingClass::non_reduced);

    // trace 3, det 1: eigenvalue ratio is a positive real irrational -> nodal
    auto nodal = classify_linear_part(Mat2{FieldElem(0), FieldElem(-1), FieldElem(1), FieldElem(3)});
    CHECK(nodal.cls == SingClass::reduced_nondegenerate);
    CHECK(nodal.nodal == Tri::yes);

    // trace 0 with non-square discriminant: ratio is exactly -1
    auto t0 = classify_linear_part(Mat2{FieldElem(1), FieldElem(1), FieldElem(1), FieldElem(-1)});
    CHECK(t0.cls == SingClass::reduced_nondegenerate);
    CHECK(t0.ratio.value() == FieldElem(-1));
    CHECK(t0.nodal == Tri::no);
}

TEST_CASE("classification in quadratic towers") {
    // complex quadratic tower: trace zeta, det zeta^2 has ratio zeta^2 (not real)
    auto tz = adjoin_root(nullptr, {FieldElem(1), FieldElem(1), FieldElem(1)});
    FieldElem zeta = FieldElem::generator(tz, 1);
    auto c = classify_linear_part(Mat2{zeta, FieldElem(0).promoted(tz, 1),
                                       FieldElem(0).promoted(tz, 1), zeta * zeta});
    CHECK(c.cls == SingClass::reduced_nondegenerate);
    CHECK(c.nodal == Tri::no);

    // degree-4 tower: the square test for the discriminant is undecidable
    auto t1 = adjoin_root(nullptr, {FieldElem(-2), FieldElem(0), FieldElem(1)});
    auto t2 = adjoin_root(t1, {FieldElem(-3).promoted(t1, 1), FieldElem(0).promoted(t1, 1),
                               FieldElem(1).promoted(t1, 1)});
    FieldElem r3 = FieldElem::generator(t2, 2);
    auto u = classify_linear_part(Mat2{r3, FieldElem(0).promoted(t2, 2),
                                       FieldElem(0).promoted(t2, 2), FieldElem(1).promoted(t2, 2)});
    CHECK(u.cls == SingClass::undetermined);
}

TEST_CASE("Camacho-Sad index of a diagonal linear part") {
    CHECK(camacho_sad_index(diag(1, -1), Axis::x) == FieldElem(-1));
    CHECK(camacho_sad_index(diag(2, -1), Axis::x) == FieldElem(Rat(-1, 2)));
    CHECK(camacho_sad_index(diag(2, -1), Axis::y) == FieldElem(-2));
    CHECK(camacho_sad_index(diag(2, -1), Axis::x) * camacho_sad_index(diag(2, -1), Axis::y) ==
          FieldElem(1));
    Mat2 bad{FieldElem(1), FieldElem(0), FieldElem(1), FieldElem(-1)};
    CHECK_THROWS_AS(camacho_sad_index(bad, Axis::x), std::invalid_argument);
}

TEST_CASE("radial blow-up is dicritical and leaves a transverse fibration") {
    BlowUpCharts bu = blow_up_origin(origin_chart("x*dy - y*dx"), 0);
    CHECK(bu.dicritical);
    CHECK(bu.nu == 1);
    // chart 0 strict transform is exactly d(ybar)
    CHECK(bu.chart0.form.a.is_zero());
    CHECK(bu.chart0.form.b == Poly2::constant(FieldElem(1)));
    auto pts = find_divisor_singularities(bu, 8);
    CHECK(pts.on_chart0.empty());
    CHECK_FALSE(pts.at_infinity);
}

TEST_CASE("blow-up precondition: center must be singular") {
    CHECK_THROWS_AS(blow_up_origin(origin_chart("dx + x*dy"), 0), std::invalid_argument);
    // spec-shaped wrapper translates the center first
    Chart c = origin_chart("x*dy - y*dx");
    CHECK_THROWS_AS(blow_up_point(c, FieldElem(1), FieldElem(0), 0), std::invalid_argument);
    auto bu = blow_up_point(c, FieldElem(0), FieldElem(0), 0);
    CHECK(bu.dicritical);
}

TEST_CASE("forced blow-up of the reduced saddle shows both axis intersections") {
    BlowUpCharts bu = blow_up_origin(origin_chart("y*dx + x*dy"), 0);
    CHECK_FALSE(bu.dicritical);
    auto pts = find_divisor_singularities(bu, 8);
    REQUIRE(pts.on_chart0.size() == 1);
    CHECK(pts.on_chart0[0].is_zero());
    CHECK(pts.at_infinity);
}

TEST_CASE("restriction with an irrational pair extends the tower") {
    // d(x(y^2 - 2x^2)): directions y = +-sqrt(2) on the first component
    BlowUpCharts bu = blow_up_origin(origin_chart("(y^2 - 6*x^2)*dx + 2*x*y*dy"), 0);
    auto pts = find_divisor_singularities(bu, 8);
    REQUIRE(pts.on_chart0.size() == 2);
    CHECK(pts.extended);
    CHECK(tower_height(pts.tower) == 1);
    FieldElem two = FieldElem(2).promoted(pts.tower, 1);
    CHECK(pts.on_chart0[0] * pts.on_chart0[0] == two);
    CHECK(pts.on_chart0[1] == -pts.on_chart0[0]);
    CHECK(pts.at_infinity);
}

TEST_CASE("cusp resolution: the full frozen oracle") {
    ReductionOutcome o = reduce(parse_one_form("2*y*dy - 3*x^2*dx"));
    CHECK(o.status == ReduceStatus::complete);
    CHECK(o.blow_up_count == 3);
    CHECK(o.generalized_curve);
    REQUIRE(o.components.size() == 3);
    CHECK(o.components[0].self_intersection == -3);
    CHECK(o.components[1].self_intersection == -2);
    CHECK(o.components[2].self_intersection == -1);
    for (const auto& c : o.components) CHECK_FALSE(c.dicritical);
    for (const auto& n : o.tree) CHECK_FALSE(n.dicritical);

    // dual tree is the path E1 - E3 - E2 (the last component in the middle)
    REQUIRE(o.edges.size() == 2);
    auto has_edge = [&](int a, int b) {
        for (const auto& e : o.edges)
            if (e.a == a && e.b == b) return true;
        return false;
    };
    CHECK(has_edge(0, 2));
    CHECK(has_edge(1, 2));

    REQUIRE(o.points.size() == 3);
    auto cs_of = [&](const SingularityRecord& p, int comp) {
        for (const auto& e : p.cs)
            if (e.component == comp) {
                REQUIRE(e.determined);
                return e.value;
            }
        FAIL("missing CS entry");
        return FieldElem();
    };
    // corner E2/E3, the curve point on E3, corner E1/E3
    const auto& corner23 = o.points[0];
    CHECK(corner23.components == std::vector<int>{1, 2});
    CHECK(cs_of(corner23, 1) == FieldElem(-2));
    CHECK(cs_of(corner23, 2) == FieldElem(Rat(-1, 2)));
    const auto& curve_pt = o.points[1];
    CHECK(curve_pt.components == std::vector<int>{2});
    CHECK(curve_pt.coordinate == FieldElem(1));
    CHECK(cs_of(curve_pt, 2) == FieldElem(Rat(-1, 6)));
    const auto& corner13 = o.points[2];
    CHECK(corner13.components == std::vector<int>{0, 2});
    CHECK(cs_of(corner13, 0) == FieldElem(-3));
    CHECK(cs_of(corner13, 2) == FieldElem(Rat(-1, 3)));
}

TEST_CASE("radial reduction: one dicritical component, no marked points") {
    ReductionOutcome o = reduce(parse_one_form("x*dy - y*dx"));
    CHECK(o.status == ReduceStatus::complete);
    CHECK(o.blow_up_count == 1);
    REQUIRE(o.components.size() == 1);
    CHECK(o.components[0].dicritical);
    CHECK(o.components[0].self_intersection == -1);
    CHECK(o.points.empty());
    CHECK(o.edges.empty());
    CHECK(o.generalized_curve);
}

TEST_CASE("already reduced saddle needs no blow-up") {
    ReductionOutcome o = reduce(parse_one_form("y*dx + x*dy"));
    CHECK(o.status == ReduceStatus::complete);
    CHECK(o.blow_up_count == 0);
    CHECK(o.components.empty());
    REQUIRE(o.origin_class.has_value());
    CHECK(o.origin_class->cls == SingClass::reduced_nondegenerate);
    CHECK(o.generalized_curve);
}

TEST_CASE("regular point gives the empty outcome") {
    ReductionOutcome o = reduce(parse_one_form("dx + x*dy"));
    CHECK_FALSE(o.origin_singular);
    CHECK(o.blow_up_count == 0);
}

TEST_CASE("saddle-node at the origin clears the generalized-curve flag") {
    ReductionOutcome o = reduce(parse_one_form("-y^2*dx + x*dy"));
    CHECK(o.status == ReduceStatus::complete);
    CHECK_FALSE(o.generalized_curve);
    REQUIRE(o.origin_class.has_value());
    CHECK(o.origin_class->cls == SingClass::saddle_node);
}

TEST_CASE("quadratic-point reduction over Q(sqrt 2)") {
    ReductionOutcome o = reduce(parse_one_form("(y^2 - 6*x^2)*dx + 2*x*y*dy"));
    CHECK(o.status == ReduceStatus::complete);
    CHECK(o.blow_up_count == 1);
    REQUIRE(o.points.size() == 3);
    for (const auto& p : o.points) {
        REQUIRE(p.cs.size() == 1);
        CHECK(p.cs[0].determined);
        CHECK(p.cs[0].value == FieldElem(Rat(-1, 3)));
    }
    CHECK(o.points[0].coordinate == -o.points[1].coordinate); // conjugate pair
    CHECK(tower_height(o.points[0].tower) == 1);
}

TEST_CASE("blow-up budget turns into DEPTH_LIMIT") {
    ReduceConfig cfg;
    cfg.max_blow_ups = 2;
    ReductionOutcome o = reduce(parse_one_form("2*y*dy - 3*x^2*dx"), cfg);
    CHECK(o.status == ReduceStatus::depth_limit);
    CHECK(o.blow_up_count == 2);
}

TEST_CASE("unresolved cubic directions escalate to UNDETERMINED") {
    ReductionOutcome o = reduce(parse_one_form("(y^3 - 8*x^3)*dx + 3*x*y^2*dy"));
    CHECK(o.status == ReduceStatus::undetermined);
    CHECK(o.note.find("degree 3") != std::string::npos);
}

TEST_CASE("reduction is deterministic bit for bit") {
    std::string text = "(4*x^3 - 3*x^2*y - y^2)*dx + (3*y^2 - 2*x*y - x^3)*dy";
    auto o1 = reduce(parse_one_form(text));
    auto o2 = reduce(parse_one_form(text));
    REQUIRE(o1.status == ReduceStatus::complete);
    CHECK(divisor_to_json(make_divisor(o1)).dump() == divisor_to_json(make_divisor(o2)).dump());
}

TEST_CASE("the shipped corpus terminates well below the budget") {
    auto forms = testutil::corpus_forms();
    REQUIRE(forms.size() >= 10);
    for (const auto& [name, text] : forms) {
        CAPTURE(name);
        ReductionOutcome o = reduce(parse_one_form(text));
        CHECK(o.status == ReduceStatus::complete);
        CHECK(o.blow_up_count < 64);
        CHECK(o.generalized_curve);
    }
}

TEST_SUITE_END();
