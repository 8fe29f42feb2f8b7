#include <doctest.h>

#include "folia/divisor.hpp"
#include "folia/parser.hpp"
#include "test_util.hpp"

using namespace folia;

namespace {

MarkedDivisor cusp_divisor() {
    return make_divisor(reduce(parse_one_form("2*y*dy - 3*x^2*dx")));
}

// a hand-built two-component divisor with one singular corner
MarkedDivisor synthetic_two(const FieldElem& cs_a, const FieldElem& cs_b, Tri nodal,
                            const FieldElem& trace, const FieldElem& det) {
    MarkedDivisor d;
    d.components.push_back(Component{0, "E1", -2, false});
    d.components.push_back(Component{1, "E2", -1, false});
    SingularityRecord p;
    p.index = 0;
    p.chart = "01";
    p.components = {0, 1};
    p.cls.cls = SingClass::reduced_nondegenerate;
    p.cls.trace = trace;
    p.cls.det = det;
    p.cls.nodal = nodal;
    p.cs.push_back(CsEntry{0, true, cs_a});
    p.cs.push_back(CsEntry{1, true, cs_b});
    d.points.push_back(p);
    d.edges.push_back(EdgeRec{0, 1, false, 0});
    return d;
}

} // namespace

TEST_SUITE_BEGIN("divisor");

TEST_CASE("intersection matrix of the cusp divisor") {
    auto m = intersection_matrix(cusp_divisor());
    IntersectionMatrix want = {{-3, 0, 1}, {0, -2, 1}, {1, 1, -1}};
    CHECK(m == want);
}

TEST_CASE("intersection matrix of small synthetic divisors") {
    MarkedDivisor single;
    single.components.push_back(Component{0, "E1", -1, true});
    CHECK(intersection_matrix(single) == IntersectionMatrix{{-1}});

    auto two = synthetic_two(FieldElem(-2), FieldElem(Rat(-1, 2)), Tri::no, FieldElem(1),
                             FieldElem(-2));
    CHECK(intersection_matrix(two) == IntersectionMatrix{{-2, 1}, {1, -1}});
}

TEST_CASE("negative definiteness by alternating minors") {
    CHECK(is_negative_definite({{-1}}));
    CHECK_FALSE(is_negative_definite({{1}}));
    CHECK(is_negative_definite(intersection_matrix(cusp_divisor())));
    CHECK_FALSE(is_negative_definite({{-2, 2}, {2, -1}})); // det < 0
}

TEST_CASE("Camacho-Sad residuals vanish exactly on the cusp") {
    auto res = verify_camacho_sad(cusp_divisor());
    REQUIRE(res.size() == 3);
    for (const auto& r : res) {
        CHECK(r.determined);
        CHECK(r.residual.is_zero());
    }
}

TEST_CASE("no divisor, empty report") {
    auto o = reduce(parse_one_form("y*dx + x*dy"));
    auto d = make_divisor(o);
    CHECK(verify_camacho_sad(d).empty());
}

TEST_CASE("an injected index perturbation shows up as the residual") {
    // correct corner: CS(E1) = -2 sums to E1.E1 = -2; perturb by 3/7
    auto good = synthetic_two(FieldElem(-2), FieldElem(Rat(-1, 2)), Tri::no, FieldElem(1),
                              FieldElem(-2));
    // E2 carries only -1/2 against self-intersection -1: residual 1/2 by design
    auto res = verify_camacho_sad(good);
    CHECK(res[0].residual.is_zero());
    CHECK(res[1].residual == FieldElem(Rat(1, 2)));

    auto bad = synthetic_two(FieldElem(-2) + FieldElem(Rat(3, 7)), FieldElem(Rat(-1, 2)),
                             Tri::no, FieldElem(1), FieldElem(-2));
    auto res2 = verify_camacho_sad(bad);
    CHECK(res2[0].residual == FieldElem(Rat(3, 7)));
}

TEST_CASE("nodal corners") {
    CHECK(nodal_corner_edges(cusp_divisor()).empty());
    // synthetic corner with trace 3, det 1: ratio is positive real irrational
    auto cls = classify_linear_part(
        Mat2{FieldElem(0), FieldElem(-1), FieldElem(1), FieldElem(3)});
    REQUIRE(cls.nodal == Tri::yes);
    auto nodal = synthetic_two(FieldElem(1), FieldElem(1), cls.nodal, cls.trace, cls.det);
    CHECK(nodal_corner_edges(nodal) == std::vector<int>{0});
    auto plain = synthetic_two(FieldElem(-1), FieldElem(-1), Tri::no, FieldElem(0),
                               FieldElem(-1));
    CHECK(nodal_corner_edges(plain).empty());
}

TEST_CASE("JSON round trip is the identity on corpus divisors") {
    for (const auto& [name, text] : testutil::corpus_forms()) {
        CAPTURE(name);
        auto o = reduce(parse_one_form(text));
        REQUIRE(o.status == ReduceStatus::complete);
        auto d = make_divisor(o);
        Json j = divisor_to_json(d);
        MarkedDivisor back = divisor_from_json(j);
        CHECK(divisor_to_json(back) == j);
    }
}

TEST_CASE("divisor JSON rejects malformed input with a located message") {
    Json j = divisor_to_json(cusp_divisor());
    Json no_version = j;
    no_version.erase("fmv");
    CHECK_THROWS_WITH_AS(divisor_from_json(no_version), doctest::Contains("fmv"),
                         std::invalid_argument);
    Json bad_version = j;
    bad_version["fmv"] = 99;
    CHECK_THROWS_AS(divisor_from_json(bad_version), std::invalid_argument);
    Json bad_edge = j;
    bad_edge["edges"][0]["a"] = "E9";
    CHECK_THROWS_WITH_AS(divisor_from_json(bad_edge), doctest::Contains("E9"),
                         std::invalid_argument);
    Json missing = j;
    missing["points"][0].erase("trace");
    CHECK_THROWS_WITH_AS(divisor_from_json(missing), doctest::Contains("trace"),
                         std::invalid_argument);
    // truncated text does not parse
    std::string dump = j.dump();
    CHECK_THROWS((void)Json::parse(dump.substr(0, dump.size() / 2)));
}

TEST_CASE("tower elements survive serialization") {
    auto o = reduce(parse_one_form("(y^2 - 6*x^2)*dx + 2*x*y*dy"));
    auto d = make_divisor(o);
    Json j = divisor_to_json(d);
    auto back = divisor_from_json(j);
    REQUIRE(back.points.size() == 3);
    bool found_irrational = false;
    for (const auto& p : back.points)
        if (!p.coordinate.is_rational()) {
            found_irrational = true;
            CHECK(p.coordinate * p.coordinate == FieldElem(2).promoted(p.tower, 1));
        }
    CHECK(found_irrational);
}

TEST_CASE("DOT export of the cusp has three nodes and two labeled edges") {
    std::string dot = to_dot(cusp_divisor());
    CHECK(dot.find("E1 [label=\"E1 (-3)") != std::string::npos);
    CHECK(dot.find("E2 [label=\"E2 (-2)") != std::string::npos);
    CHECK(dot.find("E3 [label=\"E3 (-1)") != std::string::npos);
    CHECK(dot.find("E2 -- E3") != std::string::npos);
    CHECK(dot.find("E1 -- E3") != std::string::npos);
    CHECK(dot.find("CS(E3)=-1/3") != std::string::npos);
    // deterministic output
    CHECK(to_dot(cusp_divisor()) == dot);
}

TEST_CASE("model invariants are validated") {
    MarkedDivisor d;
    d.components.push_back(Component{0, "E1", -1, true});
    SingularityRecord p;
    p.index = 0;
    p.components = {0};
    p.cls.cls = SingClass::reduced_nondegenerate;
    d.points.push_back(p);
    auto bad = validate_divisor(d);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad.front().find("dicritical") != std::string::npos);
}

TEST_SUITE_END();
