#include <doctest.h>

#include <random>

#include "folia/parser.hpp"
#include "folia/poly2.hpp"

using namespace folia;

namespace {

Poly2 rnd_poly(std::mt19937_64& rng, int max_deg, int terms) {
    Poly2 p;
    for (int t = 0; t < terms; ++t) {
        int i = static_cast<int>(rng() % (max_deg + 1));
        int j = static_cast<int>(rng() % (max_deg + 1 - i));
        long num = static_cast<long>(rng() % 19) - 9;
        long den = 1 + static_cast<long>(rng() % 5);
        p.set(i, j, p.coeff(i, j) + FieldElem(Rat(num, den)));
    }
    return p;
}

} // namespace

TEST_SUITE_BEGIN("form");

TEST_CASE("parser reads the documented examples") {
    OneForm w1 = parse_one_form("x*dy - y*dx");
    CHECK(w1.a == Poly2::monomial(0, 1, FieldElem(-1)));
    CHECK(w1.b == Poly2::monomial(1, 0, FieldElem(1)));

    OneForm w2 = parse_one_form("2*y*dy - 3*x^2*dx");
    CHECK(w2.a == Poly2::monomial(2, 0, FieldElem(-3)));
    CHECK(w2.b == Poly2::monomial(0, 1, FieldElem(2)));

    OneForm w3 = parse_one_form("(1/2*x + y)*dx - 2/3*dy");
    CHECK(w3.a.coeff(1, 0) == FieldElem(Rat(1, 2)));
    CHECK(w3.a.coeff(0, 1) == FieldElem(1));
    CHECK(w3.b.coeff(0, 0) == FieldElem(Rat(-2, 3)));
}

TEST_CASE("parser rejects bad input with positions") {
    CHECK_THROWS_WITH_AS(parse_one_form("dx + dx*dy"),
                         doctest::Contains("nonlinear"), ParseError);
    CHECK_THROWS_WITH_AS(parse_one_form("dx^2"), doctest::Contains("nonlinear"), ParseError);
    CHECK_THROWS_WITH_AS(parse_one_form("x*dx - x*dx"), doctest::Contains("zero form"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_one_form("x + y*dy"),
                         doctest::Contains("non-differential"), ParseError);
    CHECK_THROWS_AS(parse_one_form("x*dy + "), ParseError);
    CHECK_THROWS_AS(parse_one_form("(x*dy"), ParseError);
    CHECK_THROWS_AS(parse_one_form("z*dx"), ParseError);
    try {
        parse_one_form("x*dy + q");
    } catch (const ParseError& e) {
        CHECK(e.position == 7);
    }
}

TEST_CASE("printer emits canonical text and round-trips") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 80; ++i) {
        OneForm w{rnd_poly(rng, 3, 4), rnd_poly(rng, 3, 4)};
        if (w.is_zero()) continue;
        std::string s = print_one_form(w);
        OneForm back = parse_one_form(s);
        CHECK(back == w);
        CHECK(print_one_form(back) == s);
    }
}

TEST_CASE("order at the origin") {
    CHECK(order_at_origin(Poly2::monomial(0, 1, FieldElem(2))).value() == 1);
    CHECK(order_at_origin(Poly2::monomial(2, 0, FieldElem(-3))).value() == 2);
    CHECK_FALSE(order_at_origin(Poly2()).has_value());
}

TEST_CASE("multiplicity of the documented forms") {
    CHECK(multiplicity(parse_one_form("x*dy - y*dx")) == 1);
    CHECK(multiplicity(parse_one_form("-3*x^2*dx + 2*y*dy")) == 1);
    CHECK(multiplicity(parse_one_form("x^2*dy - y^2*dx")) == 2);
}

TEST_CASE("dual vector field examples and contraction identity") {
    VectorField2 radial = dual_vector_field(parse_one_form("x*dy - y*dx"));
    CHECK(radial.p == Poly2::var_x());
    CHECK(radial.q == Poly2::var_y());
    VectorField2 saddle = dual_vector_field(parse_one_form("y*dx + x*dy"));
    CHECK(saddle.p == Poly2::var_x());
    CHECK(saddle.q == -Poly2::var_y());

    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        OneForm w{rnd_poly(rng, 4, 5), rnd_poly(rng, 4, 5)};
        if (w.is_zero()) continue;
        CHECK(contraction(dual_vector_field(w), w).is_zero());
    }
}

TEST_CASE("linear part examples") {
    Mat2 j1 = linear_part(VectorField2{Poly2::var_x(), Poly2::var_y()});
    CHECK(j1.trace() == FieldElem(2));
    CHECK(j1.det() == FieldElem(1));
    Mat2 j2 = linear_part(VectorField2{Poly2::var_x(), -Poly2::var_y()});
    CHECK(j2.det() == FieldElem(-1));
    // (y + x^2) d/dx
    Mat2 j3 = linear_part(
        VectorField2{Poly2::var_y() + Poly2::monomial(2, 0, FieldElem(1)), Poly2()});
    CHECK(j3.a.is_zero());
    CHECK(j3.b == FieldElem(1));
    CHECK(j3.det().is_zero());
}

TEST_CASE("multiplicity is invariant under invertible linear coordinate change") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        OneForm w{rnd_poly(rng, 4, 4), rnd_poly(rng, 4, 4)};
        if (w.is_zero()) continue;
        // random invertible matrix M = [[a,b],[c,d]] over Q
        FieldElem a, b, c, d;
        do {
            a = FieldElem(static_cast<long>(rng() % 7) - 3);
            b = FieldElem(static_cast<long>(rng() % 7) - 3);
            c = FieldElem(static_cast<long>(rng() % 7) - 3);
            d = FieldElem(static_cast<long>(rng() % 7) - 3);
        } while ((a * d - b * c).is_zero());
        // pull back: x -> a x + b y, y -> c x + d y; the form transforms with
        // the jacobian  w' = (a_ o M) (a dx + b dy) + (b_ o M) (c dx + d dy)
        Poly2 am = w.a.subst_linear(a, b, c, d);
        Poly2 bm = w.b.subst_linear(a, b, c, d);
        OneForm moved{am.scaled(a) + bm.scaled(c), am.scaled(b) + bm.scaled(d)};
        if (moved.is_zero()) continue;
        CHECK(multiplicity(moved) == multiplicity(w));
    }
}

TEST_CASE("blow-up substitutions act on exponents") {
    Poly2 p = Poly2::monomial(1, 2, FieldElem(5)); // 5 x y^2
    CHECK(p.subst_y_xy() == Poly2::monomial(3, 2, FieldElem(5)));
    CHECK(p.subst_x_xy() == Poly2::monomial(1, 3, FieldElem(5)));
    CHECK(p.subst_y_xy().divisible_x(3));
    CHECK(p.subst_y_xy().divide_x(3) == Poly2::monomial(0, 2, FieldElem(5)));
}

TEST_CASE("translation is exact") {
    // (y + 2)^2 = y^2 + 4y + 4
    Poly2 p = Poly2::monomial(0, 2, FieldElem(1));
    Poly2 q = p.translate_y(FieldElem(2));
    CHECK(q.coeff(0, 0) == FieldElem(4));
    CHECK(q.coeff(0, 1) == FieldElem(4));
    CHECK(q.coeff(0, 2) == FieldElem(1));
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        Poly2 r = rnd_poly(rng, 4, 5);
        FieldElem c(static_cast<long>(rng() % 9) - 4);
        CHECK(r.translate_y(c).translate_y(-c) == r);
    }
}

TEST_SUITE_END();
