#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folia/field.hpp"
#include "folia/unipoly.hpp"

namespace folia {

// Sparse bivariate polynomial over FieldElem. No zero coefficients are
// stored, so structural equality is mathematical equality. The monomial
// order (total degree, then x-exponent descending) is the canonical order
// used by the printer.
class Poly2 {
public:
    struct Key {
        int i = 0, j = 0; // x^i y^j
        bool operator<(const Key& o) const {
            int da = i + j, db = o.i + o.j;
            if (da != db) return da < db;
            if (i != o.i) return i > o.i;
            return false;
        }
        bool operator==(const Key& o) const { return i == o.i && j == o.j; }
    };
    using Terms = std::map<Key, FieldElem>;

    Poly2() = default;
    static Poly2 constant(FieldElem v);
    static Poly2 monomial(int i, int j, FieldElem c);
    static Poly2 var_x() { return monomial(1, 0, FieldElem(1)); }
    static Poly2 var_y() { return monomial(0, 1, FieldElem(1)); }

    bool is_zero() const { return t_.empty(); }
    const Terms& terms() const { return t_; }
    void set(int i, int j, FieldElem c); // inserts/overwrites, drops zeros
    FieldElem coeff(int i, int j) const;

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator-() const;
    Poly2 operator*(const Poly2& o) const;
    Poly2 scaled(const FieldElem& s) const;
    Poly2& operator+=(const Poly2& o) { *this = *this + o; return *this; }
    Poly2& operator-=(const Poly2& o) { *this = *this - o; return *this; }
    bool operator==(const Poly2& o) const { return t_ == o.t_; }
    bool operator!=(const Poly2& o) const { return !(*this == o); }

    // min total degree of a nonzero monomial; nullopt for the zero polynomial
    std::optional<int> order() const;
    int total_degree() const; // -1 for zero
    Poly2 homogeneous_part(int d) const;

    Poly2 dx() const; // partial derivative in x
    Poly2 dy() const;

    // substitutions used by the blow-up engine
    Poly2 subst_y_xy() const;  // (x, y) -> (x, x*y)
    Poly2 subst_x_xy() const;  // (x, y) -> (x*y, y)
    bool divisible_x(int k) const;
    bool divisible_y(int k) const;
    Poly2 divide_x(int k) const; // exact; throws std::logic_error otherwise
    Poly2 divide_y(int k) const;
    Poly2 translate_y(const FieldElem& c) const; // y -> y + c
    Poly2 translate_x(const FieldElem& c) const;
    Poly2 swap_xy() const;
    // general linear substitution x -> a x + b y, y -> c x + d y
    Poly2 subst_linear(const FieldElem& a, const FieldElem& b,
                       const FieldElem& c, const FieldElem& d) const;

    UniPoly restrict_x0() const; // set x = 0, univariate in y
    UniPoly restrict_y0() const; // set y = 0, univariate in x
    FieldElem eval(const FieldElem& x, const FieldElem& y) const;

    std::string to_string(const std::string& xs = "x", const std::string& ys = "y") const;

private:
    Terms t_;
};

struct Mat2 {
    FieldElem a, b, c, d; // [[a, b], [c, d]]
    FieldElem trace() const { return a + d; }
    FieldElem det() const { return a * d - b * c; }
};

// 1-form  a(x,y) dx + b(x,y) dy
struct OneForm {
    Poly2 a, b;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool operator==(const OneForm& o) const { return a == o.a && b == o.b; }
};

// vector field  p(x,y) d/dx + q(x,y) d/dy
struct VectorField2 {
    Poly2 p, q;
};

// vanishing order at the origin; nullopt encodes infinity (zero polynomial)
inline std::optional<int> order_at_origin(const Poly2& p) { return p.order(); }

// nu(omega) = min(ord a, ord b); requires omega != 0
int multiplicity(const OneForm& w);

// X = b d/dx - a d/dy, the dual field: contraction with the form vanishes
VectorField2 dual_vector_field(const OneForm& w);

// Jacobian of (p, q) at the origin
Mat2 linear_part(const VectorField2& X);

bool vanishes_at_origin(const OneForm& w);

// coefficient of the contraction X -| w  (p*a + q*b)
Poly2 contraction(const VectorField2& X, const OneForm& w);

} // namespace folia
