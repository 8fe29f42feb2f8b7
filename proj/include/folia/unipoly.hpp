#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/field.hpp"

namespace folia {

// Univariate polynomial over FieldElem, ascending coefficients.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(FieldElem v) { return UniPoly({std::move(v)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const FieldElem& coeff(int i) const;
    const std::vector<FieldElem>& coeffs() const { return c_; }
    const FieldElem& leading() const { return c_.back(); }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(const FieldElem& s) const;
    UniPoly monic() const;
    void divmod(const UniPoly& divisor, UniPoly& q, UniPoly& r) const;
    UniPoly derivative() const;
    FieldElem eval(const FieldElem& x) const;

    // monic gcd; gcd(f, 0) = monic f
    static UniPoly gcd(UniPoly a, UniPoly b);
    UniPoly squarefree_part() const;

    // divide out a known root: *this / (t - r); asserts exact division
    UniPoly deflate(const FieldElem& r) const;

    bool rational_coeffs() const;
    std::string to_string(const std::string& var = "t") const;

private:
    std::vector<FieldElem> c_;
    void trim();
};

// Rational roots of a polynomial with rational coefficients (ascending),
// each exactly once, sorted. Throws Undetermined when the integer divisor
// enumeration would blow up.
std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs);

struct RootSearch {
    std::vector<FieldElem> roots; // each root once, in the (possibly extended) field
    TowerPtr tower;               // tower the roots live in
    bool extended = false;
};

// All roots of g in the field of `tower`, extending the tower by one
// quadratic level when an irreducible quadratic factor remains. Leftover
// factors that the supported ladder cannot resolve raise Undetermined with
// the factor in the message.
RootSearch roots_in_field(const UniPoly& g, TowerPtr tower, long degree_cap);

} // namespace folia
