#pragma once

#include <map>
#include <string>
#include <vector>

#include "folia/field.hpp"

namespace folia {

// sparse exponent vector over formal parameters (flow times, family slots)
struct PExp {
    std::vector<std::pair<int, int>> e; // (param index, exponent), sorted, exp > 0
    int total() const;
    bool operator<(const PExp& o) const { return e < o.e; }
    bool operator==(const PExp& o) const { return e == o.e; }
    PExp operator+(const PExp& o) const;
    static PExp single(int idx, int exp = 1);
};

// polynomial in the formal parameters over FieldElem; truncation degrees are
// supplied by the jet operations that use it
class PPoly {
public:
    PPoly() = default;
    static PPoly constant(FieldElem v);
    static PPoly param(int idx);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    FieldElem constant_term() const;
    const std::map<PExp, FieldElem>& terms() const { return t_; }

    PPoly operator+(const PPoly& o) const;
    PPoly operator-(const PPoly& o) const;
    PPoly operator-() const;
    PPoly mul(const PPoly& o, int max_deg) const;
    PPoly scaled(const FieldElem& s) const;
    PPoly truncated(int max_deg) const;
    PPoly derivative(int idx) const;
    PPoly pow(int k, int max_deg) const;
    // multiplicative inverse of a unit (nonzero constant term), truncated
    PPoly inverse_unit(int max_deg) const;
    bool operator==(const PPoly& o) const { return t_ == o.t_; }

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    std::map<PExp, FieldElem> t_;
    void set(const PExp& k, FieldElem v);
    friend class Jet2;
};

// Bivariate power series in z1, z2 truncated at total space order `order`,
// with PPoly coefficients truncated at the same total parameter degree.
class Jet2 {
public:
    struct SKey {
        int i = 0, j = 0;
        bool operator<(const SKey& o) const {
            int da = i + j, db = o.i + o.j;
            if (da != db) return da < db;
            return i != o.i ? i > o.i : false;
        }
        bool operator==(const SKey& o) const { return i == o.i && j == o.j; }
    };

    explicit Jet2(int order = 0) : order_(order) {}
    static Jet2 constant(FieldElem v, int order);
    static Jet2 coordinate(int which, int order); // 1 -> z1, 2 -> z2
    static Jet2 monomial(int i, int j, FieldElem c, int order);

    int order() const { return order_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<SKey, PPoly>& terms() const { return t_; }
    PPoly coeff(int i, int j) const;
    void set(int i, int j, PPoly c);

    Jet2 operator+(const Jet2& o) const;
    Jet2 operator-(const Jet2& o) const;
    Jet2 operator-() const;
    Jet2 operator*(const Jet2& o) const;
    Jet2& operator+=(const Jet2& o) { *this = *this + o; return *this; }
    Jet2& operator-=(const Jet2& o) { *this = *this - o; return *this; }
    Jet2 scaled(const FieldElem& s) const;
    Jet2 scaled_p(const PPoly& s) const;
    bool operator==(const Jet2& o) const;

    Jet2 d1() const; // d/dz1
    Jet2 d2() const;
    Jet2 dparam(int idx) const;
    Jet2 params_at_zero() const;       // drop every term with parameters
    Jet2 integrate_z1() const;         // term-wise antiderivative in z1
    Jet2 pow(int k) const;
    Jet2 inverse_unit() const;         // unit: nonzero constant coefficient
    int min_space_order() const;       // order of the lowest nonzero term; order_+1 if zero

    // substitution z1 <- g1, z2 <- g2; inner jets must vanish at the origin
    Jet2 compose(const Jet2& g1, const Jet2& g2) const;

    // Reinterpret the truncation order. Raising it claims precision the jet
    // may not have; only do so when the next operation restores validity
    // (e.g. a derivative about to be multiplied by a series of order >= 1).
    Jet2 with_order(int order) const;

    std::string to_string(const std::vector<std::string>& params = {}) const;

private:
    int order_;
    std::map<SKey, PPoly> t_;
};

struct JetMap {
    Jet2 f1, f2; // both vanish at the origin
};
struct JetVectorField {
    Jet2 p, q; // p d/dz1 + q d/dz2
};
struct Jet1Form {
    Jet2 a1, a2; // a1 dz1 + a2 dz2
};

JetMap jet_identity(int order);
JetMap compose(const JetMap& outer, const JetMap& inner);
// compositional inverse; the linear part must be invertible
JetMap jet_inverse(const JetMap& f);
bool maps_equal(const JetMap& a, const JetMap& b);

// exp(Z)[time] by the truncated Lie series sum time^k Z^k / k!. Z must
// vanish at the expansion point and the time polynomial must have no
// constant term, so every series involved is finite after truncation.
JetMap flow(const JetVectorField& Z, const PPoly& time, int order);

// coefficient jet of L_Z(w) ^ w; identically zero iff Z is basic for w up to
// the guaranteed order
Jet2 basic_residual(const JetVectorField& Z, const Jet1Form& w, int order);

struct LocalModel {
    Jet1Form form;
    JetVectorField generator;
};

// linear model: b z2 dz1 + a z1 dz2 with generator z2 d/dz2. The model
// hypothesis wants b/a irrational; passing a rational ratio requires the
// explicit override flag.
LocalModel local_model_linear(const FieldElem& a, const FieldElem& b, int order,
                              bool allow_rational_ratio = false);

// resonant model: a z2 (1 + (zeta-1) u) dz1 + b z1 (1 + zeta u) dz2 with
// u = (z1^a z2^b)^k, generator u/(1+zeta u) z2 d/dz2 (geometric expansion)
LocalModel local_model_resonant(int a, int b, int k, const FieldElem& zeta, int order);

enum class ModelKind { linear, resonant };

// First integral at the base point (z1, z2) = (1, 0), in local coordinates
// (w, z2) with z1 = 1 + w: the unique jet with I(0, z2) = z2 constant on the
// leaves. Returns I together with the translated data needed for checks.
struct FirstIntegral {
    Jet2 I;             // jet in (w, z2)
    Jet1Form form_at_p; // the model form written in (w, z2)
    Jet2 z_component;   // the generator's dz2-component in (w, z2)
};
FirstIntegral model_first_integral(ModelKind kind, const FieldElem& a, const FieldElem& b,
                                   int res_a, int res_b, int res_k, const FieldElem& zeta,
                                   int order);

// transported vector field Z^flat on the transversal: z d/dz for the linear
// model, z^(bk)/(1 + zeta z^(bk)) z d/dz for the resonant one, evaluated at a
// 1-variable jet (encoded as a Jet2 in z2 alone)
Jet2 transversal_flow_field(ModelKind kind, int res_b, int res_k, const FieldElem& zeta,
                            const Jet2& at, int order);

// family gluing over the parameter slots: (m, z) -> (phi(exp(X)[z_slot](m)), z)
// for an active oriented edge, (phi(m), z) otherwise
JetMap glue_transition(const JetMap& phi, const JetVectorField& X, int slot, bool active,
                       int order);

} // namespace folia
