#include "folia/jets.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace folia {

// --- PExp -------------------------------------------------------------------

int PExp::total() const {
    int t = 0;
    for (const auto& [idx, exp] : e) t += exp;
    return t;
}

PExp PExp::operator+(const PExp& o) const {
    PExp r;
    size_t i = 0, j = 0;
    while (i < e.size() || j < o.e.size()) {
        if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first))
            r.e.push_back(e[i++]);
        else if (i == e.size() || o.e[j].first < e[i].first)
            r.e.push_back(o.e[j++]);
        else {
            r.e.emplace_back(e[i].first, e[i].second + o.e[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

PExp PExp::single(int idx, int exp) {
    PExp r;
    if (exp > 0) r.e.emplace_back(idx, exp);
    return r;
}

// --- PPoly -------------------------------------------------------------------

void PPoly::set(const PExp& k, FieldElem v) {
    if (v.is_zero())
        t_.erase(k);
    else
        t_[k] = std::move(v);
}

PPoly PPoly::constant(FieldElem v) {
    PPoly p;
    p.set(PExp{}, std::move(v));
    return p;
}

PPoly PPoly::param(int idx) {
    PPoly p;
    p.set(PExp::single(idx), FieldElem(1));
    return p;
}

bool PPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.e.empty());
}

FieldElem PPoly::constant_term() const {
    auto it = t_.find(PExp{});
    return it == t_.end() ? FieldElem() : it->second;
}

PPoly PPoly::operator+(const PPoly& o) const {
    PPoly r = *this;
    for (const auto& [k, v] : o.t_) {
        auto it = r.t_.find(k);
        if (it == r.t_.end())
            r.t_.emplace(k, v);
        else {
            it->second += v;
            if (it->second.is_zero()) r.t_.erase(it);
        }
    }
    return r;
}

PPoly PPoly::operator-() const {
    PPoly r = *this;
    for (auto& [k, v] : r.t_) v = -v;
    return r;
}

PPoly PPoly::operator-(const PPoly& o) const { return *this + (-o); }

PPoly PPoly::mul(const PPoly& o, int max_deg) const {
    PPoly r;
    for (const auto& [k1, v1] : t_)
        for (const auto& [k2, v2] : o.t_) {
            PExp k = k1 + k2;
            if (k.total() > max_deg) continue;
            auto it = r.t_.find(k);
            if (it == r.t_.end()) {
                FieldElem p = v1 * v2;
                if (!p.is_zero()) r.t_.emplace(std::move(k), std::move(p));
            } else {
                it->second += v1 * v2;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    return r;
}

PPoly PPoly::scaled(const FieldElem& s) const {
    PPoly r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * s);
    return r;
}

PPoly PPoly::truncated(int max_deg) const {
    PPoly r;
    for (const auto& [k, v] : t_)
        if (k.total() <= max_deg) r.t_.emplace(k, v);
    return r;
}

PPoly PPoly::derivative(int idx) const {
    PPoly r;
    for (const auto& [k, v] : t_) {
        for (size_t p = 0; p < k.e.size(); ++p) {
            if (k.e[p].first != idx) continue;
            PExp nk = k;
            int ex = nk.e[p].second;
            if (ex == 1)
                nk.e.erase(nk.e.begin() + static_cast<long>(p));
            else
                nk.e[p].second -= 1;
            r.set(nk, r.t_.count(nk) ? r.t_[nk] + v * FieldElem(ex) : v * FieldElem(ex));
        }
    }
    return r;
}

PPoly PPoly::pow(int k, int max_deg) const {
    PPoly acc = PPoly::constant(FieldElem(1));
    for (int i = 0; i < k; ++i) acc = acc.mul(*this, max_deg);
    return acc;
}

PPoly PPoly::inverse_unit(int max_deg) const {
    FieldElem c = constant_term();
    if (c.is_zero()) throw std::invalid_argument("PPoly::inverse_unit: not a unit");
    // 1/(c (1 + u)) = (1/c) sum (-u)^k with u = (this - c)/c
    PPoly u = (*this - PPoly::constant(c)).scaled(c.inverse());
    PPoly acc = PPoly::constant(FieldElem(1));
    PPoly upow = PPoly::constant(FieldElem(1));
    for (int k = 1; k <= max_deg; ++k) {
        upow = upow.mul(u, max_deg);
        if (upow.is_zero()) break;
        acc = (k % 2 == 1) ? acc - upow : acc + upow;
    }
    return acc.scaled(c.inverse());
}

std::string PPoly::to_string(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : t_) {
        if (!first) os << " + ";
        first = false;
        os << v.to_string();
        for (const auto& [idx, exp] : k.e) {
            os << "*";
            if (idx < static_cast<int>(names.size()))
                os << names[idx];
            else
                os << "u" << idx;
            if (exp > 1) os << "^" << exp;
        }
    }
    return os.str();
}

// --- Jet2 ---------------------------------------------------------------------

Jet2 Jet2::constant(FieldElem v, int order) {
    Jet2 j(order);
    j.set(0, 0, PPoly::constant(std::move(v)));
    return j;
}

Jet2 Jet2::coordinate(int which, int order) {
    Jet2 j(order);
    j.set(which == 1 ? 1 : 0, which == 1 ? 0 : 1, PPoly::constant(FieldElem(1)));
    return j;
}

Jet2 Jet2::monomial(int i, int j, FieldElem c, int order) {
    Jet2 r(order);
    r.set(i, j, PPoly::constant(std::move(c)));
    return r;
}

PPoly Jet2::coeff(int i, int j) const {
    auto it = t_.find(SKey{i, j});
    return it == t_.end() ? PPoly() : it->second;
}

void Jet2::set(int i, int j, PPoly c) {
    if (i + j > order_ || c.is_zero())
        t_.erase(SKey{i, j});
    else
        t_[SKey{i, j}] = std::move(c);
}

Jet2 Jet2::operator+(const Jet2& o) const {
    Jet2 r = *this;
    r.order_ = std::min(order_, o.order_);
    for (const auto& [k, v] : o.t_) r.set(k.i, k.j, r.coeff(k.i, k.j) + v);
    if (r.order_ < order_) {
        // drop terms past the tighter truncation
        Jet2 s(r.order_);
        for (const auto& [k, v] : r.t_)
            if (k.i + k.j <= r.order_) s.t_.emplace(k, v);
        return s;
    }
    return r;
}

Jet2 Jet2::operator-() const {
    Jet2 r = *this;
    for (auto& [k, v] : r.t_) v = -v;
    return r;
}

Jet2 Jet2::operator-(const Jet2& o) const { return *this + (-o); }

Jet2 Jet2::operator*(const Jet2& o) const {
    Jet2 r(std::min(order_, o.order_));
    for (const auto& [k1, v1] : t_)
        for (const auto& [k2, v2] : o.t_) {
            int i = k1.i + k2.i, j = k1.j + k2.j;
            if (i + j > r.order_) continue;
            PPoly add = v1.mul(v2, r.order_);
            if (add.is_zero()) continue;
            r.set(i, j, r.coeff(i, j) + add);
        }
    return r;
}

Jet2 Jet2::scaled(const FieldElem& s) const {
    Jet2 r(order_);
    for (const auto& [k, v] : t_) r.set(k.i, k.j, v.scaled(s));
    return r;
}

Jet2 Jet2::scaled_p(const PPoly& s) const {
    Jet2 r(order_);
    for (const auto& [k, v] : t_) r.set(k.i, k.j, v.mul(s, order_));
    return r;
}

bool Jet2::operator==(const Jet2& o) const { return t_ == o.t_; }

Jet2 Jet2::d1() const {
    Jet2 r(order_ - 1);
    for (const auto& [k, v] : t_)
        if (k.i > 0) r.set(k.i - 1, k.j, v.scaled(FieldElem(k.i)));
    return r;
}

Jet2 Jet2::d2() const {
    Jet2 r(order_ - 1);
    for (const auto& [k, v] : t_)
        if (k.j > 0) r.set(k.i, k.j - 1, v.scaled(FieldElem(k.j)));
    return r;
}

Jet2 Jet2::dparam(int idx) const {
    Jet2 r(order_);
    for (const auto& [k, v] : t_) r.set(k.i, k.j, v.derivative(idx));
    return r;
}

Jet2 Jet2::params_at_zero() const {
    Jet2 r(order_);
    for (const auto& [k, v] : t_) {
        FieldElem c = v.constant_term();
        if (!c.is_zero()) r.set(k.i, k.j, PPoly::constant(c));
    }
    return r;
}

Jet2 Jet2::integrate_z1() const {
    Jet2 r(order_);
    for (const auto& [k, v] : t_) {
        if (k.i + 1 + k.j > order_) continue;
        r.set(k.i + 1, k.j, v.scaled(FieldElem(Rat(1, k.i + 1))));
    }
    return r;
}

Jet2 Jet2::pow(int k) const {
    Jet2 acc = Jet2::constant(FieldElem(1), order_);
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

Jet2 Jet2::inverse_unit() const {
    PPoly c0 = coeff(0, 0);
    FieldElem c = c0.constant_term();
    if (c.is_zero()) throw std::invalid_argument("Jet2::inverse_unit: not a unit");
    Jet2 cjet = Jet2::constant(FieldElem(1), order_);
    Jet2 u = (*this).scaled(c.inverse()) - cjet; // may still carry parameters
    Jet2 acc = cjet;
    Jet2 upow = cjet;
    for (int k = 1; k <= 2 * order_ + 2; ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        acc = (k % 2 == 1) ? acc - upow : acc + upow;
    }
    return acc.scaled(c.inverse());
}

Jet2 Jet2::with_order(int order) const {
    Jet2 r(order);
    for (const auto& [k, v] : t_)
        if (k.i + k.j <= order) r.t_.emplace(k, v);
    return r;
}

int Jet2::min_space_order() const {
    int m = order_ + 1;
    for (const auto& [k, v] : t_) {
        (void)v;
        m = std::min(m, k.i + k.j);
    }
    return m;
}

Jet2 Jet2::compose(const Jet2& g1, const Jet2& g2) const {
    if (!g1.coeff(0, 0).is_zero() || !g2.coeff(0, 0).is_zero())
        throw std::invalid_argument("Jet2::compose: inner map must fix the origin");
    int ord = std::min({order_, g1.order_, g2.order_});
    // cache powers of g1, g2 up to the space order
    std::vector<Jet2> p1(ord + 1, Jet2(ord)), p2(ord + 1, Jet2(ord));
    p1[0] = Jet2::constant(FieldElem(1), ord);
    p2[0] = p1[0];
    for (int k = 1; k <= ord; ++k) {
        p1[k] = p1[k - 1] * g1;
        p2[k] = p2[k - 1] * g2;
    }
    Jet2 r(ord);
    for (const auto& [k, v] : t_) {
        if (k.i + k.j > ord) continue;
        Jet2 term = p1[k.i] * p2[k.j];
        r += term.scaled_p(v);
    }
    return r;
}

std::string Jet2::to_string(const std::vector<std::string>& params) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.to_string(params) << ")";
        if (k.i > 0) os << "*z1" << (k.i > 1 ? "^" + std::to_string(k.i) : "");
        if (k.j > 0) os << "*z2" << (k.j > 1 ? "^" + std::to_string(k.j) : "");
    }
    return os.str();
}

// --- maps, flows ---------------------------------------------------------------

JetMap jet_identity(int order) {
    return {Jet2::coordinate(1, order), Jet2::coordinate(2, order)};
}

JetMap compose(const JetMap& outer, const JetMap& inner) {
    return {outer.f1.compose(inner.f1, inner.f2), outer.f2.compose(inner.f1, inner.f2)};
}

bool maps_equal(const JetMap& a, const JetMap& b) { return a.f1 == b.f1 && a.f2 == b.f2; }

JetMap jet_inverse(const JetMap& f) {
    int ord = std::min(f.f1.order(), f.f2.order());
    // linear part L, as PPoly entries
    PPoly a = f.f1.coeff(1, 0), b = f.f1.coeff(0, 1);
    PPoly c = f.f2.coeff(1, 0), d = f.f2.coeff(0, 1);
    PPoly det = a.mul(d, ord) - b.mul(c, ord);
    PPoly dinv = det.inverse_unit(ord);
    PPoly ia = d.mul(dinv, ord), ib = (-b).mul(dinv, ord);
    PPoly ic = (-c).mul(dinv, ord), id = a.mul(dinv, ord);
    auto linv = [&](const Jet2& u, const Jet2& v) -> JetMap {
        Jet2 g1 = u.scaled_p(ia) + v.scaled_p(ib);
        Jet2 g2 = u.scaled_p(ic) + v.scaled_p(id);
        return {g1, g2};
    };
    // higher-order part H = f - L
    Jet2 h1 = f.f1, h2 = f.f2;
    h1.set(1, 0, PPoly());
    h1.set(0, 1, PPoly());
    h2.set(1, 0, PPoly());
    h2.set(0, 1, PPoly());
    JetMap g = linv(Jet2::coordinate(1, ord), Jet2::coordinate(2, ord));
    for (int it = 0; it < ord + 1; ++it) {
        Jet2 hg1 = h1.compose(g.f1, g.f2);
        Jet2 hg2 = h2.compose(g.f1, g.f2);
        g = linv(Jet2::coordinate(1, ord) - hg1, Jet2::coordinate(2, ord) - hg2);
    }
    return g;
}

JetMap flow(const JetVectorField& Z, const PPoly& time, int order) {
    if (!Z.p.coeff(0, 0).is_zero() || !Z.q.coeff(0, 0).is_zero())
        throw std::invalid_argument("flow: the field must vanish at the expansion point");
    if (!time.constant_term().is_zero())
        throw std::invalid_argument("flow: time must be a parameter polynomial without "
                                    "constant term");
    JetMap out;
    for (int comp = 1; comp <= 2; ++comp) {
        Jet2 g = Jet2::coordinate(comp, order); // Z^0 applied to the coordinate
        Jet2 acc = g;
        FieldElem kfact(1);
        PPoly tpow = PPoly::constant(FieldElem(1));
        for (int k = 1; k <= order; ++k) {
            // Z vanishes at the origin, so multiplying the (order-1)-exact
            // derivatives by its components is exact at full order again
            g = Z.p * g.d1().with_order(order) + Z.q * g.d2().with_order(order);
            if (g.is_zero()) break;
            kfact *= FieldElem(k);
            tpow = tpow.mul(time, order);
            if (tpow.is_zero()) break;
            acc += g.scaled(kfact.inverse()).scaled_p(tpow);
        }
        (comp == 1 ? out.f1 : out.f2) = acc;
    }
    return out;
}

Jet2 basic_residual(const JetVectorField& Z, const Jet1Form& w, int order) {
    // L_Z w = d(i_Z w) + i_Z dw
    Jet2 izw = w.a1 * Z.p + w.a2 * Z.q;
    Jet2 curl = w.a2.d1() - w.a1.d2();
    Jet2 l1 = izw.d1() - curl * Z.q;
    Jet2 l2 = izw.d2() + curl * Z.p;
    Jet2 res = l1 * w.a2 - l2 * w.a1;
    // the result is only guaranteed to the requested order
    Jet2 out(order);
    for (const auto& [k, v] : res.terms())
        if (k.i + k.j <= order) out.set(k.i, k.j, v);
    return out;
}

// --- local models -----------------------------------------------------------------

LocalModel local_model_linear(const FieldElem& a, const FieldElem& b, int order,
                              bool allow_rational_ratio) {
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("local model: a, b must be nonzero");
    FieldElem ratio = b / a;
    if (ratio.is_rational() && !allow_rational_ratio)
        throw std::invalid_argument(
            "local model: b/a is rational, which violates the model hypothesis "
            "(pass the explicit override to proceed)");
    LocalModel m;
    m.form.a1 = Jet2::monomial(0, 1, b, order);  // b z2 dz1
    m.form.a2 = Jet2::monomial(1, 0, a, order);  // a z1 dz2
    m.generator.p = Jet2(order);
    m.generator.q = Jet2::coordinate(2, order);  // z2 d/dz2
    return m;
}

LocalModel local_model_resonant(int a, int b, int k, const FieldElem& zeta, int order) {
    if (a <= 0 || b <= 0 || k <= 0)
        throw std::invalid_argument("resonant model: a, b, k must be positive integers");
    int lead = (a + b) * k;
    if (lead + 2 > order)
        throw std::invalid_argument("resonant model: order too low for the resonance "
                                    "monomial (need at least " + std::to_string(lead + 2) + ")");
    Jet2 u = Jet2::monomial(a * k, b * k, FieldElem(1), order); // (z1^a z2^b)^k
    Jet2 one = Jet2::constant(FieldElem(1), order);
    LocalModel m;
    m.form.a1 = Jet2::coordinate(2, order).scaled(FieldElem(a)) *
                (one + u.scaled(zeta - FieldElem(1)));
    m.form.a2 = Jet2::coordinate(1, order).scaled(FieldElem(b)) *
                (one + u.scaled(zeta));
    Jet2 denom_inv = (one + u.scaled(zeta)).inverse_unit();
    m.generator.p = Jet2(order);
    m.generator.q = u * denom_inv * Jet2::coordinate(2, order);
    return m;
}

namespace {

// substitute z1 -> 1 + w into a low-degree polynomial jet written in (z1, z2);
// exact because the input is polynomial
Jet2 shift_z1_to_base(const Jet2& j, int order) {
    Jet2 out(order);
    for (const auto& [key, c] : j.terms()) {
        // (1 + w)^i expands binomially
        FieldElem binom(1);
        for (int m = 0; m <= key.i; ++m) {
            if (m + key.j <= order) {
                PPoly add = c.scaled(binom);
                out.set(m, key.j, out.coeff(m, key.j) + add);
            }
            binom = binom * FieldElem(key.i - m) / FieldElem(m + 1);
        }
    }
    return out;
}

} // namespace

FirstIntegral model_first_integral(ModelKind kind, const FieldElem& a, const FieldElem& b,
                                   int res_a, int res_b, int res_k, const FieldElem& zeta,
                                   int order) {
    LocalModel model = kind == ModelKind::linear
                           ? local_model_linear(a, b, order, true)
                           : local_model_resonant(res_a, res_b, res_k, zeta, order);
    FirstIntegral out;
    // the form coefficients are polynomials, so shifting them is exact
    out.form_at_p.a1 = shift_z1_to_base(model.form.a1, order);
    out.form_at_p.a2 = shift_z1_to_base(model.form.a2, order);
    // the generator is a rational function: rebuild its expansion at the base
    // point instead of shifting the origin truncation, which would corrupt
    // low degrees
    if (kind == ModelKind::linear) {
        out.z_component = Jet2::coordinate(2, order);
    } else {
        Jet2 u_base = shift_z1_to_base(
            Jet2::monomial(res_a * res_k, res_b * res_k, FieldElem(1), order), order);
        Jet2 one = Jet2::constant(FieldElem(1), order);
        out.z_component = u_base * (one + u_base.scaled(zeta)).inverse_unit() *
                          Jet2::coordinate(2, order);
    }

    // solve dI ^ w = 0:  dI/dw = dI/dz2 * P / Q, picard iteration from I = z2;
    // R vanishes at the base point, so the with_order reinterpretation is exact
    Jet2 R = out.form_at_p.a1 * out.form_at_p.a2.inverse_unit();
    Jet2 I = Jet2::coordinate(2, order);
    for (int it = 0; it <= order; ++it)
        I = Jet2::coordinate(2, order) + (I.d2().with_order(order) * R).integrate_z1();
    out.I = I;
    return out;
}

Jet2 transversal_flow_field(ModelKind kind, int res_b, int res_k, const FieldElem& zeta,
                            const Jet2& at, int order) {
    if (kind == ModelKind::linear) return at;
    Jet2 ubk = at.pow(res_b * res_k);
    Jet2 one = Jet2::constant(FieldElem(1), order);
    return ubk * at * (one + ubk.scaled(zeta)).inverse_unit();
}

JetMap glue_transition(const JetMap& phi, const JetVectorField& X, int slot, bool active,
                       int order) {
    if (!active) return phi;
    JetMap fl = flow(X, PPoly::param(slot), order);
    return compose(phi, fl);
}

} // namespace folia
