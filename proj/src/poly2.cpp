#include "folia/poly2.hpp"

#include <sstream>
#include <stdexcept>

namespace folia {

Poly2 Poly2::constant(FieldElem v) {
    Poly2 p;
    p.set(0, 0, std::move(v));
    return p;
}

Poly2 Poly2::monomial(int i, int j, FieldElem c) {
    Poly2 p;
    p.set(i, j, std::move(c));
    return p;
}

void Poly2::set(int i, int j, FieldElem c) {
    if (c.is_zero())
        t_.erase(Key{i, j});
    else
        t_[Key{i, j}] = std::move(c);
}

FieldElem Poly2::coeff(int i, int j) const {
    auto it = t_.find(Key{i, j});
    return it == t_.end() ? FieldElem() : it->second;
}

Poly2 Poly2::operator+(const Poly2& o) const {
    Poly2 r = *this;
    for (const auto& [k, v] : o.t_) {
        auto it = r.t_.find(k);
        if (it == r.t_.end()) {
            r.t_.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) r.t_.erase(it);
        }
    }
    return r;
}

Poly2 Poly2::operator-() const {
    Poly2 r = *this;
    for (auto& [k, v] : r.t_) v = -v;
    return r;
}

Poly2 Poly2::operator-(const Poly2& o) const { return *this + (-o); }

Poly2 Poly2::operator*(const Poly2& o) const {
    Poly2 r;
    for (const auto& [k1, v1] : t_)
        for (const auto& [k2, v2] : o.t_) {
            Key k{k1.i + k2.i, k1.j + k2.j};
            auto it = r.t_.find(k);
            if (it == r.t_.end()) {
                FieldElem prod = v1 * v2;
                if (!prod.is_zero()) r.t_.emplace(k, std::move(prod));
            } else {
                it->second += v1 * v2;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    return r;
}

Poly2 Poly2::scaled(const FieldElem& s) const {
    Poly2 r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * s);
    return r;
}

std::optional<int> Poly2::order() const {
    if (t_.empty()) return std::nullopt;
    return t_.begin()->first.i + t_.begin()->first.j; // graded order: first is minimal
}

int Poly2::total_degree() const {
    if (t_.empty()) return -1;
    return t_.rbegin()->first.i + t_.rbegin()->first.j;
}

Poly2 Poly2::homogeneous_part(int d) const {
    Poly2 r;
    for (const auto& [k, v] : t_)
        if (k.i + k.j == d) r.t_.emplace(k, v);
    return r;
}

Poly2 Poly2::dx() const {
    Poly2 r;
    for (const auto& [k, v] : t_)
        if (k.i > 0) r.set(k.i - 1, k.j, v * FieldElem(static_cast<long>(k.i)));
    return r;
}

Poly2 Poly2::dy() const {
    Poly2 r;
    for (const auto& [k, v] : t_)
        if (k.j > 0) r.set(k.i, k.j - 1, v * FieldElem(static_cast<long>(k.j)));
    return r;
}

Poly2 Poly2::subst_y_xy() const {
    Poly2 r;
    for (const auto& [k, v] : t_) r.set(k.i + k.j, k.j, v);
    return r;
}

Poly2 Poly2::subst_x_xy() const {
    Poly2 r;
    for (const auto& [k, v] : t_) r.set(k.i, k.i + k.j, v);
    return r;
}

bool Poly2::divisible_x(int k) const {
    for (const auto& [key, v] : t_) {
        (void)v;
        if (key.i < k) return false;
    }
    return true;
}

bool Poly2::divisible_y(int k) const {
    for (const auto& [key, v] : t_) {
        (void)v;
        if (key.j < k) return false;
    }
    return true;
}

Poly2 Poly2::divide_x(int k) const {
    if (!divisible_x(k)) throw std::logic_error("divide_x: not divisible");
    Poly2 r;
    for (const auto& [key, v] : t_) r.set(key.i - k, key.j, v);
    return r;
}

Poly2 Poly2::divide_y(int k) const {
    if (!divisible_y(k)) throw std::logic_error("divide_y: not divisible");
    Poly2 r;
    for (const auto& [key, v] : t_) r.set(key.i, key.j - k, v);
    return r;
}

Poly2 Poly2::translate_y(const FieldElem& c) const {
    if (c.is_zero()) return *this;
    // x^i (y+c)^j = x^i sum_m C(j,m) c^(j-m) y^m
    Poly2 r;
    for (const auto& [k, v] : t_) {
        FieldElem binom(1); // C(j, m), starting at m = j
        FieldElem cpow(1);  // c^(j-m)
        for (int m = k.j; m >= 0; --m) {
            r.set(k.i, m, r.coeff(k.i, m) + v * binom * cpow);
            if (m > 0)
                binom = binom * FieldElem(static_cast<long>(m)) /
                        FieldElem(static_cast<long>(k.j - m + 1));
            cpow = cpow * c;
        }
    }
    return r;
}

Poly2 Poly2::translate_x(const FieldElem& c) const {
    return swap_xy().translate_y(c).swap_xy();
}

Poly2 Poly2::swap_xy() const {
    Poly2 r;
    for (const auto& [k, v] : t_) r.set(k.j, k.i, v);
    return r;
}

Poly2 Poly2::subst_linear(const FieldElem& a, const FieldElem& b,
                          const FieldElem& c, const FieldElem& d) const {
    Poly2 X = Poly2::monomial(1, 0, a) + Poly2::monomial(0, 1, b);
    Poly2 Y = Poly2::monomial(1, 0, c) + Poly2::monomial(0, 1, d);
    // cache powers
    int dm = total_degree();
    std::vector<Poly2> xp(dm + 1), yp(dm + 1);
    if (dm >= 0) {
        xp[0] = Poly2::constant(FieldElem(1));
        yp[0] = xp[0];
        for (int i = 1; i <= dm; ++i) {
            xp[i] = xp[i - 1] * X;
            yp[i] = yp[i - 1] * Y;
        }
    }
    Poly2 r;
    for (const auto& [k, v] : t_) r += (xp[k.i] * yp[k.j]).scaled(v);
    return r;
}

UniPoly Poly2::restrict_x0() const {
    std::vector<FieldElem> c;
    for (const auto& [k, v] : t_) {
        if (k.i != 0) continue;
        if (static_cast<int>(c.size()) <= k.j) c.resize(k.j + 1);
        c[k.j] = v;
    }
    return UniPoly(std::move(c));
}

UniPoly Poly2::restrict_y0() const { return swap_xy().restrict_x0(); }

FieldElem Poly2::eval(const FieldElem& x, const FieldElem& y) const {
    FieldElem acc;
    for (const auto& [k, v] : t_) acc += v * x.pow(k.i) * y.pow(k.j);
    return acc;
}

std::string Poly2::to_string(const std::string& xs, const std::string& ys) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : t_) {
        std::string c = v.to_string();
        bool neg = !c.empty() && c[0] == '-' && c.find(' ') == std::string::npos;
        if (first) {
            if (neg) { os << "-"; c = c.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) c = c.substr(1);
        }
        first = false;
        if (c.find(' ') != std::string::npos || c.find('+') != std::string::npos)
            c = "(" + c + ")";
        bool unit = (c == "1") && (k.i > 0 || k.j > 0);
        if (!unit) os << c;
        if (k.i > 0) {
            if (!unit) os << "*";
            os << xs;
            if (k.i > 1) os << "^" << k.i;
            unit = false;
        }
        if (k.j > 0) {
            if (!unit) os << "*";
            os << ys;
            if (k.j > 1) os << "^" << k.j;
        }
    }
    return os.str();
}

int multiplicity(const OneForm& w) {
    if (w.is_zero()) throw std::invalid_argument("multiplicity: zero form");
    auto oa = w.a.order(), ob = w.b.order();
    if (!oa) return *ob;
    if (!ob) return *oa;
    return std::min(*oa, *ob);
}

VectorField2 dual_vector_field(const OneForm& w) { return {w.b, -w.a}; }

Mat2 linear_part(const VectorField2& X) {
    return Mat2{X.p.coeff(1, 0), X.p.coeff(0, 1), X.q.coeff(1, 0), X.q.coeff(0, 1)};
}

bool vanishes_at_origin(const OneForm& w) {
    return w.a.coeff(0, 0).is_zero() && w.b.coeff(0, 0).is_zero();
}

Poly2 contraction(const VectorField2& X, const OneForm& w) {
    return X.p * w.a + X.q * w.b;
}

} // namespace folia
