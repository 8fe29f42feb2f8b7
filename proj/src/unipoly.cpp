#include "folia/unipoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace folia {

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const FieldElem& UniPoly::coeff(int i) const {
    static const FieldElem zero;
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<FieldElem> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    }
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const FieldElem& s) const {
    std::vector<FieldElem> r = c_;
    for (auto& x : r) x *= s;
    return UniPoly(std::move(r));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    return scaled(leading().inverse());
}

void UniPoly::divmod(const UniPoly& divisor, UniPoly& q, UniPoly& r) const {
    assert(!divisor.is_zero());
    FieldElem lb_inv = divisor.leading().inverse();
    int db = divisor.degree();
    std::vector<FieldElem> rem = c_;
    std::vector<FieldElem> quo(std::max<int>(degree() - db + 1, 0));
    auto deg_of = [](const std::vector<FieldElem>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
            if (!v[i].is_zero()) return i;
        return -1;
    };
    int dr;
    while ((dr = deg_of(rem)) >= db) {
        FieldElem f = rem[dr] * lb_inv;
        quo[dr - db] = f;
        for (int j = 0; j <= db; ++j)
            rem[dr - db + j] -= f * divisor.c_[j];
    }
    q = UniPoly(std::move(quo));
    r = UniPoly(std::move(rem));
}

UniPoly UniPoly::derivative() const {
    if (degree() < 1) return {};
    std::vector<FieldElem> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * FieldElem(static_cast<long>(i));
    return UniPoly(std::move(r));
}

FieldElem UniPoly::eval(const FieldElem& x) const {
    FieldElem acc;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly q, r;
        a.divmod(b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

UniPoly UniPoly::squarefree_part() const {
    if (degree() < 1) return monic();
    UniPoly g = gcd(*this, derivative());
    if (g.degree() < 1) return monic();
    UniPoly q, r;
    divmod(g, q, r);
    assert(r.is_zero());
    return q.monic();
}

UniPoly UniPoly::deflate(const FieldElem& root) const {
    UniPoly lin({-root, FieldElem(1)});
    UniPoly q, r;
    divmod(lin, q, r);
    if (!r.is_zero()) throw std::logic_error("deflate: not a root");
    return q;
}

bool UniPoly::rational_coeffs() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const FieldElem& e) { return e.is_rational(); });
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c_[i].to_string();
        bool unit = (cs == "1") && i > 0;
        if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
        if (!unit) os << cs;
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// --- rational roots --------------------------------------------------------

namespace {

std::vector<Int> divisors_of(const Int& n0) {
    Int n = abs(n0);
    assert(n != 0);
    std::vector<Int> primes;
    std::vector<int> mult;
    Int m = n;
    for (Int p = 2; p * p <= m;) {
        if (m % p == 0) {
            primes.push_back(p);
            mult.push_back(0);
            while (m % p == 0) { m /= p; ++mult.back(); }
        }
        p += (p == 2 ? 1 : 2);
        if (p > 2000000 && m > 1)
            throw Undetermined("rational root search: coefficient too hard to factor");
    }
    if (m > 1) { primes.push_back(m); mult.push_back(1); }
    std::vector<Int> divs = {Int(1)};
    for (size_t i = 0; i < primes.size(); ++i) {
        size_t sz = divs.size();
        Int pe = 1;
        for (int e = 1; e <= mult[i]; ++e) {
            pe *= primes[i];
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
        }
        if (divs.size() > 20000)
            throw Undetermined("rational root search: too many divisor candidates");
    }
    return divs;
}

} // namespace

std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs0) {
    std::vector<Rat> coeffs = coeffs0;
    while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
    std::vector<Rat> roots;
    if (coeffs.size() <= 1) return roots;
    size_t low = 0;
    while (low < coeffs.size() && sgn(coeffs[low]) == 0) ++low;
    if (low > 0) roots.push_back(Rat(0));
    std::vector<Rat> c(coeffs.begin() + low, coeffs.end());
    if (c.size() > 1) {
        Int den = 1;
        for (const auto& q : c) den = lcm(den, q.get_den());
        std::vector<Int> ic;
        ic.reserve(c.size());
        for (const auto& q : c) ic.push_back(Int(q * den));
        auto is_root = [&](const Rat& x) {
            Rat acc = 0;
            for (int i = static_cast<int>(ic.size()) - 1; i >= 0; --i)
                acc = acc * x + Rat(ic[i]);
            return sgn(acc) == 0;
        };
        for (const auto& p : divisors_of(ic.front()))
            for (const auto& q : divisors_of(ic.back())) {
                Rat cand(p, q);
                cand.canonicalize();
                for (int s : {+1, -1}) {
                    Rat x = s * cand;
                    if (is_root(x) && std::find(roots.begin(), roots.end(), x) == roots.end())
                        roots.push_back(x);
                }
            }
    }
    std::sort(roots.begin(), roots.end(), [](const Rat& a, const Rat& b) { return a < b; });
    return roots;
}

// --- root ladder ------------------------------------------------------------

RootSearch roots_in_field(const UniPoly& g0, TowerPtr tower, long degree_cap) {
    RootSearch out;
    out.tower = tower;
    UniPoly g = g0.squarefree_part();
    if (g.degree() < 1) return out;

    auto push_root = [&](const FieldElem& r) {
        out.roots.push_back(r);
        g = g.deflate(r);
    };

    // rational roots first (valid in any tower)
    if (g.rational_coeffs()) {
        std::vector<Rat> rc;
        rc.reserve(g.coeffs().size());
        for (const auto& e : g.coeffs()) rc.push_back(e.to_rational());
        for (const auto& r : rational_roots(rc)) push_root(FieldElem(r));
    } else {
        // over a tower: peel off root 0, then rational candidates from the
        // rational sub-vector are not sound in general; rely on low degrees below
        while (g.degree() >= 1 && g.coeff(0).is_zero()) push_root(FieldElem(0));
    }

    if (g.degree() == 1) {
        push_root(-g.coeff(0) / g.coeff(1));
        return out;
    }
    if (g.degree() == 2) {
        UniPoly m = g.monic();
        FieldElem c1 = m.coeff(1), c0 = m.coeff(0);
        FieldElem disc = c1 * c1 - FieldElem(4) * c0;
        FieldElem s;
        switch (disc.square_root(&s)) {
        case Tri::yes: {
            FieldElem half(Rat(1, 2));
            push_root((-c1 + s) * half);
            push_root((-c1 - s) * half);
            return out;
        }
        case Tri::no: {
            // irreducible quadratic: adjoin one root
            out.tower = adjoin_root(out.tower, m.coeffs(), degree_cap);
            out.extended = true;
            int lv = out.tower->height();
            FieldElem alpha = FieldElem::generator(out.tower, lv);
            out.roots.push_back(alpha);
            out.roots.push_back(-c1.promoted(out.tower, lv) - alpha);
            return out;
        }
        case Tri::unknown:
            throw Undetermined("roots: square test undecidable for factor " + m.to_string());
        }
    }
    if (g.degree() >= 3)
        throw Undetermined("roots: unresolved factor of degree " +
                           std::to_string(g.degree()) + ": " + g.to_string());
    return out;
}

} // namespace folia
