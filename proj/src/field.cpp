#include "folia/field.hpp"

#include "folia/unipoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace folia {
namespace {

// --- small polynomial helpers over FieldElem coefficient vectors ---------
// (ascending coefficients; used for arithmetic modulo a tower minpoly)

using PVec = std::vector<FieldElem>;

int pdeg(const PVec& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!p[i].is_zero()) return i;
    return -1;
}

void ptrim(PVec& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

PVec psub(const PVec& a, const PVec& b) {
    PVec r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        FieldElem x = i < a.size() ? a[i] : FieldElem();
        FieldElem y = i < b.size() ? b[i] : FieldElem();
        r[i] = x - y;
    }
    ptrim(r);
    return r;
}

PVec pmul(const PVec& a, const PVec& b) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    ptrim(r);
    return r;
}

PVec pscale(const PVec& a, const FieldElem& s) {
    PVec r = a;
    for (auto& c : r) c *= s;
    ptrim(r);
    return r;
}

// division with remainder; divisor must have invertible leading coefficient
void pdivmod(const PVec& a, const PVec& b, PVec& q, PVec& r) {
    int db = pdeg(b);
    assert(db >= 0);
    FieldElem lb_inv = b[db].inverse();
    r = a;
    ptrim(r);
    q.assign(std::max<int>(pdeg(r) - db + 1, 0), FieldElem());
    while (pdeg(r) >= db) {
        int dr = pdeg(r);
        FieldElem f = r[dr] * lb_inv;
        q[dr - db] = f;
        for (int j = 0; j <= db; ++j)
            r[dr - db + j] -= f * b[j];
        ptrim(r);
    }
}

// extended euclid: returns g and u with u*a = g (mod m); g a nonzero
// constant when gcd(a, m) = 1
void pxgcd_mod(const PVec& a, const PVec& m, PVec& g, PVec& u) {
    PVec r0 = m, r1 = a;
    PVec u0 = {}, u1 = {FieldElem(1)};
    ptrim(r1);
    while (pdeg(r1) >= 0) {
        PVec q, rem;
        pdivmod(r0, r1, q, rem);
        PVec u2 = psub(u0, pmul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    g = std::move(r0);
    u = std::move(u0);
}

} // namespace

// --- FieldElem ------------------------------------------------------------

FieldElem::FieldElem(TowerPtr tower, int level, std::vector<FieldElem> coords)
    : tower_(std::move(tower)), level_(level), coords_(std::move(coords)) {
    if (level_ < 1 || !tower_ || level_ > tower_->height())
        throw std::invalid_argument("FieldElem: bad tower level");
    coords_.resize(tower_->level(level_).degree);
    normalize();
}

FieldElem FieldElem::generator(const TowerPtr& tower, int level) {
    if (!tower || level < 1 || level > tower->height())
        throw std::invalid_argument("generator: bad tower level");
    std::vector<FieldElem> c(tower->level(level).degree);
    c[1] = FieldElem(1);
    return FieldElem(tower, level, std::move(c));
}

void FieldElem::normalize() {
    // nothing to do: dense fixed-length coords are already canonical
}

bool FieldElem::is_zero() const {
    if (level_ == 0) return sgn(rat_) == 0;
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const FieldElem& c) { return c.is_zero(); });
}

bool FieldElem::is_one() const {
    if (level_ == 0) return rat_ == 1;
    if (!coords_[0].is_one()) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

bool FieldElem::is_rational() const {
    if (level_ == 0) return true;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return coords_[0].is_rational();
}

Rat FieldElem::to_rational() const {
    if (level_ == 0) return rat_;
    if (!is_rational()) throw std::domain_error("to_rational: element is not rational");
    return coords_[0].to_rational();
}

FieldElem FieldElem::promoted(const TowerPtr& tower, int level) const {
    if (level == level_ && tower_ == tower) return *this;
    if (level < level_) throw std::invalid_argument("promoted: cannot demote");
    if (level == 0) return *this;
    // wrap into the coordinate vector of the next level up, repeatedly
    FieldElem cur = *this;
    if (cur.level_ > 0) cur.tower_ = tower; // same prefix by compatibility
    while (cur.level_ < level) {
        int next = cur.level_ + 1;
        std::vector<FieldElem> c(tower->level(next).degree);
        c[0] = cur;
        cur = FieldElem(tower, next, std::move(c));
    }
    return cur;
}

void FieldElem::unify(FieldElem& a, FieldElem& b) {
    TowerPtr taller;
    if (!Tower::compatible(a.tower_, b.tower_, &taller))
        throw std::invalid_argument("FieldElem: elements live in incompatible towers");
    int lv = std::max(a.level_, b.level_);
    if (lv == 0) return;
    a = a.promoted(taller, lv);
    b = b.promoted(taller, lv);
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    if (level_ == 0) {
        r.rat_ = -r.rat_;
    } else {
        for (auto& c : r.coords_) c = -c;
    }
    return r;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    FieldElem a = *this, b = o;
    unify(a, b);
    if (a.level_ == 0) return FieldElem(a.rat_ + b.rat_);
    for (size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] += b.coords_[i];
    return a;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
    FieldElem a = *this, b = o;
    unify(a, b);
    if (a.level_ == 0) return FieldElem(a.rat_ * b.rat_);
    const auto& m = a.tower_->level(a.level_).minpoly;
    int d = a.tower_->level(a.level_).degree;
    PVec prod = pmul(a.coords_, b.coords_);
    prod.resize(std::max<size_t>(prod.size(), d));
    for (int i = static_cast<int>(prod.size()) - 1; i >= d; --i) {
        if (prod[i].is_zero()) continue;
        FieldElem f = prod[i];
        prod[i] = FieldElem();
        for (int j = 0; j < d; ++j)
            prod[i - d + j] -= f * m[j];
    }
    prod.resize(d);
    return FieldElem(a.tower_, a.level_, std::move(prod));
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw std::domain_error("FieldElem: division by zero");
    if (level_ == 0) return FieldElem(Rat(1) / rat_);
    const auto& m = tower_->level(level_).minpoly;
    PVec g, u;
    PVec self = coords_;
    ptrim(self);
    pxgcd_mod(self, m, g, u);
    if (pdeg(g) != 0)
        throw std::logic_error("FieldElem: minpoly not irreducible (inverse failed)");
    PVec inv = pscale(u, g[0].inverse());
    inv.resize(tower_->level(level_).degree);
    return FieldElem(tower_, level_, std::move(inv));
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem base = *this, acc(1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
    FieldElem a = *this, b = o;
    unify(a, b);
    if (a.level_ == 0) return a.rat_ == b.rat_;
    return a.coords_ == b.coords_;
}

std::optional<int> FieldElem::sign() const {
    if (level_ == 0) return sgn(rat_);
    if (is_rational()) return sgn(to_rational());
    if (level_ == 1) {
        const auto& lv = tower_->level(1);
        if (lv.quadratic_over_q && lv.disc_sign > 0) {
            // alpha designated as the larger real root of t^2 + c t + d:
            // alpha = (-c + sqrt(disc)) / 2
            Rat p = coords_[0].to_rational();
            Rat q = coords_[1].to_rational();
            if (sgn(q) == 0) return sgn(p);
            // sign(p + q*alpha) = sign(q) * sign(alpha - r), r = -p/q
            Rat r = -p / q;
            Rat lhs = 2 * r + lv.c; // alpha > r  <=>  sqrt(disc) > lhs
            Rat disc = lv.c * lv.c - 4 * lv.d;
            int alpha_cmp;
            if (sgn(lhs) < 0)
                alpha_cmp = 1;
            else
                alpha_cmp = disc > lhs * lhs ? 1 : -1; // equality impossible (alpha irrational)
            return sgn(q) * alpha_cmp;
        }
    }
    return std::nullopt;
}

Tri FieldElem::is_real() const {
    if (level_ == 0 || is_rational()) return Tri::yes;
    if (level_ == 1) {
        const auto& lv = tower_->level(1);
        if (lv.quadratic_over_q) return lv.disc_sign > 0 ? Tri::yes : Tri::no;
    }
    return Tri::unknown;
}

Tri FieldElem::square_root(FieldElem* root_out) const {
    if (level_ == 0) {
        auto s = rat_sqrt(rat_);
        if (!s) return Tri::no;
        if (root_out) *root_out = FieldElem(*s);
        return Tri::yes;
    }
    if (level_ == 1 && tower_->level(1).quadratic_over_q) {
        const auto& lv = tower_->level(1);
        Rat a = coords_[0].to_rational();
        Rat b = coords_[1].to_rational();
        auto make = [&](const Rat& p, const Rat& q) {
            return FieldElem(tower_, 1, {FieldElem(p), FieldElem(q)});
        };
        // q = 0 candidate: x must be a rational square
        if (sgn(b) == 0) {
            if (auto s = rat_sqrt(a)) {
                if (root_out) *root_out = make(*s, 0);
                return Tri::yes;
            }
        }
        // q != 0 candidate: (p + q*alpha)^2 = x leads to
        // (c^2-4d) u^2 + (2bc-4a) u + b^2 = 0 with u = q^2
        Rat A2 = lv.c * lv.c - 4 * lv.d;
        Rat B2 = 2 * b * lv.c - 4 * a;
        Rat C2 = b * b;
        Rat disc2 = B2 * B2 - 4 * A2 * C2;
        if (auto sd = rat_sqrt(disc2)) {
            for (int pm : {+1, -1}) {
                Rat u = (-B2 + pm * *sd) / (2 * A2);
                if (sgn(u) <= 0) continue;
                auto q = rat_sqrt(u);
                if (!q || sgn(*q) == 0) continue;
                Rat p = (b + lv.c * u) / (2 * *q);
                FieldElem y = make(p, *q);
                if (y * y == *this) {
                    if (root_out) *root_out = y;
                    return Tri::yes;
                }
                FieldElem y2 = make(-p, -*q);
                if (y2 * y2 == *this) {
                    if (root_out) *root_out = y2;
                    return Tri::yes;
                }
            }
        }
        return Tri::no;
    }
    // deeper towers: only the rational-square shortcut is exact
    if (is_rational()) {
        if (auto s = rat_sqrt(to_rational())) {
            if (root_out) *root_out = FieldElem(*s).promoted(tower_, level_);
            return Tri::yes;
        }
    }
    return Tri::unknown;
}

int FieldElem::cmp_key(const FieldElem& a0, const FieldElem& b0) {
    FieldElem a = a0, b = b0;
    unify(a, b);
    if (a.level_ == 0) return cmp(a.rat_, b.rat_);
    for (size_t i = 0; i < a.coords_.size(); ++i) {
        int c = cmp_key(a.coords_[i], b.coords_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string FieldElem::to_string() const {
    if (level_ == 0) return rat_.get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string c = coords_[i].to_string();
        if (c.find(' ') != std::string::npos) c = "(" + c + ")";
        if (i == 0) {
            os << c;
        } else {
            if (c != "1") os << c << "*";
            os << "a" << level_;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

// --- Tower ----------------------------------------------------------------

TowerPtr Tower::extend(const TowerPtr& base, std::vector<FieldElem> minpoly) {
    auto t = std::make_shared<Tower>();
    if (base) t->levels_ = base->levels_;
    Level lv;
    while (!minpoly.empty() && minpoly.back().is_zero()) minpoly.pop_back();
    if (minpoly.size() < 3 || !minpoly.back().is_one())
        throw std::invalid_argument("Tower::extend: need a monic polynomial of degree >= 2");
    lv.degree = static_cast<int>(minpoly.size()) - 1;
    lv.minpoly = std::move(minpoly);
    if (t->levels_.empty() && lv.degree == 2 && lv.minpoly[0].is_rational() &&
        lv.minpoly[1].is_rational()) {
        lv.quadratic_over_q = true;
        lv.c = lv.minpoly[1].to_rational();
        lv.d = lv.minpoly[0].to_rational();
        lv.disc_sign = sgn(lv.c * lv.c - 4 * lv.d);
    }
    t->levels_.push_back(std::move(lv));
    return t;
}

long Tower::total_degree() const {
    long d = 1;
    for (const auto& lv : levels_) d *= lv.degree;
    return d;
}

bool Tower::compatible(const TowerPtr& a, const TowerPtr& b, TowerPtr* taller) {
    auto is_prefix = [](const Tower& small, const Tower& big) {
        if (small.levels_.size() > big.levels_.size()) return false;
        for (size_t i = 0; i < small.levels_.size(); ++i) {
            const auto& x = small.levels_[i].minpoly;
            const auto& y = big.levels_[i].minpoly;
            if (x.size() != y.size()) return false;
            for (size_t j = 0; j < x.size(); ++j)
                if (!(x[j] == y[j])) return false;
        }
        return true;
    };
    if (!a) { if (taller) *taller = b; return true; }
    if (!b) { if (taller) *taller = a; return true; }
    if (a == b) { if (taller) *taller = a; return true; }
    if (is_prefix(*a, *b)) { if (taller) *taller = b; return true; }
    if (is_prefix(*b, *a)) { if (taller) *taller = a; return true; }
    return false;
}

std::string Tower::describe() const {
    std::ostringstream os;
    os << "Q";
    for (size_t k = 0; k < levels_.size(); ++k) {
        os << (k == 0 ? "(" : ", ") << "a" << (k + 1) << ": ";
        const auto& m = levels_[k].minpoly;
        bool first = true;
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) {
            if (m[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            std::string c = m[i].to_string();
            if (c != "1" || i == 0) os << c;
            if (i > 0) {
                if (c != "1") os << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
        }
    }
    if (!levels_.empty()) os << ")";
    return os.str();
}

// --- adjoin_root ----------------------------------------------------------

TowerPtr adjoin_root(const TowerPtr& base, const std::vector<FieldElem>& minpoly0,
                     long degree_cap) {
    std::vector<FieldElem> m = minpoly0;
    while (!m.empty() && m.back().is_zero()) m.pop_back();
    if (m.size() < 3)
        throw std::invalid_argument("adjoin_root: degree must be at least 2");
    if (!m.back().is_one())
        throw std::invalid_argument("adjoin_root: polynomial must be monic");
    int deg = static_cast<int>(m.size()) - 1;
    long base_deg = base ? base->total_degree() : 1;
    if (base_deg * deg > degree_cap)
        throw Undetermined("adjoin_root: tower degree cap exceeded");

    bool rational_coeffs =
        std::all_of(m.begin(), m.end(), [](const FieldElem& e) { return e.is_rational(); });

    if (deg == 2) {
        // irreducible over the current field iff the discriminant is not a square
        FieldElem c1 = m[1], c0 = m[0];
        FieldElem disc = c1 * c1 - FieldElem(4) * c0;
        FieldElem s;
        switch (disc.square_root(&s)) {
        case Tri::no:
            return Tower::extend(base, m);
        case Tri::yes: {
            FieldElem half = FieldElem(Rat(1, 2));
            FieldElem r1 = (-c1 + s) * half, r2 = (-c1 - s) * half;
            throw std::invalid_argument("adjoin_root: reducible, factors (t - (" +
                                        r1.to_string() + "))*(t - (" + r2.to_string() + "))");
        }
        case Tri::unknown:
            throw Undetermined("adjoin_root: irreducibility undecidable in this tower");
        }
    }
    if (rational_coeffs && tower_height(base) == 0) {
        std::vector<Rat> rc;
        rc.reserve(m.size());
        for (const auto& e : m) rc.push_back(e.to_rational());
        auto roots = rational_roots(rc);
        if (!roots.empty())
            throw std::invalid_argument("adjoin_root: reducible, rational root t = " +
                                        roots.front().get_str());
        if (deg == 3)
            return Tower::extend(base, m); // cubic with no rational root is irreducible over Q
        throw Undetermined("adjoin_root: cannot certify irreducibility for degree " +
                           std::to_string(deg));
    }
    throw Undetermined("adjoin_root: cannot certify irreducibility over this tower");
}

} // namespace folia
