#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "folia/rational.hpp"

namespace folia {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

// Element of Q or of a simple algebraic extension tower
// Q = F_0 < F_1 = F_0[t]/(m_1) < ... < F_h = F_{h-1}[t]/(m_h).
//
// Level-0 elements carry no tower pointer. An element at level k > 0 is a
// dense coordinate vector of length deg(m_k) over F_{k-1}; the representation
// is canonical, so structural equality is mathematical equality.
class FieldElem {
public:
    FieldElem() : rat_(0) {}
    FieldElem(long n) : rat_(n) {}
    FieldElem(int n) : rat_(n) {}
    explicit FieldElem(Rat r) : rat_(std::move(r)) { rat_.canonicalize(); }
    FieldElem(TowerPtr tower, int level, std::vector<FieldElem> coords);

    // the generator alpha_level of the given tower level (1-based)
    static FieldElem generator(const TowerPtr& tower, int level);

    int level() const { return level_; }
    const TowerPtr& tower() const { return tower_; }
    const Rat& rat() const { return rat_; }
    const std::vector<FieldElem>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rat to_rational() const; // requires is_rational()

    FieldElem operator-() const;
    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem& operator+=(const FieldElem& o) { *this = *this + o; return *this; }
    FieldElem& operator-=(const FieldElem& o) { *this = *this - o; return *this; }
    FieldElem& operator*=(const FieldElem& o) { *this = *this * o; return *this; }
    FieldElem inverse() const; // throws std::domain_error on zero
    FieldElem pow(long e) const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    // Exact sign of the element under the designated real embedding.
    // Decidable for rationals and for real quadratic level-1 towers; for
    // complex quadratic towers a non-rational element has no real sign.
    // nullopt means undecidable in this tower.
    std::optional<int> sign() const;

    // Does the element lie in R under any embedding compatible with the
    // tower's designated data?  yes for rationals and real quadratic towers,
    // no for irrational elements of complex quadratic towers.
    Tri is_real() const;

    // Exact square test in the field the element lives in (full over Q and
    // over quadratic level-1 towers, conservative elsewhere).
    Tri square_root(FieldElem* root_out = nullptr) const;

    // Deterministic total order for sorting and canonical output.
    // Bookkeeping only: does not claim to match any real embedding.
    static int cmp_key(const FieldElem& a, const FieldElem& b);

    // Promote to the given tower level (tower must extend the current one).
    FieldElem promoted(const TowerPtr& tower, int level) const;

    std::string to_string() const;

private:
    TowerPtr tower_;               // null iff level_ == 0
    int level_ = 0;
    Rat rat_;                      // payload when level_ == 0
    std::vector<FieldElem> coords_; // payload when level_ > 0, size deg(m_level)

    void normalize();
    static void unify(FieldElem& a, FieldElem& b);
    friend class Tower;
};

// Immutable tower of simple extensions. Extension returns a new tower
// sharing the prefix; elements of the old tower promote into the new one.
class Tower {
public:
    struct Level {
        std::vector<FieldElem> minpoly; // monic, ascending, coeffs at level-1
        int degree = 0;
        // For level-1 quadratics t^2 + c t + d over Q we keep the data the
        // sign and square-root routines need.
        bool quadratic_over_q = false;
        Rat c, d;
        int disc_sign = 0; // sign of c^2 - 4d; > 0 designates the larger real root
    };

    // Extends `base` (null = Q) by a monic minimal polynomial, assumed
    // irreducible over the top of `base`; adjoin_root() below verifies that.
    static TowerPtr extend(const TowerPtr& base, std::vector<FieldElem> minpoly);

    int height() const { return static_cast<int>(levels_.size()); }
    long total_degree() const;
    const Level& level(int k) const { return levels_.at(k - 1); } // 1-based

    // true if a is a prefix of b or vice versa; *taller receives the taller one
    static bool compatible(const TowerPtr& a, const TowerPtr& b, TowerPtr* taller);

    std::string describe() const;

private:
    std::vector<Level> levels_;
};

inline int tower_height(const TowerPtr& t) { return t ? t->height() : 0; }

// Verified root adjunction: checks that m (monic, over the top of `base`)
// is irreducible as far as the supported criteria go, enforces the tower
// degree cap, and returns the extended tower. On reducible input throws
// std::invalid_argument naming a witness factor; if irreducibility cannot
// be decided, throws Undetermined.
TowerPtr adjoin_root(const TowerPtr& base, const std::vector<FieldElem>& minpoly,
                     long degree_cap = 8);

} // namespace folia
