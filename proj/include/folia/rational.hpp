#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace folia {

// Exact rational scalar. All core arithmetic in this project is exact;
// floating point never enters any computation path.
using Rat = mpq_class;
using Int = mpz_class;

// Raised when a question cannot be decided exactly in the current field
// tower (square tests beyond quadratic towers, positivity without a real
// embedding, root finding past the tower degree cap, ...). Callers either
// surface it as an UNDETERMINED outcome or translate it into a report flag.
class Undetermined : public std::runtime_error {
public:
    explicit Undetermined(const std::string& what) : std::runtime_error(what) {}
};

enum class Tri { yes, no, unknown };

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline int rat_sign(const Rat& r) { return sgn(r); }

// Exact square test over Q. Returns the nonnegative square root if r is a
// square of a rational.
inline std::optional<Rat> rat_sqrt(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    const Int& num = r.get_num();
    const Int& den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rat root(sn, sd);
    root.canonicalize();
    return root;
}

} // namespace folia
