#include "folia/parser.hpp"

#include <cctype>
#include <sstream>

namespace folia {
namespace {

// value of a sub-expression: polynomial part + differential parts
struct Val {
    Poly2 p, a, b; // p + a*dx + b*dy
    bool has_diff() const { return !a.is_zero() || !b.is_zero(); }
};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Val parse() {
        Val v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Val expr() {
        Val acc = term();
        for (;;) {
            if (eat('+')) {
                Val t = term();
                acc.p += t.p; acc.a += t.a; acc.b += t.b;
            } else if (eat('-')) {
                Val t = term();
                acc.p -= t.p; acc.a -= t.a; acc.b -= t.b;
            } else {
                return acc;
            }
        }
    }

    Val term() {
        Val acc = factor();
        while (eat('*')) {
            Val f = factor();
            if (acc.has_diff() && f.has_diff())
                fail("nonlinear in differentials");
            if (f.has_diff()) std::swap(acc, f);
            // acc may carry differentials, f is purely polynomial
            acc.p = acc.p * f.p;
            acc.a = acc.a * f.p;
            acc.b = acc.b * f.p;
        }
        return acc;
    }

    Val factor() {
        skip_ws();
        if (eat('-')) {
            Val v = factor();
            v.p = -v.p; v.a = -v.a; v.b = -v.b;
            return v;
        }
        Val v = atom();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            if (v.has_diff()) fail("nonlinear in differentials");
            long e = nat();
            Poly2 r = Poly2::constant(FieldElem(1));
            for (long k = 0; k < e; ++k) r = r * v.p;
            v.p = std::move(r);
        }
        return v;
    }

    long nat() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected exponent");
        long v = std::stol(s_.substr(start, pos_ - start));
        return v;
    }

    Val atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Val v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (c == 'd') {
            if (s_.compare(pos_, 2, "dx") == 0) {
                pos_ += 2;
                Val v; v.a = Poly2::constant(FieldElem(1));
                return v;
            }
            if (s_.compare(pos_, 2, "dy") == 0) {
                pos_ += 2;
                Val v; v.b = Poly2::constant(FieldElem(1));
                return v;
            }
            fail("expected dx or dy");
        }
        if (c == 'x') { ++pos_; Val v; v.p = Poly2::var_x(); return v; }
        if (c == 'y') { ++pos_; Val v; v.p = Poly2::var_y(); return v; }
        fail(std::string("unexpected character '") + c + "'");
    }

    Val number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string num = s_.substr(start, pos_ - start);
        std::string den = "1";
        size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip_ws();
            size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == ds) fail("expected denominator");
            den = s_.substr(ds, pos_ - ds);
            if (den == "0") fail("division by zero in literal");
        } else {
            pos_ = save;
        }
        Val v;
        v.p = Poly2::constant(FieldElem(rat_from_string(num + "/" + den)));
        return v;
    }
};

void print_terms(std::ostringstream& os, const Poly2& p, const char* diff, bool& first) {
    for (const auto& [k, v] : p.terms()) {
        Rat c = v.to_rational();
        bool neg = sgn(c) < 0;
        Rat ac = abs(c);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool need_coeff = !(ac == 1);
        if (need_coeff) os << ac.get_str() << "*";
        if (k.i > 0) {
            os << "x";
            if (k.i > 1) os << "^" << k.i;
            os << "*";
        }
        if (k.j > 0) {
            os << "y";
            if (k.j > 1) os << "^" << k.j;
            os << "*";
        }
        os << diff;
    }
}

} // namespace

OneForm parse_one_form(const std::string& text) {
    Parser p(text);
    Val v = p.parse();
    if (!v.p.is_zero())
        throw ParseError("expression has a non-differential part", 0);
    if (v.a.is_zero() && v.b.is_zero())
        throw ParseError("zero form", 0);
    return OneForm{std::move(v.a), std::move(v.b)};
}

std::string print_one_form(const OneForm& w) {
    std::ostringstream os;
    bool first = true;
    print_terms(os, w.a, "dx", first);
    print_terms(os, w.b, "dy", first);
    return os.str();
}

std::string print_poly(const Poly2& p, const std::string& xs, const std::string& ys) {
    return p.to_string(xs, ys);
}

} // namespace folia
