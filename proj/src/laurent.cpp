#include "hlf/laurent.hpp"

#include <cctype>
#include <sstream>

namespace hlf {

Int ipow(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

Rat rat_pow(unsigned q, int e) {
    if (e >= 0) return Rat(ipow(Int(q), static_cast<unsigned>(e)));
    return Rat(Int(1), ipow(Int(q), static_cast<unsigned>(-e)));
}

std::string Coeff::str() const {
    auto rat_str = [](const Rat& r) {
        std::ostringstream os;
        os << r;
        return os.str();
    };
    if (im_ == 0) return rat_str(re_);
    std::string s = "(" + rat_str(re_);
    if (im_ > 0) s += "+";
    if (im_ == 1) {
        s += "i)";
    } else if (im_ == -1) {
        s += "-i)";
    } else {
        s += rat_str(im_) + "*i)";
    }
    return s;
}

int LaurentX::min_exp() const {
    if (terms_.empty()) throw Error("min_exp of zero LaurentX");
    return terms_.begin()->first;
}

int LaurentX::max_exp() const {
    if (terms_.empty()) throw Error("max_exp of zero LaurentX");
    return terms_.rbegin()->first;
}

LaurentX LaurentX::operator-() const {
    LaurentX r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

LaurentX& LaurentX::operator+=(const LaurentX& o) {
    for (const auto& [k, c] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

LaurentX& LaurentX::operator-=(const LaurentX& o) { return *this += -o; }

LaurentX operator*(const LaurentX& a, const LaurentX& b) {
    LaurentX r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            Coeff prod = ca * cb;
            if (prod.is_zero()) continue;
            auto it = r.terms_.find(ka + kb);
            if (it == r.terms_.end()) {
                r.terms_.emplace(ka + kb, std::move(prod));
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    return r;
}

LaurentX LaurentX::scaled(const Coeff& c) const {
    LaurentX r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        Coeff p = v * c;
        if (!p.is_zero()) r.terms_.emplace(k, std::move(p));
    }
    return r;
}

LaurentX LaurentX::shifted(int k) const {
    LaurentX r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
}

LaurentX lx_guarded_sum(const GuardedFamily& fam) {
    for (std::size_t i = 0; i < fam.items.size(); ++i) {
        const LaurentX& v = fam.items[i];
        if (!v.is_zero() && v.min_exp() < fam.floor)
            throw FloorViolation("guarded sum: member " + std::to_string(i) +
                                 " has X-exponent " + std::to_string(v.min_exp()) +
                                 " below floor " + std::to_string(fam.floor));
    }
    LaurentX sum;
    for (const auto& v : fam.items) sum += v;
    return sum;
}

namespace {

std::string exp_str(int k) {
    if (k == 1) return "X";
    return "X^" + std::to_string(k);
}

bool needs_parens(const Coeff& c) {
    // Integers render bare; fractions and Gaussian values are wrapped
    // when multiplying a power of X.
    if (!c.is_rational()) return false; // already parenthesized by str()
    return boost::multiprecision::denominator(c.re()) != 1;
}

} // namespace

std::string lx_render(const LaurentX& v) {
    if (v.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : v.terms()) {
        if (!first) out += " + ";
        first = false;
        if (k == 0) {
            out += c.str();
        } else if (c.is_one()) {
            out += exp_str(k);
        } else if (c == Coeff(-1)) {
            out += "-" + exp_str(k);
        } else if (needs_parens(c)) {
            out += "(" + c.str() + ")*" + exp_str(k);
        } else {
            out += c.str() + "*" + exp_str(k);
        }
    }
    return out;
}

namespace {

// Minimal tokenizing parser for the canonical grammar (plus harmless
// whitespace variations).
class LxParser {
public:
    explicit LxParser(const std::string& s) : s_(s) {}

    LaurentX parse() {
        LaurentX acc;
        skip_ws();
        bool negate = eat('-');
        acc += term(negate);
        skip_ws();
        while (pos_ < s_.size()) {
            bool neg;
            if (eat('+')) {
                skip_ws();
                neg = eat('-');
            } else if (eat('-')) {
                neg = true;
            } else {
                throw ParseError("expected '+' between terms", pos_);
            }
            acc += term(neg);
            skip_ws();
        }
        return acc;
    }

private:
    LaurentX term(bool negate) {
        skip_ws();
        Coeff c(1);
        bool have_coeff = false;
        if (pos_ < s_.size() && (std::isdigit(peek()) || peek() == '(')) {
            c = coeff();
            have_coeff = true;
        }
        skip_ws();
        int k = 0;
        bool have_x = false;
        if (pos_ < s_.size() && (peek() == '*' || peek() == 'X')) {
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
            expect('X');
            have_x = true;
            k = 1;
            if (pos_ < s_.size() && peek() == '^') {
                ++pos_;
                k = integer();
            }
        }
        if (!have_coeff && !have_x) throw ParseError("empty term", pos_);
        if (negate) c = -c;
        return LaurentX::monomial(k, c);
    }

    Coeff coeff() {
        if (peek() == '(') {
            ++pos_;
            Coeff c = gaussian_or_rational();
            expect(')');
            return c;
        }
        return Coeff(rational());
    }

    Coeff gaussian_or_rational() {
        skip_ws();
        // forms inside parens: r, r+i, r-i, r+s*i, r-s*i, i-only not produced
        Rat re = rational();
        skip_ws();
        if (pos_ < s_.size() && (peek() == '+' || peek() == '-')) {
            bool neg = peek() == '-';
            ++pos_;
            skip_ws();
            Rat im;
            if (peek() == 'i') {
                ++pos_;
                im = 1;
            } else {
                im = rational();
                skip_ws();
                expect('*');
                expect('i');
            }
            if (neg) im = -im;
            return Coeff(re, im);
        }
        return Coeff(re);
    }

    Rat rational() {
        skip_ws();
        bool neg = eat('-');
        Int num = unsigned_int();
        if (pos_ < s_.size() && peek() == '/') {
            ++pos_;
            Int den = unsigned_int();
            if (den == 0) throw ParseError("zero denominator", pos_);
            return neg ? Rat(-num, den) : Rat(num, den);
        }
        return neg ? Rat(-num) : Rat(num);
    }

    Int unsigned_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(peek())) ++pos_;
        if (pos_ == start) throw ParseError("expected integer", pos_);
        return Int(s_.substr(start, pos_ - start));
    }

    int integer() {
        skip_ws();
        bool neg = eat('-');
        Int v = unsigned_int();
        if (v > 1000000) throw ParseError("exponent out of range", pos_);
        int r = static_cast<int>(v);
        return neg ? -r : r;
    }

    char peek() const { return s_[pos_]; }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentX lx_parse(const std::string& text) {
    if (text == "0") return LaurentX::zero();
    return LxParser(text).parse();
}

} // namespace hlf
