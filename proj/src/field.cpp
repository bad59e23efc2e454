#include "hlf/field.hpp"

#include <algorithm>
#include <cctype>
#include <climits>

namespace hlf {

namespace {

constexpr std::size_t kExactSizeGuard = 1u << 16;

void check_compat(const FieldRef& a, const FieldRef& b) {
    if (a->q != b->q)
        throw Error("elements from incompatible fields (q=" + std::to_string(a->q) +
                    " vs q=" + std::to_string(b->q) + ")");
}

} // namespace

FieldRef FieldConfig::make(unsigned q, int t1_prec, int t2_prec) {
    if (t1_prec < 1 || t2_prec < 1) throw Error("precisions must be >= 1");
    auto cfg = std::make_shared<FieldConfig>();
    cfg->q = q;
    cfg->t1_prec = t1_prec;
    cfg->t2_prec = t2_prec;
    cfg->gf = GFTable::get(q);
    return cfg;
}

// ---------------------------------------------------------------------------
// EElem

EElem EElem::from_gf(FieldRef f, gf_t c) {
    EElem r(std::move(f));
    if (c != 0) r.coeffs_.push_back(c);
    return r;
}

EElem EElem::t1_pow(FieldRef f, int k) {
    EElem r(std::move(f));
    r.val_ = k;
    r.coeffs_.push_back(1);
    return r;
}

EElem EElem::from_coeffs(FieldRef f, int val, std::vector<gf_t> coeffs, bool exact) {
    EElem r(std::move(f));
    r.val_ = val;
    r.coeffs_ = std::move(coeffs);
    r.exact_ = exact;
    r.normalize();
    return r;
}

EElem EElem::unknown(FieldRef f, int bound) {
    EElem r(std::move(f));
    r.val_ = bound;
    r.exact_ = false;
    return r;
}

void EElem::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead > 0) {
        val_ += static_cast<int>(lead);
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    }
    if (exact_) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty()) val_ = 0;
        if (coeffs_.size() > kExactSizeGuard)
            throw BudgetExceeded("exact t1-expansion exceeds size guard");
    } else {
        if (coeffs_.size() > static_cast<std::size_t>(f_->t1_prec))
            coeffs_.resize(static_cast<std::size_t>(f_->t1_prec));
        if (coeffs_.empty())
            val_ = val_; // O(t1^val): bound carried in val_
    }
}

int EElem::v1() const {
    if (provably_zero()) throw DivisionByZero("t1-valuation of zero");
    if (!provably_nonzero()) throw PrecisionExhausted("t1-valuation undetermined at this window");
    return val_;
}

int EElem::known_until() const { return exact_ ? INT_MAX : val_ + static_cast<int>(coeffs_.size()); }

gf_t EElem::coeff_at(int e) const {
    if (e >= known_until()) throw PrecisionExhausted("t1-coefficient beyond known window");
    if (e < val_ || e >= val_ + static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(e - val_)];
}

EElem EElem::operator-() const {
    EElem r(*this);
    for (auto& c : r.coeffs_) c = f_->gf->neg(c);
    return r;
}

EElem operator+(const EElem& a, const EElem& b) {
    check_compat(a.f_, b.f_);
    if (a.provably_zero()) return b;
    if (b.provably_zero()) return a;
    const auto& gf = *a.f_->gf;
    int lo = std::min(a.val_, b.val_);
    bool exact = a.exact_ && b.exact_;
    int thr = std::min(a.known_until(), b.known_until());
    int hi; // one past last computed exponent
    if (exact) {
        hi = std::max(a.val_ + static_cast<int>(a.coeffs_.size()),
                      b.val_ + static_cast<int>(b.coeffs_.size()));
    } else {
        hi = std::max(lo, thr);
    }
    EElem r(a.f_);
    r.val_ = lo;
    r.exact_ = exact;
    r.coeffs_.reserve(static_cast<std::size_t>(hi - lo));
    for (int e = lo; e < hi; ++e) r.coeffs_.push_back(gf.add(a.coeff_at(e), b.coeff_at(e)));
    r.normalize();
    return r;
}

EElem operator-(const EElem& a, const EElem& b) { return a + (-b); }

EElem operator*(const EElem& a, const EElem& b) {
    check_compat(a.f_, b.f_);
    if (a.provably_zero() || b.provably_zero()) return EElem::zero(a.f_);
    const auto& gf = *a.f_->gf;
    int vlb = a.val_ + b.val_;
    bool exact = a.exact_ && b.exact_;
    int thr = INT_MAX;
    if (!a.exact_) thr = std::min(thr, a.known_until() + b.val_);
    if (!b.exact_) thr = std::min(thr, b.known_until() + a.val_);
    int hi = exact ? vlb + static_cast<int>(a.coeffs_.size() + b.coeffs_.size()) - 1 : thr;

    EElem r(a.f_);
    r.val_ = vlb;
    r.exact_ = exact;
    if (hi > vlb) {
        r.coeffs_.assign(static_cast<std::size_t>(hi - vlb), 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                std::size_t k = i + j;
                if (k >= r.coeffs_.size()) break;
                r.coeffs_[k] = gf.add(r.coeffs_[k], gf.mul(a.coeffs_[i], b.coeffs_[j]));
            }
        }
    }
    r.normalize();
    return r;
}

EElem EElem::inv() const {
    if (provably_zero()) throw DivisionByZero("inverse of zero in E");
    if (!provably_nonzero()) throw PrecisionExhausted("cannot certify nonzero for inversion");
    const auto& gf = *f_->gf;
    if (exact_ && coeffs_.size() == 1) {
        EElem r(f_);
        r.val_ = -val_;
        r.coeffs_.push_back(gf.inv(coeffs_[0]));
        return r;
    }
    // power-series reciprocal of the unit part, to the window cap
    int len = std::min<int>(exact_ ? f_->t1_prec : static_cast<int>(coeffs_.size()), f_->t1_prec);
    gf_t c0inv = gf.inv(coeffs_[0]);
    std::vector<gf_t> b(static_cast<std::size_t>(len), 0);
    b[0] = c0inv;
    for (int i = 1; i < len; ++i) {
        gf_t s = 0;
        for (int j = 1; j <= i; ++j) {
            gf_t aj = static_cast<std::size_t>(j) < coeffs_.size() ? coeffs_[static_cast<std::size_t>(j)] : 0;
            if (aj) s = gf.add(s, gf.mul(aj, b[static_cast<std::size_t>(i - j)]));
        }
        b[static_cast<std::size_t>(i)] = gf.neg(gf.mul(c0inv, s));
    }
    EElem r(f_);
    r.val_ = -val_;
    r.coeffs_ = std::move(b);
    r.exact_ = false;
    r.normalize();
    return r;
}

EElem EElem::shifted(int k) const {
    EElem r(*this);
    if (!r.provably_zero()) r.val_ += k;
    return r;
}

EElem EElem::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    EElem acc = EElem::one(f_);
    EElem base = *this;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1u) acc = acc * base;
        base = base * base;
        u >>= 1u;
    }
    return acc;
}

bool EElem::agrees(const EElem& b) const { return !(*this - b).provably_nonzero(); }

bool EElem::in_OE() const {
    if (val_ >= 0) return true;
    if (provably_nonzero()) return false;
    throw PrecisionExhausted("O_E membership undetermined");
}

EElem EElem::truncated_below(int e) const {
    if (!exact_ && known_until() < e)
        throw PrecisionExhausted("truncation needs coefficients beyond known window");
    EElem r(f_);
    for (int k = val_; k < std::min(e, val_ + static_cast<int>(coeffs_.size())); ++k) {
        gf_t c = coeffs_[static_cast<std::size_t>(k - val_)];
        if (c) {
            if (r.coeffs_.empty()) r.val_ = k;
            r.coeffs_.resize(static_cast<std::size_t>(k - r.val_ + 1), 0);
            r.coeffs_.back() = c;
        }
    }
    r.normalize();
    return r;
}

EElem EElem::exactified() const {
    if (exact_) return *this;
    return EElem::from_coeffs(f_, val_, coeffs_, true);
}

EElem EElem::tail_from(int e) const {
    if (e <= val_) return *this;
    EElem r(f_);
    r.exact_ = exact_;
    r.val_ = e;
    for (int k = e; k < val_ + static_cast<int>(coeffs_.size()); ++k)
        r.coeffs_.push_back(coeffs_[static_cast<std::size_t>(k - val_)]);
    if (!exact_ && r.coeffs_.empty()) r.val_ = std::max(e, known_until());
    r.normalize();
    return r;
}

std::string EElem::str() const {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        int e = val_ + static_cast<int>(i);
        if (!first) out += " + ";
        first = false;
        if (e == 0) {
            out += std::to_string(coeffs_[i]);
        } else {
            std::string xp = e == 1 ? "t1" : "t1^" + std::to_string(e);
            out += coeffs_[i] == 1 ? xp : std::to_string(coeffs_[i]) + "*" + xp;
        }
    }
    if (!exact_) {
        if (!first) out += " + ";
        out += "O(t1^" + std::to_string(known_until()) + ")";
        first = false;
    }
    return first ? "0" : out;
}

// ---------------------------------------------------------------------------
// FElem

FElem FElem::one(FieldRef f) { return from_e(EElem::one(std::move(f))); }

FElem FElem::from_e(EElem c) {
    FElem r(c.field());
    if (!c.provably_zero()) r.coeffs_.push_back(std::move(c));
    r.normalize();
    return r;
}

FElem FElem::t2_pow(FieldRef f, int k) {
    FElem r(f);
    r.val2_ = k;
    r.coeffs_.push_back(EElem::one(f));
    return r;
}

FElem FElem::t1_pow(FieldRef f, int k) { return from_e(EElem::t1_pow(std::move(f), k)); }

FElem FElem::monomial(int a, EElem c) {
    FElem r = from_e(std::move(c));
    return r.shifted2(a);
}

FElem FElem::from_coeffs(FieldRef f, int val2, std::vector<EElem> coeffs, bool exact) {
    FElem r(std::move(f));
    r.val2_ = val2;
    r.coeffs_ = std::move(coeffs);
    r.exact_ = exact;
    r.normalize();
    return r;
}

void FElem::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].provably_zero()) ++lead;
    if (lead > 0) {
        val2_ += static_cast<int>(lead);
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    }
    if (exact_) {
        while (!coeffs_.empty() && coeffs_.back().provably_zero()) coeffs_.pop_back();
        if (coeffs_.empty()) val2_ = 0;
        if (coeffs_.size() > kExactSizeGuard)
            throw BudgetExceeded("exact t2-expansion exceeds size guard");
    } else {
        if (coeffs_.size() > static_cast<std::size_t>(f_->t2_prec))
            coeffs_.erase(coeffs_.begin() + f_->t2_prec, coeffs_.end());
    }
}

bool FElem::provably_zero() const { return exact_ && coeffs_.empty(); }

int FElem::v2() const {
    if (provably_zero()) throw DivisionByZero("t2-valuation of zero");
    if (!provably_nonzero()) throw PrecisionExhausted("t2-valuation undetermined at this window");
    return val2_;
}

int FElem::known2_until() const {
    return exact_ ? INT_MAX : val2_ + static_cast<int>(coeffs_.size());
}

EElem FElem::coeff_at(int e) const {
    if (e >= known2_until()) throw PrecisionExhausted("t2-coefficient beyond known window");
    if (e < val2_ || e >= val2_ + static_cast<int>(coeffs_.size())) return EElem::zero(f_);
    return coeffs_[static_cast<std::size_t>(e - val2_)];
}

FElem FElem::operator-() const {
    FElem r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FElem operator+(const FElem& a, const FElem& b) {
    check_compat(a.f_, b.f_);
    if (a.provably_zero()) return b;
    if (b.provably_zero()) return a;
    int lo = std::min(a.val2_, b.val2_);
    bool exact = a.exact_ && b.exact_;
    int hi;
    if (exact) {
        hi = std::max(a.val2_ + static_cast<int>(a.coeffs_.size()),
                      b.val2_ + static_cast<int>(b.coeffs_.size()));
    } else {
        hi = std::max(lo, std::min(a.known2_until(), b.known2_until()));
    }
    FElem r(a.f_);
    r.val2_ = lo;
    r.exact_ = exact;
    for (int e = lo; e < hi; ++e) r.coeffs_.push_back(a.coeff_at(e) + b.coeff_at(e));
    r.normalize();
    return r;
}

FElem operator-(const FElem& a, const FElem& b) { return a + (-b); }

FElem operator*(const FElem& a, const FElem& b) {
    check_compat(a.f_, b.f_);
    if (a.provably_zero() || b.provably_zero()) return FElem::zero(a.f_);
    int vlb = a.val2_ + b.val2_;
    bool exact = a.exact_ && b.exact_;
    int thr = INT_MAX;
    if (!a.exact_) thr = std::min(thr, a.known2_until() + b.val2_);
    if (!b.exact_) thr = std::min(thr, b.known2_until() + a.val2_);
    int hi = exact ? vlb + static_cast<int>(a.coeffs_.size() + b.coeffs_.size()) - 1 : thr;

    FElem r(a.f_);
    r.val2_ = vlb;
    r.exact_ = exact;
    if (hi > vlb) {
        r.coeffs_.assign(static_cast<std::size_t>(hi - vlb), EElem::zero(a.f_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].provably_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                std::size_t k = i + j;
                if (k >= r.coeffs_.size()) break;
                r.coeffs_[k] = r.coeffs_[k] + a.coeffs_[i] * b.coeffs_[j];
            }
        }
    }
    r.normalize();
    if (!exact && hi <= vlb && a.provably_nonzero() && b.provably_nonzero())
        throw PrecisionExhausted("product window empty at this precision");
    return r;
}

FElem FElem::inv() const {
    if (provably_zero()) throw DivisionByZero("inverse of zero in F");
    if (!provably_nonzero()) throw PrecisionExhausted("cannot certify nonzero for inversion");
    const EElem& c0 = coeffs_.front();
    if (coeffs_.size() == 1 && exact_) {
        FElem r(f_);
        r.val2_ = -val2_;
        r.coeffs_.push_back(c0.inv());
        r.exact_ = true;
        r.normalize();
        return r;
    }
    int len = std::min<int>(exact_ ? f_->t2_prec : static_cast<int>(coeffs_.size()), f_->t2_prec);
    EElem c0inv = c0.inv();
    std::vector<EElem> b;
    b.reserve(static_cast<std::size_t>(len));
    b.push_back(c0inv);
    for (int i = 1; i < len; ++i) {
        EElem s = EElem::zero(f_);
        for (int j = 1; j <= i; ++j) {
            if (static_cast<std::size_t>(j) >= coeffs_.size()) break;
            s = s + coeffs_[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i - j)];
        }
        b.push_back(-(c0inv * s));
    }
    FElem r(f_);
    r.val2_ = -val2_;
    r.coeffs_ = std::move(b);
    r.exact_ = false;
    r.normalize();
    return r;
}

FElem FElem::shifted2(int k) const {
    FElem r(*this);
    if (!r.provably_zero()) r.val2_ += k;
    return r;
}

FElem FElem::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    FElem acc = FElem::one(f_);
    FElem base = *this;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1u) acc = acc * base;
        base = base * base;
        u >>= 1u;
    }
    return acc;
}

bool FElem::agrees(const FElem& b) const {
    FElem d = *this - b;
    for (const auto& c : d.coeffs_)
        if (c.provably_nonzero()) return false;
    return true;
}

bool FElem::eq_exact(const FElem& b) const { return (*this - b).provably_zero(); }

FElem FElem::exactified() const {
    std::vector<EElem> cs;
    cs.reserve(coeffs_.size());
    for (const auto& c : coeffs_) cs.push_back(c.exactified());
    return FElem::from_coeffs(f_, val2_, std::move(cs), true);
}

bool FElem::in_O1() const {
    if (val2_ >= 0) return true;
    if (provably_nonzero()) return false;
    throw PrecisionExhausted("rank-one integrality undetermined");
}

bool FElem::in_O2() const { return in_O1() && fe_residue(*this).in_OE(); }

bool FElem::unit_O2() const {
    if (!provably_nonzero()) return false;
    if (v2() != 0) return false;
    const EElem& c0 = coeffs_.front();
    return c0.provably_nonzero() && c0.v1() == 0;
}

std::string FElem::str() const {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].provably_zero()) continue;
        if (!first) out += " + ";
        first = false;
        int e = val2_ + static_cast<int>(i);
        out += "t2^" + std::to_string(e) + "*(" + coeffs_[i].str() + ")";
    }
    if (!exact_) {
        if (!first) out += " + ";
        out += "O(t2^" + std::to_string(known2_until()) + ")";
        first = false;
    }
    return first ? "0" : out;
}

FElem fe_mul(const FElem& a, const FElem& b) { return a * b; }
FElem fe_inv(const FElem& a) { return a.inv(); }

UnitDecomposition fe_unit_decompose(const FElem& a) {
    if (a.provably_zero()) throw DivisionByZero("unit decomposition of zero");
    int v2 = a.v2();
    const EElem& c0 = a.coeffs().front();
    int v1 = c0.v1();
    FElem u(a.field());
    {
        std::vector<EElem> cs;
        cs.reserve(a.coeffs().size());
        for (const auto& c : a.coeffs()) cs.push_back(c.shifted(-v1));
        u = FElem::from_coeffs(a.field(), 0, std::move(cs), a.exact2());
    }
    return UnitDecomposition{v2, v1, std::move(u)};
}

Monomial fe_abs(const FElem& a) {
    if (a.provably_zero()) throw DivisionByZero("absolute value of zero");
    int v2 = a.v2();
    return Monomial{v2, a.coeffs().front().v1()};
}

EElem fe_residue(const FElem& a) {
    if (a.provably_zero()) return EElem::zero(a.field());
    if (a.val2_bound() < 0) {
        if (a.provably_nonzero())
            throw NotIntegral("residue of an element with negative t2-valuation");
        throw PrecisionExhausted("residue undetermined (t2-valuation bound below 0)");
    }
    if (a.val2_bound() > 0) return EElem::zero(a.field());
    if (a.known2_until() <= 0) throw PrecisionExhausted("t2^0 coefficient beyond known window");
    return a.coeff_at(0);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class FeParser {
public:
    FeParser(FieldRef f, const std::string& s) : f_(std::move(f)), s_(s) {}

    EElem parse_e() {
        EElem e = eexpr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing input in E-element", pos_);
        return e;
    }

    FElem parse_f() {
        FElem acc = FElem::zero(f_);
        skip_ws();
        acc = acc + fterm();
        skip_ws();
        while (pos_ < s_.size()) {
            expect('+');
            acc = acc + fterm();
            skip_ws();
        }
        return acc;
    }

private:
    FElem fterm() {
        skip_ws();
        if (match("t2")) {
            int e = 0;
            if (pos_ < s_.size() && peek() == '^') {
                ++pos_;
                e = integer();
            } else {
                e = 1;
            }
            skip_ws();
            EElem c = EElem::one(f_);
            if (pos_ < s_.size() && peek() == '*') {
                ++pos_;
                skip_ws();
                expect('(');
                c = eexpr();
                expect(')');
            }
            return FElem::monomial(e, std::move(c));
        }
        if (peek_is('(')) {
            ++pos_;
            EElem c = eexpr();
            expect(')');
            return FElem::from_e(std::move(c));
        }
        return FElem::from_e(eterm());
    }

    EElem eexpr() {
        skip_ws();
        bool neg = eat('-');
        EElem acc = eterm();
        if (neg) acc = -acc;
        skip_ws();
        while (pos_ < s_.size() && (peek() == '+' || peek() == '-')) {
            bool sub = s_[pos_] == '-';
            ++pos_;
            EElem t = eterm();
            acc = sub ? acc - t : acc + t;
            skip_ws();
        }
        return acc;
    }

    EElem eterm() {
        skip_ws();
        gf_t c = 1;
        bool have_coeff = false;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
            long n = std::stol(number());
            if (n >= static_cast<long>(f_->q))
                throw ParseError("coefficient code out of range for GF(q)", pos_);
            c = f_->gf->from_int(n);
            have_coeff = true;
        }
        skip_ws();
        int e = 0;
        if (pos_ < s_.size() && (peek() == '*' || peek() == 't')) {
            std::size_t save = pos_;
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
            if (match("t1")) {
                e = 1;
                if (pos_ < s_.size() && peek() == '^') {
                    ++pos_;
                    e = integer();
                }
            } else {
                pos_ = save;
                if (!have_coeff) throw ParseError("expected E-level term", pos_);
            }
        } else if (!have_coeff) {
            throw ParseError("expected E-level term", pos_);
        }
        return EElem::from_coeffs(f_, e, {c});
    }

    std::string number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected number", pos_);
        return s_.substr(start, pos_ - start);
    }

    int integer() {
        skip_ws();
        bool neg = eat('-');
        int v = std::stoi(number());
        return neg ? -v : v;
    }

    char peek() const { return s_[pos_]; }
    bool peek_is(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    bool eat(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    bool match(const char* kw) {
        skip_ws();
        std::size_t n = std::char_traits<char>::length(kw);
        if (s_.compare(pos_, n, kw) == 0) {
            pos_ += n;
            return true;
        }
        return false;
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    FieldRef f_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

FElem fe_parse(FieldRef f, const std::string& text) {
    if (text == "0") return FElem::zero(std::move(f));
    return FeParser(std::move(f), text).parse_f();
}

EElem ee_parse(FieldRef f, const std::string& text) {
    if (text == "0") return EElem::zero(std::move(f));
    return FeParser(std::move(f), text).parse_e();
}

} // namespace hlf
