#include "hlf/efunction.hpp"

#include <algorithm>
#include <map>

namespace hlf {

EBall::EBall(EElem center, int level) : a(center.truncated_below(level)), k(level) {}

bool EBall::contains(const EElem& x) const { return x.truncated_below(k) == a; }

bool EBox::contains(const std::vector<EElem>& x) const {
    if (x.size() != balls.size()) throw DimensionMismatch("E-box membership");
    for (std::size_t i = 0; i < balls.size(); ++i)
        if (!balls[i].contains(x[i])) return false;
    return true;
}

EFunction EFunction::boxes(FieldRef f, unsigned dim, std::vector<Term> terms) {
    EFunction r(std::move(f), dim, false);
    for (auto& t : terms) {
        if (t.box.dim() != dim) throw DimensionMismatch("E-function term dimension");
        if (!t.coeff.is_zero()) r.terms_.push_back(std::move(t));
    }
    return r;
}

EFunction EFunction::gl_classes(FieldRef f, ResFn data) {
    unsigned n = data.n();
    EFunction r(std::move(f), n * n, true);
    r.gl_ = std::move(data);
    return r;
}

EFunction EFunction::char_unit_box(FieldRef f, unsigned dim) {
    EBox box;
    for (unsigned i = 0; i < dim; ++i) box.balls.emplace_back(EElem::zero(f), 0);
    return boxes(f, dim, {Term{LaurentX::one(), std::move(box)}});
}

const ResFn& EFunction::gl_data() const {
    if (!is_gl_) throw Error("not a GL-class E-function");
    return gl_;
}

LaurentX EFunction::eval(const std::vector<EElem>& x) const {
    if (is_gl_) throw Error("pointwise eval on GL-class data needs a residue matrix");
    LaurentX v;
    for (const auto& t : terms_)
        if (t.box.contains(x)) v += t.coeff;
    return v;
}

EFunction EFunction::scaled(const LaurentX& c) const {
    if (is_gl_) return gl_classes(f_, gl_.scaled(c));
    EFunction r(f_, dim_, false);
    if (c.is_zero()) return r;
    for (const auto& t : terms_) r.terms_.push_back(Term{t.coeff * c, t.box});
    return r;
}

EFunction EFunction::plus(const EFunction& o) const {
    if (is_gl_ || o.is_gl_) throw Error("EFunction::plus expects box kind");
    if (dim_ != o.dim_) throw DimensionMismatch("E-function sum");
    EFunction r(*this);
    for (const auto& t : o.terms_) r.terms_.push_back(t);
    return r;
}

EFunction EFunction::scaled_argument(const std::vector<EElem>& eps,
                                     const std::vector<unsigned>& perm) const {
    if (is_gl_) throw Error("argument scaling applies to box kind");
    if (eps.size() != dim_ || perm.size() != dim_)
        throw DimensionMismatch("argument scaling data");
    EFunction r(f_, dim_, false);
    for (const auto& t : terms_) {
        // new support in coordinate perm[i] comes from old coordinate i:
        // condition g(.., eps_i u_{perm[i]}, ..) on ball(b_i, k_i) becomes
        // u_{perm[i]} in eps_i^{-1} b_i + t1^{k_i - v1(eps_i)} O_E
        std::vector<EBall> balls;
        balls.reserve(dim_);
        std::vector<EBall> tmp;
        tmp.reserve(dim_);
        std::vector<std::size_t> slot(dim_);
        for (unsigned i = 0; i < dim_; ++i) {
            const EBall& b = t.box.balls[i];
            EElem ei = eps[i];
            if (!ei.provably_nonzero()) throw DivisionByZero("zero scale in argument transform");
            EElem einv = ei.inv();
            tmp.emplace_back(einv * b.a, b.k - ei.v1());
            slot[perm[i]] = tmp.size() - 1;
        }
        for (unsigned j = 0; j < dim_; ++j) balls.push_back(tmp[slot[j]]);
        r.terms_.push_back(Term{t.coeff, EBox{std::move(balls)}});
    }
    return r;
}

EFunction EFunction::translated_argument(const std::vector<EElem>& s) const {
    if (is_gl_) throw Error("argument translation applies to box kind");
    if (s.size() != dim_) throw DimensionMismatch("argument translation data");
    EFunction r(f_, dim_, false);
    for (const auto& t : terms_) {
        std::vector<EBall> balls;
        balls.reserve(dim_);
        for (unsigned i = 0; i < dim_; ++i)
            balls.emplace_back(t.box.balls[i].a - s[i], t.box.balls[i].k);
        r.terms_.push_back(Term{t.coeff, EBox{std::move(balls)}});
    }
    return r;
}

EFunction EFunction::partial_integral(unsigned coord) const {
    if (is_gl_) throw Error("partial integral applies to box kind");
    if (coord >= dim_) throw DimensionMismatch("partial integral coordinate");
    EFunction r(f_, dim_ - 1, false);
    for (const auto& t : terms_) {
        LaurentX c = t.coeff.scaled(Coeff(rat_pow(f_->q, -t.box.balls[coord].k)));
        std::vector<EBall> balls;
        for (unsigned i = 0; i < dim_; ++i)
            if (i != coord) balls.push_back(t.box.balls[i]);
        r.terms_.push_back(Term{std::move(c), EBox{std::move(balls)}});
    }
    return r;
}

EFunction EFunction::normalized() const {
    if (is_gl_ || terms_.empty()) return *this;
    // refine to common cells: per coordinate, the max ball level
    std::vector<int> level(dim_, 0);
    for (const auto& t : terms_)
        for (unsigned i = 0; i < dim_; ++i) level[i] = std::max(level[i], t.box.balls[i].k);

    struct KeyLess {
        bool operator()(const std::vector<EElem>& a, const std::vector<EElem>& b) const {
            // compare coefficient windows lexicographically
            for (std::size_t i = 0; i < a.size(); ++i) {
                auto sa = a[i].str(), sb = b[i].str();
                if (sa != sb) return sa < sb;
            }
            return false;
        }
    };
    std::map<std::vector<EElem>, LaurentX, KeyLess> cells;

    std::size_t cap = 1u << 16;
    for (const auto& t : terms_) {
        // enumerate refinement cells of this term's box
        std::vector<std::vector<gf_t>> digits(dim_);
        std::size_t count = 1;
        for (unsigned i = 0; i < dim_; ++i) {
            digits[i].assign(static_cast<std::size_t>(level[i] - t.box.balls[i].k), 0);
            for (std::size_t d = 0; d < digits[i].size(); ++d) {
                count *= f_->q;
                if (count > cap) throw BudgetExceeded("E-function normalization too fine");
            }
        }
        while (true) {
            std::vector<EElem> key;
            key.reserve(dim_);
            for (unsigned i = 0; i < dim_; ++i) {
                EElem off = EElem::from_coeffs(f_, t.box.balls[i].k, digits[i]);
                key.push_back((t.box.balls[i].a + off).truncated_below(level[i]));
            }
            auto it = cells.find(key);
            if (it == cells.end()) {
                cells.emplace(std::move(key), t.coeff);
            } else {
                it->second += t.coeff;
            }
            bool carried = false;
            for (unsigned i = 0; i < dim_ && !carried; ++i)
                for (auto& d : digits[i]) {
                    if (d + 1 < f_->q) {
                        ++d;
                        carried = true;
                        break;
                    }
                    d = 0;
                }
            if (!carried) break;
        }
    }

    std::vector<Term> out;
    for (const auto& [key, coeff] : cells) {
        if (coeff.is_zero()) continue;
        std::vector<EBall> balls;
        for (unsigned i = 0; i < dim_; ++i) balls.emplace_back(key[i], level[i]);
        out.push_back(Term{coeff, EBox{std::move(balls)}});
    }
    return boxes(f_, dim_, std::move(out));
}

LaurentX haar_E(const EFunction& f, rcode_t budget) {
    if (f.is_gl()) {
        const ResFn& g = f.gl_data();
        unsigned m = g.level();
        unsigned nn = g.n();
        // each invertible class has volume q^{-m n^2} and |det| = 1
        ResFn inv = g.restricted_invertible(budget);
        LaurentX sum = inv.support_sum(budget);
        Rat unit = rat_pow(f.field()->q, -static_cast<int>(m * nn * nn));
        return sum.scaled(Coeff(unit));
    }
    LaurentX total;
    for (const auto& t : f.terms()) {
        int klevel = 0;
        for (const auto& b : t.box.balls) klevel += b.k;
        total += t.coeff.scaled(Coeff(rat_pow(f.field()->q, -klevel)));
    }
    return total;
}

} // namespace hlf
