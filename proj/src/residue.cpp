#include "hlf/residue.hpp"

#include <mutex>
#include <sstream>

namespace hlf {

ResRing::ResRing(unsigned q, unsigned m) : q_(q), m_(m), gf_(GFTable::get(q)) {
    if (m < 1) throw Error("residue level must be >= 1");
    rcode_t s = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (s > (rcode_t(1) << 48) / q) throw BudgetExceeded("residue ring size overflow");
        s *= q;
    }
    size_ = s;
}

ResRingPtr ResRing::get(unsigned q, unsigned m) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, ResRingPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(q, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto r = std::make_shared<const ResRing>(q, m);
    cache.emplace(key, r);
    return r;
}

gf_t ResRing::digit(rcode_t a, unsigned i) const {
    for (unsigned k = 0; k < i; ++k) a /= q_;
    return static_cast<gf_t>(a % q_);
}

rcode_t ResRing::add(rcode_t a, rcode_t b) const {
    rcode_t r = 0, mult = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += static_cast<rcode_t>(gf_->add(static_cast<gf_t>(a % q_), static_cast<gf_t>(b % q_))) * mult;
        a /= q_;
        b /= q_;
        mult *= q_;
    }
    return r;
}

rcode_t ResRing::neg(rcode_t a) const {
    rcode_t r = 0, mult = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += static_cast<rcode_t>(gf_->neg(static_cast<gf_t>(a % q_))) * mult;
        a /= q_;
        mult *= q_;
    }
    return r;
}

rcode_t ResRing::mul(rcode_t a, rcode_t b) const {
    // polynomial product truncated at degree m
    std::vector<gf_t> da(m_), db(m_), dr(m_, 0);
    rcode_t ta = a, tb = b;
    for (unsigned i = 0; i < m_; ++i) {
        da[i] = static_cast<gf_t>(ta % q_);
        db[i] = static_cast<gf_t>(tb % q_);
        ta /= q_;
        tb /= q_;
    }
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; i + j < m_; ++j)
            if (db[j]) dr[i + j] = gf_->add(dr[i + j], gf_->mul(da[i], db[j]));
    }
    rcode_t r = 0;
    for (unsigned i = m_; i-- > 0;) r = r * q_ + dr[i];
    return r;
}

rcode_t ResRing::inv(rcode_t a) const {
    if (!is_unit(a)) throw DivisionByZero("inverse of a non-unit in O_E/t1^m");
    // series reciprocal digit by digit
    std::vector<gf_t> da(m_), db(m_, 0);
    rcode_t ta = a;
    for (unsigned i = 0; i < m_; ++i) {
        da[i] = static_cast<gf_t>(ta % q_);
        ta /= q_;
    }
    gf_t c0inv = gf_->inv(da[0]);
    db[0] = c0inv;
    for (unsigned i = 1; i < m_; ++i) {
        gf_t s = 0;
        for (unsigned j = 1; j <= i; ++j)
            if (da[j]) s = gf_->add(s, gf_->mul(da[j], db[i - j]));
        db[i] = gf_->neg(gf_->mul(c0inv, s));
    }
    rcode_t r = 0;
    for (unsigned i = m_; i-- > 0;) r = r * q_ + db[i];
    return r;
}

rcode_t ResRing::reduce(const EElem& e) const {
    if (e.provably_zero()) return 0;
    if (!e.in_OE()) throw NotIntegral("reduction of a non-integral E-element");
    if (e.known_until() < static_cast<int>(m_))
        throw PrecisionExhausted("reduction mod t1^m needs more known t1-digits");
    rcode_t r = 0;
    for (unsigned i = m_; i-- > 0;) r = r * q_ + e.coeff_at(static_cast<int>(i));
    return r;
}

EElem ResRing::lift(FieldRef f, rcode_t a) const {
    std::vector<gf_t> coeffs(m_);
    for (unsigned i = 0; i < m_; ++i) {
        coeffs[i] = static_cast<gf_t>(a % q_);
        a /= q_;
    }
    return EElem::from_coeffs(std::move(f), 0, std::move(coeffs));
}

rcode_t ResRing::project(rcode_t a, unsigned lower_m) const {
    rcode_t mod = 1;
    for (unsigned i = 0; i < lower_m; ++i) mod *= q_;
    return a % mod;
}

// ---------------------------------------------------------------------------

ResMat ResMat::identity(ResRingPtr ring, unsigned n) {
    ResMat r(std::move(ring), n);
    for (unsigned i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

ResMat ResMat::operator+(const ResMat& o) const {
    ResMat r(ring_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_->add(e_[k], o.e_[k]);
    return r;
}

ResMat ResMat::operator-() const {
    ResMat r(ring_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_->neg(e_[k]);
    return r;
}

ResMat ResMat::operator*(const ResMat& o) const {
    ResMat r(ring_, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            rcode_t s = 0;
            for (unsigned k = 0; k < n_; ++k)
                s = ring_->add(s, ring_->mul(at(i, k), o.at(k, j)));
            r.at(i, j) = s;
        }
    return r;
}

namespace {

// Laplace expansion; n stays tiny at congruence levels, so this is the
// simplest correct determinant over the (non-field) local ring.
rcode_t det_rec(const ResMat& w, unsigned row, std::vector<unsigned>& cols) {
    const auto& ring = w.ring();
    if (cols.size() == 1) return w.at(row, cols[0]);
    rcode_t sum = 0;
    for (unsigned j = 0; j < cols.size(); ++j) {
        rcode_t c = w.at(row, cols[j]);
        if (c == 0) continue;
        std::vector<unsigned> rest;
        rest.reserve(cols.size() - 1);
        for (unsigned t = 0; t < cols.size(); ++t)
            if (t != j) rest.push_back(cols[t]);
        rcode_t term = ring->mul(c, det_rec(w, row + 1, rest));
        sum = (j % 2 == 0) ? ring->add(sum, term) : ring->sub(sum, term);
    }
    return sum;
}

} // namespace

rcode_t ResMat::det() const {
    std::vector<unsigned> cols(n_);
    for (unsigned j = 0; j < n_; ++j) cols[j] = j;
    return det_rec(*this, 0, cols);
}

bool ResMat::is_invertible() const {
    // invertible over the local ring iff invertible mod t1, i.e. the
    // level-1 projection has nonzero determinant over GF(q)
    const auto& gf = ring_->gf();
    std::vector<gf_t> w(static_cast<std::size_t>(n_) * n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) w[i * n_ + j] = ring_->digit(at(i, j), 0);
    for (unsigned k = 0; k < n_; ++k) {
        unsigned pivot = n_;
        for (unsigned i = k; i < n_; ++i)
            if (w[i * n_ + k] != 0) {
                pivot = i;
                break;
            }
        if (pivot == n_) return false;
        if (pivot != k)
            for (unsigned j = 0; j < n_; ++j) std::swap(w[k * n_ + j], w[pivot * n_ + j]);
        gf_t pinv = gf->inv(w[k * n_ + k]);
        for (unsigned i = k + 1; i < n_; ++i) {
            gf_t m = gf->mul(w[i * n_ + k], pinv);
            if (m == 0) continue;
            for (unsigned j = k; j < n_; ++j)
                w[i * n_ + j] = gf->sub(w[i * n_ + j], gf->mul(m, w[k * n_ + j]));
        }
    }
    return true;
}

ResMat ResMat::inverse() const {
    ResMat work(*this);
    ResMat inv = identity(ring_, n_);
    for (unsigned k = 0; k < n_; ++k) {
        unsigned pivot = n_;
        for (unsigned i = k; i < n_; ++i)
            if (ring_->is_unit(work.at(i, k))) {
                pivot = i;
                break;
            }
        if (pivot == n_) throw SingularAtPrecision("matrix not invertible over O_E/t1^m");
        if (pivot != k)
            for (unsigned j = 0; j < n_; ++j) {
                std::swap(work.at(k, j), work.at(pivot, j));
                std::swap(inv.at(k, j), inv.at(pivot, j));
            }
        rcode_t pinv = ring_->inv(work.at(k, k));
        for (unsigned j = 0; j < n_; ++j) {
            work.at(k, j) = ring_->mul(work.at(k, j), pinv);
            inv.at(k, j) = ring_->mul(inv.at(k, j), pinv);
        }
        for (unsigned i = 0; i < n_; ++i) {
            if (i == k) continue;
            rcode_t m = work.at(i, k);
            if (m == 0) continue;
            for (unsigned j = 0; j < n_; ++j) {
                work.at(i, j) = ring_->sub(work.at(i, j), ring_->mul(m, work.at(k, j)));
                inv.at(i, j) = ring_->sub(inv.at(i, j), ring_->mul(m, inv.at(k, j)));
            }
        }
    }
    return inv;
}

rcode_t ResMat::encode() const {
    rcode_t code = 0;
    for (std::size_t k = e_.size(); k-- > 0;) code = code * ring_->size() + e_[k];
    return code;
}

ResMat ResMat::decode(ResRingPtr ring, unsigned n, rcode_t code) {
    ResMat r(ring, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            r.at(i, j) = code % ring->size();
            code /= ring->size();
        }
    return r;
}

rcode_t ResMat::space_size(const ResRingPtr& ring, unsigned n, rcode_t budget) {
    rcode_t s = 1;
    for (unsigned k = 0; k < n * n; ++k) {
        if (s > budget / ring->size() + 1)
            throw BudgetExceeded("residue matrix space exceeds budget");
        s *= ring->size();
        if (s > budget) throw BudgetExceeded("residue matrix space exceeds budget");
    }
    return s;
}

ResMat ResMat::project(const ResRingPtr& lower) const {
    ResMat r(lower, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) r.at(i, j) = ring_->project(at(i, j), lower->level());
    return r;
}

std::string ResMat::str() const {
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < n_; ++i) {
        os << (i ? ";" : "") << "[";
        for (unsigned j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------

MatEnumerator::MatEnumerator(ResRingPtr ring, unsigned n, bool only_invertible,
                             rcode_t budget, rcode_t begin_at)
    : ring_(std::move(ring)), n_(n), only_invertible_(only_invertible) {
    space_ = ResMat::space_size(ring_, n_, budget);
    begin_ = begin_at;
    cursor_ = begin_at;
}

bool MatEnumerator::next(ResMat& out) {
    while (cursor_ < space_) {
        ResMat m = ResMat::decode(ring_, n_, cursor_++);
        if (!only_invertible_ || m.is_invertible()) {
            out = m;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------

ResFn ResFn::constant_full(ResRingPtr ring, unsigned n, LaurentX value) {
    ResFn r(std::move(ring), n);
    if (!value.is_zero()) {
        r.full_ = true;
        r.full_value_ = std::move(value);
    }
    return r;
}

ResFn ResFn::char_point(const ResMat& p, LaurentX coeff) {
    ResFn r(p.ring(), p.n());
    r.set(p, std::move(coeff));
    return r;
}

ResFn ResFn::char_invertible(ResRingPtr ring, unsigned n, rcode_t budget) {
    ResFn r(ring, n);
    MatEnumerator en(ring, n, true, budget);
    ResMat m(ring, n);
    while (en.next(m)) r.values_.emplace(m.encode(), LaurentX::one());
    return r;
}

LaurentX ResFn::value_at(const ResMat& x) const { return value_at_code(x.encode()); }

LaurentX ResFn::value_at_code(rcode_t code) const {
    if (full_) return full_value_;
    auto it = values_.find(code);
    return it == values_.end() ? LaurentX::zero() : it->second;
}

void ResFn::set(const ResMat& x, LaurentX v) {
    if (full_) throw Error("cannot set a point value on a full-marker ResFn");
    if (v.is_zero())
        values_.erase(x.encode());
    else
        values_[x.encode()] = std::move(v);
}

void ResFn::add(const ResMat& x, const LaurentX& v) {
    if (full_) throw Error("cannot add a point value on a full-marker ResFn");
    auto key = x.encode();
    auto it = values_.find(key);
    if (it == values_.end()) {
        if (!v.is_zero()) values_.emplace(key, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) values_.erase(it);
    }
}

ResFn ResFn::scaled(const LaurentX& c) const {
    ResFn r(ring_, n_);
    if (c.is_zero()) return r;
    if (full_) return constant_full(ring_, n_, full_value_ * c);
    for (const auto& [k, v] : values_) {
        LaurentX p = v * c;
        if (!p.is_zero()) r.values_.emplace(k, std::move(p));
    }
    return r;
}

ResFn ResFn::plus(const ResFn& o) const {
    if (full_ || o.full_) {
        // additions involving full markers are materialized by callers
        throw Error("ResFn::plus does not combine full markers; materialize first");
    }
    ResFn r(*this);
    for (const auto& [k, v] : o.values_) {
        auto it = r.values_.find(k);
        if (it == r.values_.end()) {
            r.values_.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) r.values_.erase(it);
        }
    }
    return r;
}

ResFn ResFn::negated_argument() const {
    if (full_) return *this;
    ResFn r(ring_, n_);
    for (const auto& [k, v] : values_) {
        ResMat m = ResMat::decode(ring_, n_, k);
        r.values_.emplace((-m).encode(), v);
    }
    return r;
}

ResFn ResFn::translated(const ResMat& s) const {
    if (full_) return *this;
    ResFn r(ring_, n_);
    for (const auto& [k, v] : values_) {
        ResMat m = ResMat::decode(ring_, n_, k);
        r.values_.emplace((m + s).encode(), v);
    }
    return r;
}

ResFn ResFn::left_translated(const ResMat& l) const {
    if (full_) return *this;
    ResFn r(ring_, n_);
    for (const auto& [k, v] : values_) {
        ResMat m = ResMat::decode(ring_, n_, k);
        r.values_.emplace((l * m).encode(), v);
    }
    return r;
}

ResFn ResFn::right_translated(const ResMat& l) const {
    if (full_) return *this;
    ResFn r(ring_, n_);
    for (const auto& [k, v] : values_) {
        ResMat m = ResMat::decode(ring_, n_, k);
        r.values_.emplace((m * l).encode(), v);
    }
    return r;
}

ResFn ResFn::inverted_argument(rcode_t budget) const {
    ResFn src = full_ ? materialized(budget) : *this;
    ResFn r(ring_, n_);
    for (const auto& [k, v] : src.values_) {
        ResMat m = ResMat::decode(ring_, n_, k);
        if (!m.is_invertible()) continue;
        r.values_.emplace(m.inverse().encode(), v);
    }
    return r;
}

ResFn ResFn::times(const ResFn& o) const {
    if (full_ && o.full_) return constant_full(ring_, n_, full_value_ * o.full_value_);
    if (full_) return o.times(*this);
    ResFn r(ring_, n_);
    for (const auto& [k, v] : values_) {
        LaurentX p = v * o.value_at_code(k);
        if (!p.is_zero()) r.values_.emplace(k, std::move(p));
    }
    return r;
}

ResFn ResFn::restricted_invertible(rcode_t budget) const {
    ResFn src = full_ ? materialized(budget) : *this;
    ResFn r(ring_, n_);
    for (const auto& [k, v] : src.values_) {
        ResMat m = ResMat::decode(ring_, n_, k);
        if (m.is_invertible()) r.values_.emplace(k, v);
    }
    return r;
}

ResFn ResFn::lifted(const ResRingPtr& higher, rcode_t budget) const {
    if (higher->level() == ring_->level()) return *this;
    if (higher->level() < ring_->level()) throw LevelMismatch("cannot lift to a lower level");
    if (full_) return constant_full(higher, n_, full_value_);
    ResFn r(higher, n_);
    MatEnumerator en(higher, n_, false, budget);
    ResMat m(higher, n_);
    while (en.next(m)) {
        LaurentX v = value_at_code(m.project(ring_).encode());
        if (!v.is_zero()) r.values_.emplace(m.encode(), v);
    }
    return r;
}

LaurentX ResFn::support_sum(rcode_t budget) const {
    if (full_) {
        rcode_t cnt = ResMat::space_size(ring_, n_, budget);
        return full_value_.scaled(Coeff(Rat(Int(cnt))));
    }
    LaurentX total;
    for (const auto& [k, v] : values_) total += v;
    return total;
}

rcode_t ResFn::support_count(rcode_t budget) const {
    if (full_) return ResMat::space_size(ring_, n_, budget);
    return values_.size();
}

bool operator==(const ResFn& a, const ResFn& b) {
    if (a.full_ != b.full_) {
        // a full marker can coincide with an explicit everywhere-equal map
        rcode_t budget = MatEnumerator::kDefaultBudget;
        return a.materialized(budget).values_ == b.materialized(budget).values_;
    }
    if (a.full_) return a.full_value_ == b.full_value_;
    return a.values_ == b.values_;
}

ResFn ResFn::materialized(rcode_t budget) const {
    if (!full_) return *this;
    ResFn r(ring_, n_);
    MatEnumerator en(ring_, n_, false, budget);
    ResMat m(ring_, n_);
    while (en.next(m)) r.values_.emplace(m.encode(), full_value_);
    return r;
}

Int gl_order(unsigned q, unsigned m, unsigned n) {
    Int r = 1;
    Int Q(q);
    // q^{(m-1) n^2}
    r = ipow(Q, (m - 1) * n * n);
    Int qn = ipow(Q, n);
    for (unsigned k = 0; k < n; ++k) r *= (qn - ipow(Q, k));
    return r;
}

} // namespace hlf
