#include "hlf/matrix.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace hlf {

int IntMat::min_entry() const { return *std::min_element(e_.begin(), e_.end()); }
int IntMat::max_entry() const { return *std::max_element(e_.begin(), e_.end()); }
int IntMat::sum() const {
    int s = 0;
    for (int v : e_) s += v;
    return s;
}
bool IntMat::is_constant() const {
    for (int v : e_)
        if (v != e_[0]) return false;
    return true;
}
bool IntMat::entrywise_geq(const IntMat& o) const {
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (e_[k] < o.e_[k]) return false;
    return true;
}

// ---------------------------------------------------------------------------

MatE MatE::identity(FieldRef f, unsigned n) {
    MatE r(std::move(f), n);
    for (unsigned i = 0; i < n; ++i) r.at(i, i) = EElem::one(r.f_);
    return r;
}

MatE MatE::from_residue(FieldRef f, const ResMat& r) {
    MatE m(f, r.n());
    for (unsigned i = 0; i < r.n(); ++i)
        for (unsigned j = 0; j < r.n(); ++j) m.at(i, j) = r.ring()->lift(f, r.at(i, j));
    return m;
}

MatE MatE::operator+(const MatE& o) const {
    if (n_ != o.n_) throw DimensionMismatch("E-matrix addition");
    MatE r(f_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

MatE MatE::operator*(const MatE& o) const {
    if (n_ != o.n_) throw DimensionMismatch("E-matrix product");
    MatE r(f_, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            EElem s = EElem::zero(f_);
            for (unsigned k = 0; k < n_; ++k) s = s + at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

EElem MatE::det() const {
    // Gaussian elimination over E with minimal-valuation pivots
    MatE w(*this);
    EElem d = EElem::one(f_);
    bool negate = false;
    for (unsigned k = 0; k < n_; ++k) {
        unsigned pivot = n_;
        int best = INT_MAX;
        bool undecided = false;
        for (unsigned i = k; i < n_; ++i) {
            const EElem& e = w.at(i, k);
            if (e.provably_nonzero()) {
                if (pivot == n_ || e.v1() < best) {
                    best = e.v1();
                    pivot = i;
                }
            } else if (!e.provably_zero()) {
                undecided = true;
            }
        }
        if (pivot == n_) {
            if (undecided) throw PrecisionExhausted("E-determinant pivot undetermined");
            return EElem::zero(f_);
        }
        if (pivot != k) {
            for (unsigned j = 0; j < n_; ++j) std::swap(w.at(k, j), w.at(pivot, j));
            negate = !negate;
        }
        EElem pinv = w.at(k, k).inv();
        d = d * w.at(k, k);
        for (unsigned i = k + 1; i < n_; ++i) {
            const EElem& e = w.at(i, k);
            if (e.provably_zero()) continue;
            EElem m = e * pinv;
            for (unsigned j = k; j < n_; ++j) w.at(i, j) = w.at(i, j) - m * w.at(k, j);
        }
    }
    return negate ? -d : d;
}

ResMat MatE::residue(const ResRingPtr& ring) const {
    ResMat r(ring, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) r.at(i, j) = ring->reduce(at(i, j));
    return r;
}

bool MatE::in_GL_OE() const {
    for (const auto& e : e_)
        if (!e.in_OE()) return false;
    EElem d = det();
    if (!d.provably_nonzero()) return false;
    return d.v1() == 0;
}

MatF MatF::identity(FieldRef f, unsigned n) {
    MatF r(f, n);
    for (unsigned i = 0; i < n; ++i) r.at(i, i) = FElem::one(f);
    return r;
}

MatF MatF::scalar(FieldRef f, unsigned n, const FElem& c) {
    MatF r(std::move(f), n);
    for (unsigned i = 0; i < n; ++i) r.at(i, i) = c;
    return r;
}

MatF MatF::operator+(const MatF& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix addition");
    MatF r(f_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

MatF MatF::operator-(const MatF& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix subtraction");
    MatF r(f_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

MatF MatF::operator-() const {
    MatF r(f_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
    return r;
}

MatF MatF::operator*(const MatF& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix product");
    MatF r(f_, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            FElem s = FElem::zero(f_);
            for (unsigned k = 0; k < n_; ++k) s = s + at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

MatF MatF::scaled(const FElem& c) const {
    MatF r(f_, n_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * c;
    return r;
}

MatF MatF::shifted2(int k) const {
    MatF r(f_, n_);
    for (std::size_t e = 0; e < e_.size(); ++e) r.e_[e] = e_[e].shifted2(k);
    return r;
}

MatF MatF::unflatten(FieldRef f, unsigned n, std::vector<FElem> entries) {
    if (entries.size() != static_cast<std::size_t>(n) * n)
        throw DimensionMismatch("unflatten: wrong entry count");
    MatF r(std::move(f), n);
    r.e_ = std::move(entries);
    return r;
}

bool MatF::eq_exact(const MatF& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (!e_[k].eq_exact(o.e_[k])) return false;
    return true;
}

bool MatF::agrees(const MatF& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (!e_[k].agrees(o.e_[k])) return false;
    return true;
}

bool MatF::integral_O1() const {
    for (const auto& e : e_)
        if (!e.in_O1()) return false;
    return true;
}

bool MatF::in_GLO1() const {
    if (!integral_O1()) return false;
    FElem d = mat_det(*this);
    if (d.provably_zero()) return false;
    return d.v2() == 0;
}

bool MatF::is_one_mod_t2() const {
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            FElem d = at(i, j);
            if (i == j) d = d - FElem::one(f_);
            if (d.provably_zero()) continue;
            if (d.val2_bound() >= 1) continue;
            if (d.provably_nonzero()) return false;
            throw PrecisionExhausted("congruence to I mod t2 undetermined");
        }
    return true;
}

ResMat MatF::residue(const ResRingPtr& ring) const {
    ResMat r(ring, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) r.at(i, j) = ring->reduce(fe_residue(at(i, j)));
    return r;
}

MatF MatF::lift(FieldRef f, const ResMat& r) {
    MatF m(f, r.n());
    for (unsigned i = 0; i < r.n(); ++i)
        for (unsigned j = 0; j < r.n(); ++j)
            m.at(i, j) = FElem::from_e(r.ring()->lift(f, r.at(i, j)));
    return m;
}

std::string MatF::str() const {
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < n_; ++i) {
        os << (i ? "; " : "") << "[";
        for (unsigned j = 0; j < n_; ++j) os << (j ? ", " : "") << at(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Pivot rank: (v2, v1) lexicographic; entries must be provably nonzero
// to be candidates.
struct PivotRank {
    int v2, v1;
    bool operator<(const PivotRank& o) const {
        return v2 != o.v2 ? v2 < o.v2 : v1 < o.v1;
    }
};

PivotRank rank_of(const FElem& e) { return PivotRank{e.v2(), e.coeffs().front().v1()}; }

} // namespace

FElem mat_det(const MatF& a) {
    unsigned n = a.n();
    const FieldRef& f = a.field();
    MatF w(a);
    FElem det = FElem::one(f);
    bool negate = false;
    for (unsigned k = 0; k < n; ++k) {
        unsigned pivot = n;
        PivotRank best{INT_MAX, INT_MAX};
        bool undecided = false;
        for (unsigned i = k; i < n; ++i) {
            const FElem& e = w.at(i, k);
            if (e.provably_nonzero()) {
                PivotRank r = rank_of(e);
                if (pivot == n || r < best) {
                    best = r;
                    pivot = i;
                }
            } else if (!e.provably_zero()) {
                undecided = true;
            }
        }
        if (pivot == n) {
            if (undecided) throw PrecisionExhausted("determinant pivot undetermined");
            return FElem::zero(f); // a provably zero column remains
        }
        if (pivot != k) {
            for (unsigned j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pivot, j));
            negate = !negate;
        }
        const FElem p = w.at(k, k);
        det = det * p;
        FElem pinv = p.inv();
        for (unsigned i = k + 1; i < n; ++i) {
            const FElem& e = w.at(i, k);
            if (e.provably_zero()) continue;
            FElem m = e * pinv;
            for (unsigned j = k; j < n; ++j) w.at(i, j) = w.at(i, j) - m * w.at(k, j);
        }
    }
    return negate ? -det : det;
}

MatF mat_inv(const MatF& a) {
    unsigned n = a.n();
    const FieldRef& f = a.field();
    MatF w(a);
    MatF inv = MatF::identity(f, n);
    for (unsigned k = 0; k < n; ++k) {
        unsigned pivot = n;
        PivotRank best{INT_MAX, INT_MAX};
        for (unsigned i = k; i < n; ++i) {
            const FElem& e = w.at(i, k);
            if (e.provably_nonzero()) {
                PivotRank r = rank_of(e);
                if (pivot == n || r < best) {
                    best = r;
                    pivot = i;
                }
            }
        }
        if (pivot == n) throw SingularAtPrecision("no usable pivot at current precision");
        if (pivot != k)
            for (unsigned j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(pivot, j));
                std::swap(inv.at(k, j), inv.at(pivot, j));
            }
        FElem pinv = w.at(k, k).inv();
        for (unsigned j = 0; j < n; ++j) {
            w.at(k, j) = w.at(k, j) * pinv;
            inv.at(k, j) = inv.at(k, j) * pinv;
        }
        for (unsigned i = 0; i < n; ++i) {
            if (i == k) continue;
            const FElem m = w.at(i, k);
            if (m.provably_zero()) continue;
            for (unsigned j = 0; j < n; ++j) {
                w.at(i, j) = w.at(i, j) - m * w.at(k, j);
                inv.at(i, j) = inv.at(i, j) - m * inv.at(k, j);
            }
        }
    }
    return inv;
}

namespace {

bool fully_exact(const FElem& e) {
    if (!e.exact2()) return false;
    for (const auto& c : e.coeffs())
        if (!c.exact()) return false;
    return true;
}

} // namespace

MatF mat_left_quotient(const MatF& b, const MatF& a) {
    MatF c = mat_inv(b) * a;
    for (unsigned i = 0; i < a.n(); ++i)
        for (unsigned j = 0; j < a.n(); ++j)
            if (!fully_exact(a.at(i, j)) || !fully_exact(b.at(i, j))) return c;
    MatF guess(a.field(), a.n());
    for (unsigned i = 0; i < a.n(); ++i)
        for (unsigned j = 0; j < a.n(); ++j) guess.at(i, j) = c.at(i, j).exactified();
    if ((b * guess).eq_exact(a)) return guess;
    return c;
}

MatF neumann_inv(const MatF& a) {
    if (!a.is_one_mod_t2())
        throw UnsupportedImageClass("Neumann inversion needs a matrix congruent to I mod t2");
    unsigned n = a.n();
    const FieldRef& f = a.field();
    MatF z = a - MatF::identity(f, n); // entries in t2*O1
    MatF acc = MatF::identity(f, n);
    MatF pw = MatF::identity(f, n);
    bool terminated = false;
    for (int k = 1; k <= f->t2_prec; ++k) {
        pw = pw * (-z);
        bool zero = true;
        for (unsigned i = 0; i < n && zero; ++i)
            for (unsigned j = 0; j < n && zero; ++j)
                if (!pw.at(i, j).provably_zero()) zero = false;
        if (zero) {
            terminated = true;
            break;
        }
        acc = acc + pw;
    }
    if (terminated) return acc;
    // series cut by the window: degrade exactness to the window bound
    MatF r(f, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            const FElem& e = acc.at(i, j);
            if (e.provably_zero()) {
                r.at(i, j) = FElem::from_coeffs(f, f->t2_prec, {}, false);
                continue;
            }
            std::vector<EElem> cs;
            int lo = e.val2_bound();
            for (int t = lo; t < std::min(e.known2_until(), f->t2_prec); ++t)
                cs.push_back(e.coeff_at(t));
            r.at(i, j) = FElem::from_coeffs(f, lo, std::move(cs), false);
        }
    return r;
}

SmithForm smith_form(const MatF& a) {
    unsigned n = a.n();
    const FieldRef& f = a.field();
    MatF r(a);
    MatF u = MatF::identity(f, n);
    MatF v = MatF::identity(f, n);

    for (unsigned k = 0; k < n; ++k) {
        // minimal-t2-valuation pivot in the remaining block
        unsigned pi = n, pj = n;
        int bestv = INT_MAX;
        for (unsigned i = k; i < n; ++i)
            for (unsigned j = k; j < n; ++j) {
                const FElem& e = r.at(i, j);
                if (e.provably_nonzero() && e.v2() < bestv) {
                    bestv = e.v2();
                    pi = i;
                    pj = j;
                }
            }
        if (pi == n) throw SingularAtPrecision("Smith form: block has no certified pivot");
        if (pi != k)
            for (unsigned j = 0; j < n; ++j) {
                std::swap(r.at(k, j), r.at(pi, j));
                std::swap(u.at(j, k), u.at(j, pi)); // U <- U * P (column swap)
            }
        if (pj != k)
            for (unsigned i = 0; i < n; ++i) {
                std::swap(r.at(i, k), r.at(i, pj));
                std::swap(v.at(k, i), v.at(pj, i)); // V <- P * V (row swap)
            }
        FElem p = r.at(k, k);
        FElem pinv = p.inv();
        // clear column k below the pivot: R <- E R with E = I - m e_{ik},
        // so U <- U E^{-1} adds m times column i to column k of U
        for (unsigned i = k + 1; i < n; ++i) {
            if (r.at(i, k).provably_zero()) continue;
            FElem m = r.at(i, k) * pinv; // in O1 by pivot minimality
            for (unsigned j = k; j < n; ++j) r.at(i, j) = r.at(i, j) - m * r.at(k, j);
            for (unsigned j = 0; j < n; ++j) u.at(j, k) = u.at(j, k) + m * u.at(j, i);
        }
        // clear row k right of the pivot: R <- R E with E = I - m e_{kj},
        // so V <- E^{-1} V adds m times row j to row k of V
        for (unsigned j = k + 1; j < n; ++j) {
            if (r.at(k, j).provably_zero()) continue;
            FElem m = r.at(k, j) * pinv;
            for (unsigned i = k; i < n; ++i) r.at(i, j) = r.at(i, j) - r.at(i, k) * m;
            for (unsigned i = 0; i < n; ++i) v.at(k, i) = v.at(k, i) + m * v.at(j, i);
        }
        // normalize the pivot to a plain t2-power: divide row k by its unit part
        auto dec = fe_unit_decompose(r.at(k, k));
        FElem unit = FElem::t1_pow(f, dec.v1) * dec.unit; // t2^{v2} * this = pivot
        FElem uinv = unit.inv();
        for (unsigned j = k + 1; j < n; ++j) r.at(k, j) = r.at(k, j) * uinv;
        r.at(k, k) = FElem::t2_pow(f, dec.v2); // known exactly
        for (unsigned j = 0; j < n; ++j) u.at(j, k) = u.at(j, k) * unit;
    }

    // ascending exponents via simultaneous row/col swaps
    std::vector<int> ex(n);
    for (unsigned i = 0; i < n; ++i) ex[i] = r.at(i, i).v2();
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            if (ex[j] < ex[i]) {
                std::swap(ex[i], ex[j]);
                for (unsigned t = 0; t < n; ++t) {
                    std::swap(r.at(i, t), r.at(j, t));
                    std::swap(u.at(t, i), u.at(t, j));
                }
                for (unsigned t = 0; t < n; ++t) {
                    std::swap(r.at(t, i), r.at(t, j));
                    std::swap(v.at(i, t), v.at(j, t));
                }
            }

    return SmithForm{std::move(u), std::move(r), std::move(v), std::move(ex)};
}

std::vector<ResMat> congruence_enumerate(unsigned q, unsigned n, CongLevel level, rcode_t budget) {
    auto ring = ResRing::get(q, level.m);
    MatEnumerator en(ring, n, true, budget);
    std::vector<ResMat> out;
    ResMat m(ring, n);
    while (en.next(m)) out.push_back(m);
    return out;
}

} // namespace hlf
