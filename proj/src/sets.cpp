#include "hlf/sets.hpp"

#include <algorithm>
#include <sstream>

namespace hlf {

namespace {

// Canonical reduction of a center modulo t2^gamma O1: keep the
// t2-coefficients below gamma. The kept part must be exactly known.
FElem reduce_mod_ball_raw(const FElem& a, int gamma) {
    if (a.provably_zero()) return FElem::zero(a.field());
    if (!a.exact2() && a.known2_until() < gamma)
        throw PrecisionExhausted("center reduction needs t2-coefficients up to the ball level");
    std::vector<EElem> kept;
    int lo = a.val2_bound();
    int hi = std::min(gamma, a.val2_bound() + static_cast<int>(a.coeffs().size()));
    for (int e = lo; e < hi; ++e) {
        EElem c = a.coeff_at(e);
        if (!c.provably_zero() && !c.exact())
            throw PrecisionExhausted("center reduction needs exact t2-coefficients");
        kept.push_back(std::move(c));
    }
    return FElem::from_coeffs(a.field(), lo, std::move(kept), true);
}

// Canonical reduction modulo t2^gamma t1^delta O: additionally keep the
// sub-delta part of the t2^gamma coefficient.
FElem reduce_mod_dist_raw(const FElem& a, int gamma, int delta) {
    FElem head = reduce_mod_ball_raw(a, gamma);
    EElem stratum = EElem::zero(a.field());
    if (!a.provably_zero() && a.val2_bound() <= gamma) {
        if (a.known2_until() <= gamma) {
            if (!a.exact2())
                throw PrecisionExhausted("center reduction needs the t2^gamma coefficient");
        } else {
            stratum = a.coeff_at(gamma).truncated_below(delta);
        }
    }
    if (stratum.provably_zero()) return head;
    return head + FElem::monomial(gamma, std::move(stratum));
}

} // namespace

// ---------------------------------------------------------------------------
// ResSupport

ResSupport ResSupport::invertible(ResRingPtr ring, unsigned n, rcode_t budget) {
    ResSupport s{ring, n, false, {}};
    MatEnumerator en(ring, n, true, budget);
    ResMat m(ring, n);
    while (en.next(m)) s.elems.insert(m.encode());
    return s;
}

rcode_t ResSupport::count(rcode_t budget) const {
    if (full) return ResMat::space_size(ring, n, budget);
    return elems.size();
}

ResSupport ResSupport::intersect(const ResSupport& o, rcode_t budget) const {
    if (ring->level() != o.ring->level()) throw LevelMismatch("support intersection");
    if (full && o.full) return *this;
    if (full) return o;
    if (o.full) return *this;
    (void)budget;
    ResSupport r{ring, n, false, {}};
    std::set_intersection(elems.begin(), elems.end(), o.elems.begin(), o.elems.end(),
                          std::inserter(r.elems, r.elems.begin()));
    return r;
}

ResSupport ResSupport::unite(const ResSupport& o, rcode_t budget) const {
    if (ring->level() != o.ring->level()) throw LevelMismatch("support union");
    if (full || o.full) {
        // a union reaching the full space is reported as the marker
        ResSupport ex = full ? o : *this;
        (void)ex;
        return full_marker(ring, n);
    }
    (void)budget;
    ResSupport r{ring, n, false, {}};
    std::set_union(elems.begin(), elems.end(), o.elems.begin(), o.elems.end(),
                   std::inserter(r.elems, r.elems.begin()));
    return r;
}

ResSupport ResSupport::negated(rcode_t budget) const {
    if (full) return *this;
    (void)budget;
    ResSupport r{ring, n, false, {}};
    for (rcode_t c : elems) r.elems.insert((-ResMat::decode(ring, n, c)).encode());
    return r;
}

ResSupport ResSupport::translated(const ResMat& s, rcode_t budget) const {
    if (full) return *this;
    (void)budget;
    ResSupport r{ring, n, false, {}};
    for (rcode_t c : elems) r.elems.insert((ResMat::decode(ring, n, c) + s).encode());
    return r;
}

ResSupport ResSupport::lifted(const ResRingPtr& higher, rcode_t budget) const {
    if (higher->level() == ring->level()) return *this;
    if (higher->level() < ring->level()) throw LevelMismatch("cannot lift support downward");
    if (full) return full_marker(higher, n);
    ResSupport r{higher, n, false, {}};
    MatEnumerator en(higher, n, false, budget);
    ResMat m(higher, n);
    while (en.next(m))
        if (elems.count(m.project(ring).encode())) r.elems.insert(m.encode());
    return r;
}

std::vector<ResMat> ResSupport::enumerate(rcode_t budget) const {
    std::vector<ResMat> out;
    if (full) {
        MatEnumerator en(ring, n, false, budget);
        ResMat m(ring, n);
        while (en.next(m)) out.push_back(m);
    } else {
        for (rcode_t c : elems) out.push_back(ResMat::decode(ring, n, c));
    }
    return out;
}

bool operator==(const ResSupport& a, const ResSupport& b) {
    if (a.ring->level() != b.ring->level() || a.n != b.n) return false;
    if (a.full == b.full) return a.full || a.elems == b.elems;
    const ResSupport& ex = a.full ? b : a;
    return ex.elems.size() == ResMat::space_size(ex.ring, ex.n, MatEnumerator::kDefaultBudget);
}

// ---------------------------------------------------------------------------
// balls and boxes

Ball::Ball(FElem center, int g) : a(reduce_mod_ball_raw(center, g)), gamma(g) {}

bool Ball::contains(const FElem& x) const { return reduce_mod_ball_raw(x, gamma).eq_exact(a); }

std::string Ball::str() const {
    return "ball(" + a.str() + "; " + std::to_string(gamma) + ")";
}

bool Box::contains(const std::vector<FElem>& x) const {
    if (x.size() != balls.size()) throw DimensionMismatch("box membership");
    for (std::size_t i = 0; i < balls.size(); ++i)
        if (!balls[i].contains(x[i])) return false;
    return true;
}

std::optional<Ball> ball_intersect(const Ball& b1, const Ball& b2) {
    const Ball& coarse = b1.gamma <= b2.gamma ? b1 : b2;
    const Ball& fine = b1.gamma <= b2.gamma ? b2 : b1;
    if (coarse.contains(fine.a)) return fine;
    return std::nullopt;
}

Ball ball_affine_image(const FElem& g, const FElem& c, const Ball& b) {
    if (g.provably_zero()) throw DivisionByZero("affine image with zero multiplier");
    int v = g.v2();
    return Ball(g * b.a + c, b.gamma + v);
}

Ball ball_minkowski_sum(const Ball& b1, const Ball& b2) {
    return Ball(b1.a + b2.a, std::min(b1.gamma, b2.gamma));
}

std::optional<Box> box_intersect(const Box& b1, const Box& b2) {
    if (b1.dim() != b2.dim()) throw DimensionMismatch("box intersection");
    Box r;
    for (unsigned i = 0; i < b1.dim(); ++i) {
        auto c = ball_intersect(b1.balls[i], b2.balls[i]);
        if (!c) return std::nullopt;
        r.balls.push_back(*c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// distinguished sets

DistinguishedSet::DistinguishedSet(FElem center, int g, int d)
    : a(reduce_mod_dist_raw(center, g, d)), gamma(g), delta(d) {}

bool DistinguishedSet::contains(const FElem& x) const {
    return reduce_mod_dist_raw(x, gamma, delta).eq_exact(a);
}

std::string DistinguishedSet::str() const {
    return "dist(" + a.str() + "; " + std::to_string(gamma) + ", " + std::to_string(delta) + ")";
}

bool DistBox::contains(const std::vector<FElem>& x) const {
    if (x.size() != parts.size()) throw DimensionMismatch("distinguished box membership");
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!parts[i].contains(x[i])) return false;
    return true;
}

LaurentX DistBox::measure(unsigned q) const {
    Monomial m{0, 0};
    for (const auto& p : parts) m = m * p.measure();
    return m.to_laurent(q);
}

std::string DistBox::str() const {
    std::string s = "box[";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i].str();
    return s + "]";
}

namespace {

// lexicographic comparison of levels: larger means finer
bool lex_leq(int g1, int d1, int g2, int d2) { return g1 != g2 ? g1 < g2 : d1 <= d2; }

} // namespace

bool dist_subset(const DistinguishedSet& d1, const DistinguishedSet& d2) {
    if (!lex_leq(d2.gamma, d2.delta, d1.gamma, d1.delta)) return false;
    return d2.contains(d1.a);
}

std::optional<DistinguishedSet> dist_intersect(const DistinguishedSet& s1,
                                               const DistinguishedSet& s2) {
    const bool s1_coarse = lex_leq(s1.gamma, s1.delta, s2.gamma, s2.delta);
    const DistinguishedSet& coarse = s1_coarse ? s1 : s2;
    const DistinguishedSet& fine = s1_coarse ? s2 : s1;
    if (coarse.contains(fine.a)) return fine;
    return std::nullopt;
}

std::optional<DistBox> distbox_intersect(const DistBox& b1, const DistBox& b2) {
    if (b1.dim() != b2.dim()) throw DimensionMismatch("distinguished box intersection");
    DistBox r;
    for (unsigned i = 0; i < b1.dim(); ++i) {
        auto c = dist_intersect(b1.parts[i], b2.parts[i]);
        if (!c) return std::nullopt;
        r.parts.push_back(*c);
    }
    return r;
}

bool distbox_subset(const DistBox& b1, const DistBox& b2) {
    if (b1.dim() != b2.dim()) throw DimensionMismatch("distinguished box inclusion");
    for (unsigned i = 0; i < b1.dim(); ++i)
        if (!dist_subset(b1.parts[i], b2.parts[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// ring normalization

bool SetExpr::contains(const std::vector<FElem>& x) const {
    switch (kind) {
        case Kind::Leaf:
            return leaf.contains(x);
        case Kind::Union:
            for (const auto& a : args)
                if (a.contains(x)) return true;
            return false;
        case Kind::Diff:
            if (!args[0].contains(x)) return false;
            for (std::size_t i = 1; i < args.size(); ++i)
                if (args[i].contains(x)) return false;
            return true;
    }
    return false;
}

bool SetRingComponent::contains(const std::vector<FElem>& x) const {
    if (!base.contains(x)) return false;
    for (const auto& h : holes)
        if (h.contains(x)) return false;
    return true;
}

bool SetRingElem::contains(const std::vector<FElem>& x) const {
    for (const auto& c : components_)
        if (c.contains(x)) return true;
    return false;
}

SetRingElem SetRingElem::normalized_from(std::vector<SetRingComponent> comps) {
    SetRingElem s;
    s.components_ = std::move(comps);
    s.normalized_ = true;
    return s;
}

SetRingElem SetRingElem::raw(std::vector<SetRingComponent> comps) {
    SetRingElem s;
    s.components_ = std::move(comps);
    return s;
}

namespace {

void collect_leaves(const SetExpr& e, std::vector<DistBox>& out) {
    if (e.kind == SetExpr::Kind::Leaf) {
        out.push_back(e.leaf);
        return;
    }
    for (const auto& a : e.args) collect_leaves(a, out);
}

std::size_t find_box(const std::vector<DistBox>& v, const DistBox& b) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == b) return i;
    return v.size();
}

// symbolic membership of the atom of box C in a leaf expression: every
// point of atom(C) lies in leaf B iff C is a subset of B
bool atom_in_expr(const SetExpr& e, const DistBox& c) {
    switch (e.kind) {
        case SetExpr::Kind::Leaf:
            return distbox_subset(c, e.leaf);
        case SetExpr::Kind::Union:
            for (const auto& a : e.args)
                if (atom_in_expr(a, c)) return true;
            return false;
        case SetExpr::Kind::Diff:
            if (!atom_in_expr(e.args[0], c)) return false;
            for (std::size_t i = 1; i < e.args.size(); ++i)
                if (atom_in_expr(e.args[i], c)) return false;
            return true;
    }
    return false;
}

constexpr std::size_t kResolveCellCap = 4096;
constexpr std::size_t kClosureCap = 20000;

// Explicit t1-level resolution of base \ holes when every hole sits in
// the same t2-strata as the base: enumerate residue cells and keep the
// uncovered ones.
std::optional<std::vector<DistBox>> resolve_t1_holes(const DistBox& base,
                                                     const std::vector<DistBox>& holes,
                                                     unsigned q) {
    unsigned dim = base.dim();
    std::vector<int> target_delta(dim);
    for (unsigned i = 0; i < dim; ++i) target_delta[i] = base.parts[i].delta;
    for (const auto& h : holes)
        for (unsigned i = 0; i < dim; ++i) {
            if (h.parts[i].gamma != base.parts[i].gamma) return std::nullopt;
            target_delta[i] = std::max(target_delta[i], h.parts[i].delta);
        }

    std::size_t cells = 1;
    for (unsigned i = 0; i < dim; ++i) {
        for (int d = base.parts[i].delta; d < target_delta[i]; ++d) {
            cells *= q;
            if (cells > kResolveCellCap) return std::nullopt;
        }
    }

    const FieldRef& f = base.parts[0].a.field();
    // enumerate digit choices per coordinate
    std::vector<DistBox> out;
    std::vector<std::vector<gf_t>> digits(dim);
    for (unsigned i = 0; i < dim; ++i)
        digits[i].assign(static_cast<std::size_t>(target_delta[i] - base.parts[i].delta), 0);

    auto make_cell = [&]() {
        DistBox cell;
        for (unsigned i = 0; i < dim; ++i) {
            const auto& p = base.parts[i];
            EElem offset = EElem::from_coeffs(f, p.delta, digits[i]);
            FElem center = p.a + FElem::monomial(p.gamma, offset);
            cell.parts.emplace_back(center, p.gamma, target_delta[i]);
        }
        return cell;
    };

    while (true) {
        DistBox cell = make_cell();
        bool covered = false;
        for (const auto& h : holes)
            if (distbox_subset(cell, h)) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(cell);
        // increment the digit odometer
        bool carried = false;
        for (unsigned i = 0; i < dim && !carried; ++i)
            for (auto& d : digits[i]) {
                if (d + 1 < q) {
                    ++d;
                    carried = true;
                    break;
                }
                d = 0;
            }
        if (!carried) break;
    }
    return out;
}

} // namespace

SetRingElem ring_normalize(const SetExpr& expr, unsigned q) {
    std::vector<DistBox> boxes;
    collect_leaves(expr, boxes);
    if (boxes.empty()) return SetRingElem::normalized_from({});
    unsigned dim = boxes[0].dim();
    for (const auto& b : boxes)
        if (b.dim() != dim) throw DimensionMismatch("mixed dimensions in set expression");

    // dedupe and close under pairwise intersection
    std::vector<DistBox> closed;
    for (const auto& b : boxes)
        if (find_box(closed, b) == closed.size()) closed.push_back(b);
    for (std::size_t i = 0; i < closed.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            auto c = distbox_intersect(closed[i], closed[j]);
            if (c && find_box(closed, *c) == closed.size()) closed.push_back(*c);
        }
        if (closed.size() > kClosureCap) throw BudgetExceeded("set expression closure too large");
    }

    // atom measures by Moebius recursion over the inclusion poset
    std::vector<LaurentX> atom_measure(closed.size());
    // process in an order where subsets come first
    std::vector<std::size_t> order(closed.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        bool xy = distbox_subset(closed[x], closed[y]);
        bool yx = distbox_subset(closed[y], closed[x]);
        if (xy != yx) return xy;
        return false;
    });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        std::size_t i = order[oi];
        LaurentX m = closed[i].measure(q);
        for (std::size_t oj = 0; oj < oi; ++oj) {
            std::size_t j = order[oj];
            if (i != j && distbox_subset(closed[j], closed[i])) m -= atom_measure[j];
        }
        atom_measure[i] = std::move(m);
    }

    std::vector<SetRingComponent> comps;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        if (atom_measure[i].is_zero()) continue; // empty atom
        if (!atom_in_expr(expr, closed[i])) continue;
        std::vector<DistBox> holes;
        for (std::size_t j = 0; j < closed.size(); ++j)
            if (j != i && distbox_subset(closed[j], closed[i]) && !(closed[j] == closed[i]))
                holes.push_back(closed[j]);
        if (holes.empty()) {
            comps.push_back(SetRingComponent{closed[i], {}, atom_measure[i]});
            continue;
        }
        // resolve t1-only holes to explicit cells when cheap
        auto resolved = resolve_t1_holes(closed[i], holes, q);
        if (resolved) {
            for (auto& cell : *resolved)
                comps.push_back(SetRingComponent{cell, {}, cell.measure(q)});
        } else {
            comps.push_back(SetRingComponent{closed[i], std::move(holes), atom_measure[i]});
        }
    }
    return SetRingElem::normalized_from(std::move(comps));
}

LaurentX dist_measure(const SetRingElem& s, unsigned q) {
    if (!s.normalized()) throw NotNormalized("measure of an unnormalized set-ring element");
    (void)q;
    LaurentX total;
    for (const auto& c : s.components()) total += c.measure;
    return total;
}

std::vector<DistBox> set_expr_leaves(const SetExpr& expr) {
    std::vector<DistBox> out;
    collect_leaves(expr, out);
    return out;
}

// ---------------------------------------------------------------------------
// congruence cosets

GLCongCoset::GLCongCoset(MatF base, IntMat gamma, ResSupport support)
    : A(std::move(base)), Gamma(std::move(gamma)), V(std::move(support)) {
    if (A.n() != Gamma.n() || A.n() != V.n) throw DimensionMismatch("congruence coset data");
    if (Gamma.min_entry() < 1)
        throw UnsupportedImageClass("Gamma must be entrywise >= 1 for congruence cosets");
    FElem d = mat_det(A);
    if (!d.provably_nonzero()) throw SingularAtPrecision("coset base not certified invertible");
}

bool GLCongCoset::contains(const MatF& x) const {
    MatF m = mat_left_quotient(A, x);
    unsigned nn = n();
    ResMat residue(V.ring, nn);
    for (unsigned i = 0; i < nn; ++i)
        for (unsigned j = 0; j < nn; ++j) {
            FElem e = m.at(i, j);
            if (i == j) e = e - FElem::one(A.field());
            e = e.shifted2(-Gamma.at(i, j));
            if (!e.in_O1()) return false;
            if (V.full) continue;
            EElem r = fe_residue(e);
            if (!r.in_OE()) return false;
            residue.at(i, j) = V.ring->reduce(r);
        }
    if (V.full) return true;
    return V.contains(residue);
}

std::string GLCongCoset::str() const {
    std::ostringstream os;
    os << "coset(A=" << A.str() << "; Gamma=[";
    for (unsigned i = 0; i < Gamma.n(); ++i) {
        os << (i ? ";" : "") << "[";
        for (unsigned j = 0; j < Gamma.n(); ++j) os << (j ? "," : "") << Gamma.at(i, j);
        os << "]";
    }
    os << "]; V=" << (V.full ? "full" : std::to_string(V.elems.size()) + " classes") << "@"
       << V.level() << ")";
    return os.str();
}

namespace {

std::optional<GLCongCoset> intersect_oriented(const GLCongCoset& fine, const GLCongCoset& coarse,
                                              rcode_t budget) {
    // fine.Gamma >= coarse.Gamma entrywise; coarse.Gamma constant
    unsigned nn = fine.n();
    const FieldRef& f = fine.A.field();
    int delta = coarse.Gamma.at(0, 0);

    MatF c = mat_left_quotient(coarse.A, fine.A);
    if (!c.is_one_mod_t2()) return std::nullopt;

    // S = (C - I) / t2^delta must be integral for a nonempty intersection
    MatF s(f, nn);
    for (unsigned i = 0; i < nn; ++i)
        for (unsigned j = 0; j < nn; ++j) {
            FElem e = c.at(i, j);
            if (i == j) e = e - FElem::one(f);
            e = e.shifted2(-delta);
            if (e.provably_zero() || e.val2_bound() >= 0) {
                s.at(i, j) = e;
                continue;
            }
            if (e.provably_nonzero()) return std::nullopt;
            throw PrecisionExhausted("coset intersection undetermined at this precision");
        }

    if (coarse.V.full) {
        // no residue condition beyond integrality
        if (fine.V.empty()) return std::nullopt;
        return fine;
    }

    if (fine.V.full && fine.Gamma.is_constant() && fine.Gamma.at(0, 0) == delta) {
        // free residues absorb the offset: rebase onto the shifted chart
        unsigned m = coarse.V.ring->level();
        MatF shift(f, nn);
        for (unsigned i = 0; i < nn; ++i)
            for (unsigned j = 0; j < nn; ++j) {
                EElem head = fe_residue(s.at(i, j)).truncated_below(static_cast<int>(m));
                shift.at(i, j) = FElem::from_e(-head);
            }
        MatF d = fine.A * (MatF::identity(f, nn) + shift.shifted2(delta));
        return GLCongCoset(std::move(d), fine.Gamma, coarse.V);
    }

    bool any_masked = false;
    for (unsigned i = 0; i < nn; ++i)
        for (unsigned j = 0; j < nn; ++j)
            if (fine.Gamma.at(i, j) == delta) any_masked = true;

    // residue of S, which must be t1-integral to meet an explicit support
    ResMat sm(coarse.V.ring, nn);
    for (unsigned i = 0; i < nn; ++i)
        for (unsigned j = 0; j < nn; ++j) {
            EElem r = fe_residue(s.at(i, j));
            if (!r.in_OE()) {
                if (fine.V.full && fine.Gamma.at(i, j) == delta)
                    throw UnsupportedImageClass(
                        "chart shift with non-constant Gamma is not supported");
                return std::nullopt;
            }
            sm.at(i, j) = coarse.V.ring->reduce(r);
        }

    if (!any_masked) {
        // membership in the coarse coset is constant on the fine one
        if (!coarse.V.contains(sm)) return std::nullopt;
        return fine;
    }
    if (fine.V.full)
        throw UnsupportedImageClass("chart shift with non-constant Gamma is not supported");

    ResSupport result{fine.V.ring, nn, false, {}};
    for (const ResMat& r : fine.V.enumerate(budget)) {
        ResMat t = sm;
        for (unsigned i = 0; i < nn; ++i)
            for (unsigned j = 0; j < nn; ++j)
                if (fine.Gamma.at(i, j) == delta)
                    t.at(i, j) = t.ring()->add(t.at(i, j), r.at(i, j));
        if (coarse.V.contains(t)) result.elems.insert(r.encode());
    }
    if (result.empty()) return std::nullopt;
    return GLCongCoset(fine.A, fine.Gamma, std::move(result));
}

std::optional<GLCongCoset> intersect_same_base(const GLCongCoset& c1, const GLCongCoset& c2,
                                               rcode_t budget) {
    // A == B exactly; arbitrary Gamma/Delta via masked residue filtering
    unsigned nn = c1.n();
    IntMat theta(nn);
    for (unsigned i = 0; i < nn; ++i)
        for (unsigned j = 0; j < nn; ++j)
            theta.at(i, j) = std::max(c1.Gamma.at(i, j), c2.Gamma.at(i, j));

    auto ring = c1.V.ring;
    ResSupport result{ring, nn, false, {}};
    MatEnumerator en(ring, nn, false, budget);
    ResMat p(ring, nn);
    bool all = true;
    while (en.next(p)) {
        ResMat r1(ring, nn), r2(ring, nn);
        for (unsigned i = 0; i < nn; ++i)
            for (unsigned j = 0; j < nn; ++j) {
                if (c1.Gamma.at(i, j) == theta.at(i, j)) r1.at(i, j) = p.at(i, j);
                if (c2.Gamma.at(i, j) == theta.at(i, j)) r2.at(i, j) = p.at(i, j);
            }
        if (c1.V.contains(r1) && c2.V.contains(r2))
            result.elems.insert(p.encode());
        else
            all = false;
    }
    if (result.empty()) return std::nullopt;
    if (all) return GLCongCoset(c1.A, theta, ResSupport::full_marker(ring, nn));
    return GLCongCoset(c1.A, theta, std::move(result));
}

} // namespace

std::optional<GLCongCoset> glcoset_intersect(const GLCongCoset& c1, const GLCongCoset& c2,
                                             rcode_t budget) {
    if (c1.n() != c2.n()) throw DimensionMismatch("coset intersection");
    if (c1.level() != c2.level()) throw LevelMismatch("coset supports at different levels");
    if (c1.V.empty() || c2.V.empty()) return std::nullopt;

    if (c1.Gamma.entrywise_geq(c2.Gamma) && c2.Gamma.is_constant())
        return intersect_oriented(c1, c2, budget);
    if (c2.Gamma.entrywise_geq(c1.Gamma) && c1.Gamma.is_constant())
        return intersect_oriented(c2, c1, budget);
    if ((c1.A - c2.A).eq_exact(MatF(c1.A.field(), c1.n())))
        return intersect_same_base(c1, c2, budget);
    throw UnsupportedImageClass(
        "coset intersection outside the exactly-supported class (incomparable Gamma with "
        "distinct bases)");
}

} // namespace hlf
