#pragma once

#include <optional>
#include <set>
#include <vector>

#include "hlf/matrix.hpp"

namespace hlf {

// A subset of M_n(O_E/t1^m): either everything (the full-residue
// marker) or an explicit set of encoded matrices. This is the E-level
// support datum V of a congruence coset A(I_n + t2^Gamma p^{-1}(V)).
struct ResSupport {
    ResRingPtr ring;
    unsigned n = 1;
    bool full = false;
    std::set<rcode_t> elems;

    static ResSupport full_marker(ResRingPtr ring, unsigned n) {
        return ResSupport{std::move(ring), n, true, {}};
    }
    static ResSupport of(ResRingPtr ring, unsigned n, std::set<rcode_t> elems) {
        return ResSupport{std::move(ring), n, false, std::move(elems)};
    }
    static ResSupport single(const ResMat& m) {
        return ResSupport{m.ring(), m.n(), false, {m.encode()}};
    }
    // all invertible residues
    static ResSupport invertible(ResRingPtr ring, unsigned n, rcode_t budget);

    unsigned level() const { return ring->level(); }
    bool contains(const ResMat& m) const { return full || elems.count(m.encode()) > 0; }
    bool contains_code(rcode_t c) const { return full || elems.count(c) > 0; }
    bool empty() const { return !full && elems.empty(); }
    rcode_t count(rcode_t budget) const;

    ResSupport intersect(const ResSupport& o, rcode_t budget) const;
    ResSupport unite(const ResSupport& o, rcode_t budget) const;
    // {-v : v in V}
    ResSupport negated(rcode_t budget) const;
    // {v + s}
    ResSupport translated(const ResMat& s, rcode_t budget) const;
    ResSupport lifted(const ResRingPtr& higher, rcode_t budget) const;
    std::vector<ResMat> enumerate(rcode_t budget) const;

    friend bool operator==(const ResSupport& a, const ResSupport& b);
};

// ---------------------------------------------------------------------------
// rank-one balls and boxes

// a + t2^gamma * O1 with the center reduced mod t2^gamma.
struct Ball {
    FElem a;
    int gamma;

    Ball(FElem center, int g);
    bool contains(const FElem& x) const;
    friend bool operator==(const Ball& x, const Ball& y) {
        return x.gamma == y.gamma && x.a.eq_exact(y.a);
    }
    std::string str() const;
};

struct Box {
    std::vector<Ball> balls;

    unsigned dim() const { return static_cast<unsigned>(balls.size()); }
    bool contains(const std::vector<FElem>& x) const;
    friend bool operator==(const Box& x, const Box& y) { return x.balls == y.balls; }
};

std::optional<Ball> ball_intersect(const Ball& b1, const Ball& b2);
// image of b under x -> g*x + c
Ball ball_affine_image(const FElem& g, const FElem& c, const Ball& b);
Ball ball_minkowski_sum(const Ball& b1, const Ball& b2);
std::optional<Box> box_intersect(const Box& b1, const Box& b2);

// ---------------------------------------------------------------------------
// distinguished sets of F and F^n

// a + t2^gamma t1^delta O with the center reduced mod t2^gamma t1^delta O.
struct DistinguishedSet {
    FElem a;
    int gamma;
    int delta;

    DistinguishedSet(FElem center, int g, int d);
    bool contains(const FElem& x) const;
    Monomial measure() const { return Monomial{gamma, delta}; }
    friend bool operator==(const DistinguishedSet& x, const DistinguishedSet& y) {
        return x.gamma == y.gamma && x.delta == y.delta && x.a.eq_exact(y.a);
    }
    std::string str() const;
};

// product of distinguished sets inside F^n
struct DistBox {
    std::vector<DistinguishedSet> parts;

    unsigned dim() const { return static_cast<unsigned>(parts.size()); }
    bool contains(const std::vector<FElem>& x) const;
    LaurentX measure(unsigned q) const;
    friend bool operator==(const DistBox& x, const DistBox& y) { return x.parts == y.parts; }
    std::string str() const;
};

// intersection of two one-dimensional distinguished sets: the finer of
// the two nested classes, or empty
std::optional<DistinguishedSet> dist_intersect(const DistinguishedSet& s1,
                                               const DistinguishedSet& s2);
std::optional<DistBox> distbox_intersect(const DistBox& b1, const DistBox& b2);
// whether d1 is contained in d2
bool dist_subset(const DistinguishedSet& d1, const DistinguishedSet& d2);
bool distbox_subset(const DistBox& b1, const DistBox& b2);

// ---------------------------------------------------------------------------
// the minimal measure ring

// Union/difference expression over distinguished boxes.
struct SetExpr {
    enum class Kind { Leaf, Union, Diff } kind = Kind::Leaf;
    DistBox leaf;
    std::vector<SetExpr> args; // Union: all args; Diff: args[0] minus the rest

    static SetExpr make_leaf(DistBox b) {
        SetExpr e;
        e.kind = Kind::Leaf;
        e.leaf = std::move(b);
        return e;
    }
    static SetExpr make_union(std::vector<SetExpr> parts) {
        SetExpr e;
        e.kind = Kind::Union;
        e.args = std::move(parts);
        return e;
    }
    static SetExpr make_diff(SetExpr base, std::vector<SetExpr> minus) {
        SetExpr e;
        e.kind = Kind::Diff;
        e.args.push_back(std::move(base));
        for (auto& m : minus) e.args.push_back(std::move(m));
        return e;
    }

    bool contains(const std::vector<FElem>& x) const;
};

// One normalized region: base minus the strict subboxes listed as
// holes. The measure is precomputed exactly during normalization.
struct SetRingComponent {
    DistBox base;
    std::vector<DistBox> holes; // may overlap each other; all strictly inside base
    LaurentX measure;

    bool contains(const std::vector<FElem>& x) const;
};

// A normalized element of the measure ring: pairwise disjoint
// components whose union has the same indicator as the source
// expression.
class SetRingElem {
public:
    SetRingElem() = default;

    bool normalized() const { return normalized_; }
    const std::vector<SetRingComponent>& components() const { return components_; }
    unsigned dim() const { return components_.empty() ? 0 : components_[0].base.dim(); }
    bool contains(const std::vector<FElem>& x) const;

    static SetRingElem normalized_from(std::vector<SetRingComponent> comps);
    static SetRingElem raw(std::vector<SetRingComponent> comps); // not normalized

private:
    std::vector<SetRingComponent> components_;
    bool normalized_ = false;
};

SetRingElem ring_normalize(const SetExpr& expr, unsigned q);
// Total measure of a normalized element; throws NotNormalized otherwise.
LaurentX dist_measure(const SetRingElem& s, unsigned q);
std::vector<DistBox> set_expr_leaves(const SetExpr& expr);

// ---------------------------------------------------------------------------
// congruence cosets of GL_n(F)

// A(I_n + t2^Gamma p^{-1}(V)) with Gamma entrywise >= 1.
struct GLCongCoset {
    MatF A;
    IntMat Gamma;
    ResSupport V;

    GLCongCoset(MatF base, IntMat gamma, ResSupport support);

    unsigned n() const { return A.n(); }
    unsigned level() const { return V.level(); }
    bool contains(const MatF& x) const;
    std::string str() const;
};

std::optional<GLCongCoset> glcoset_intersect(const GLCongCoset& c1, const GLCongCoset& c2,
                                             rcode_t budget = MatEnumerator::kDefaultBudget);

} // namespace hlf
