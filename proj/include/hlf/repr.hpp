#pragma once

#include "hlf/hecke.hpp"

namespace hlf {

// A measurable subgroup descriptor: the trivial group, a congruence
// group I_n + t2^Gamma p^{-1}(H) with H an additive level-m subgroup, or
// a residue group p^{-1}(H) ∩ GL_n(O1) with H a multiplicative subgroup
// of GL_n(O_E/t1^m).
struct SubgroupDescriptor {
    enum class Kind { Trivial, Congruence, Residue };

    Kind kind = Kind::Trivial;
    IntMat gamma{1, 0};
    ResRingPtr ring;
    unsigned n = 1;
    std::set<rcode_t> h;

    static SubgroupDescriptor trivial(unsigned n) {
        SubgroupDescriptor d;
        d.kind = Kind::Trivial;
        d.n = n;
        return d;
    }
    static SubgroupDescriptor congruence(IntMat gamma, ResRingPtr ring, std::set<rcode_t> h);
    static SubgroupDescriptor residue(unsigned n, ResRingPtr ring, std::set<rcode_t> h);

    bool contains(const MatF& x) const;
    // finite-level closure and inverse checks
    bool is_group_at_level() const;
    // char of the descriptor as a basic function (for measurability)
    BasicFn char_fn(FieldRef f) const;
    std::string str() const;
};

// A Hecke element viewed as a vector of the left-translation
// representation.
using RepElement = HeckeElem;

// (h . v)(x) = v(h^{-1} x): every term's base point moves to h * base.
RepElement translate_action(const MatF& h, const RepElement& v);

// pi(f) v = integral of f(g) pi(g) v dg = f * v.
RepElement hecke_action(const HeckeElem& f, const RepElement& v,
                        rcode_t budget = MatEnumerator::kDefaultBudget);

// Stabilizer of a single-term vector under left translation, per the
// case split: trivial for base != I_n, else I_n + t2^Gamma p^{-1}(H)
// with H the exhaustively computed level-m invariance group.
SubgroupDescriptor stabilizer(const RepElement& v,
                              rcode_t budget = MatEnumerator::kDefaultBudget);

// The maximal two-sided invariance group M of a single-term vector with
// base I_n.
SubgroupDescriptor bi_invariance_group(const RepElement& v,
                                       rcode_t budget = MatEnumerator::kDefaultBudget);

struct DoubleCosetTerm {
    MatF rep;
    LaurentX coeff;
};

struct DoubleCosetDecomposition {
    std::vector<DoubleCosetTerm> terms;
    bool truncated = false; // some support classes fell outside the bound
    // membership test y in M rep M used for reconstruction
};

// Decompose v over double cosets M g M, keeping representatives whose
// entries stay within the valuation bound.
DoubleCosetDecomposition double_coset_decompose(const RepElement& v,
                                                const SubgroupDescriptor& m, int bound,
                                                rcode_t budget = MatEnumerator::kDefaultBudget);

// y in M rep M (finite-level test through the descriptor's residues).
bool in_double_coset(const SubgroupDescriptor& m, const MatF& rep, const MatF& y,
                     rcode_t budget = MatEnumerator::kDefaultBudget);

} // namespace hlf
