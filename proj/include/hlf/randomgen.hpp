#pragma once

#include <random>

#include "hlf/hecke.hpp"
#include "hlf/integrate.hpp"

namespace hlf {

// Deterministic seeded generator used by the verification suites and
// the oracle's cell-constancy sampling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) { // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }
    bool coin() { return uniform(0, 1) == 1; }
    gf_t gf(unsigned q) { return static_cast<gf_t>(uniform(0, static_cast<int>(q) - 1)); }
    gf_t gf_nonzero(unsigned q) { return static_cast<gf_t>(uniform(1, static_cast<int>(q) - 1)); }

private:
    std::mt19937_64 eng_;
};

// exact random polynomial in t1 with exponents in [lo, hi]
EElem random_epoly(const FieldRef& f, Rng& rng, int lo, int hi, bool nonzero);
// exact random element with t2-exponents in [lo2, hi2], t1-exponents in [lo1, hi1]
FElem random_fpoly(const FieldRef& f, Rng& rng, int lo2, int hi2, int lo1, int hi1, bool nonzero);
// random unit of the rank-two ring O
FElem random_unit_O2(const FieldRef& f, Rng& rng);
// random element of t2^gamma t1^delta O
FElem random_in_dist(const FieldRef& f, Rng& rng, int gamma, int delta);
// random element of t2^gamma O1
FElem random_in_ball(const FieldRef& f, Rng& rng, int gamma);

ResMat random_resmat(Rng& rng, const ResRingPtr& ring, unsigned n, bool invertible);
// random element of GL_n(O): invertible residue lift plus a t2-tail
MatF random_gl_O2(const FieldRef& f, Rng& rng, unsigned n, unsigned m);
// t2^a * GL_n(O) with a in [t2min, t2max]
MatF random_normalizing(const FieldRef& f, Rng& rng, unsigned n, unsigned m, int t2min, int t2max);

LaurentX random_laurent(Rng& rng, int xmin, int xmax);

DistinguishedSet random_dist_set(const FieldRef& f, Rng& rng, int grange, int drange);
// random simple function with box supports (n coordinates, `terms` terms)
SimpleFn random_box_simplefn(const FieldRef& f, Rng& rng, unsigned n, int terms);

ResFn random_char_profile(Rng& rng, const ResRingPtr& ring, unsigned n, int max_classes,
                          bool invertible_only, rcode_t budget);
BasicFn random_cong_fn(const FieldRef& f, Rng& rng, unsigned n, unsigned m, int gamma_max,
                       rcode_t budget);
BasicFn random_res0_fn(const FieldRef& f, Rng& rng, unsigned n, unsigned m, rcode_t budget);
HeckeElem random_hecke(const FieldRef& f, Rng& rng, unsigned n, unsigned m, int terms,
                       rcode_t budget);
// random point of the support of a basic function
MatF random_support_point(const BasicFn& fn, Rng& rng, rcode_t budget);

} // namespace hlf
