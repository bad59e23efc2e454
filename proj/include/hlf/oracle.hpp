#pragma once

#include "hlf/integrate.hpp"
#include "hlf/randomgen.hpp"
#include "hlf/sets.hpp"

namespace hlf {

// The independent counting oracle. It never touches the symbolic set
// algebra or the integration engine: values are produced by
// enumerating residue classes in O_E/t1^c per t2-stratum, evaluating
// indicators or integrands pointwise at cell representatives, and
// reading X-exponents off the t2-grading. Cell constancy is spot
// checked with extra random points; operands that are not constant on
// oracle cells are rejected.
struct OracleOptions {
    int constancy_samples = 2;
    std::size_t cell_budget = 1u << 18;
    std::uint64_t seed = 0x5eedULL;
};

LaurentX oracle_measure(const SetExpr& expr, unsigned q, FieldRef f,
                        const OracleOptions& opt = {});

LaurentX oracle_integral(const SimpleFn& fn, const OracleOptions& opt = {});

} // namespace hlf
