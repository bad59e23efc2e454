#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hlf/errors.hpp"

namespace hlf {

using gf_t = std::uint32_t;

// Arithmetic tables for GF(q), q = p^k <= 2^16. Elements are encoded as
// packed base-p digit vectors (so for prime q the code IS the value mod
// p, and code arithmetic for addition is digitwise). Multiplication
// goes through exp/log tables over a primitive element.
class GFTable {
public:
    explicit GFTable(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned degree() const { return k_; }

    gf_t add(gf_t a, gf_t b) const;
    gf_t neg(gf_t a) const;
    gf_t sub(gf_t a, gf_t b) const { return add(a, neg(b)); }
    gf_t mul(gf_t a, gf_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    gf_t inv(gf_t a) const {
        if (a == 0) throw DivisionByZero("inverse of 0 in GF(q)");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    gf_t div(gf_t a, gf_t b) const { return mul(a, inv(b)); }
    gf_t pow(gf_t a, long e) const;

    // Encodes a plain integer (0..q-1 treated as base-p digits; for
    // prime q this is just n mod p when n < q).
    gf_t from_int(long n) const;

    static std::shared_ptr<const GFTable> get(unsigned q);

private:
    unsigned q_, p_, k_;
    std::vector<gf_t> exp_; // exp_[i] = g^i, i in [0, q-1)
    std::vector<unsigned> log_;
    std::vector<gf_t> add_p_; // digit addition table for p (p*p entries)
};

using GFPtr = std::shared_ptr<const GFTable>;

} // namespace hlf
