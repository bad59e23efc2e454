#include "hlf/gf.hpp"

#include <map>
#include <mutex>

namespace hlf {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Factor q as p^k; returns false if q is not a prime power.
bool prime_power(unsigned q, unsigned& p, unsigned& k) {
    if (q < 2) return false;
    for (unsigned d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            k = 0;
            while (q % d == 0) {
                q /= d;
                ++k;
            }
            return q == 1;
        }
    }
    p = q;
    k = 1;
    return true;
}

// Polynomial arithmetic over F_p with coefficients packed base-p into an
// unsigned value, used only while building the tables.
std::vector<unsigned> unpack(unsigned code, unsigned p) {
    std::vector<unsigned> digits;
    while (code) {
        digits.push_back(code % p);
        code /= p;
    }
    return digits;
}

unsigned pack(const std::vector<unsigned>& digits, unsigned p) {
    unsigned code = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) code = code * p + *it;
    return code;
}

// (a * x) mod f, where f is a monic irreducible of degree k.
unsigned mulx_mod(unsigned a, unsigned p, unsigned k, const std::vector<unsigned>& f) {
    std::vector<unsigned> da = unpack(a, p);
    da.insert(da.begin(), 0);
    if (da.size() > k) {
        unsigned lead = da[k];
        da.resize(k);
        if (lead) {
            for (unsigned i = 0; i < k; ++i)
                da[i] = (da[i] + (p - lead % p) * f[i] % p + p) % p;
        }
    }
    return pack(da, p);
}

unsigned poly_mul_mod(unsigned a, unsigned b, unsigned p, unsigned k,
                      const std::vector<unsigned>& f) {
    unsigned result = 0;
    std::vector<unsigned> db = unpack(b, p);
    unsigned shifted = a;
    for (unsigned i = 0; i < db.size(); ++i) {
        if (db[i]) {
            // result += db[i] * shifted (coefficientwise)
            std::vector<unsigned> dr = unpack(result, p), ds = unpack(shifted, p);
            dr.resize(k, 0);
            ds.resize(k, 0);
            for (unsigned j = 0; j < k; ++j) dr[j] = (dr[j] + db[i] * ds[j]) % p;
            result = pack(dr, p);
        }
        shifted = mulx_mod(shifted, p, k, f);
    }
    return result;
}

// Finds a monic irreducible polynomial of degree k over F_p by testing
// candidates against all products of lower-degree monics. k is tiny
// (q <= 2^16), so brute force is fine.
std::vector<unsigned> find_irreducible(unsigned p, unsigned k) {
    if (k == 1) return {0}; // unused
    unsigned pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    for (unsigned tail = 1; tail < pk; ++tail) {
        // candidate f = x^k + tail-digits
        std::vector<unsigned> f = unpack(tail, p);
        f.resize(k, 0);
        // f is irreducible iff no root-free factorization; test by trial
        // division with all monic polys of degree 1..k/2.
        bool irreducible = true;
        for (unsigned deg = 1; irreducible && deg <= k / 2; ++deg) {
            unsigned pd = 1;
            for (unsigned i = 0; i < deg; ++i) pd *= p;
            for (unsigned t = 0; t < pd && irreducible; ++t) {
                // divisor g = x^deg + digits(t); long-divide f by g
                std::vector<unsigned> g = unpack(t, p);
                g.resize(deg, 0);
                g.push_back(1);
                std::vector<unsigned> r = f;
                r.push_back(1); // monic x^k
                for (int i = static_cast<int>(k); i >= static_cast<int>(deg); --i) {
                    unsigned c = r[i];
                    if (c == 0) continue;
                    for (unsigned j = 0; j <= deg; ++j)
                        r[i - deg + j] = (r[i - deg + j] + (p - c % p) * g[j]) % p;
                }
                bool zero = true;
                for (unsigned i = 0; i < deg; ++i)
                    if (r[i] != 0) zero = false;
                if (zero) irreducible = false;
            }
        }
        if (irreducible) return f;
    }
    throw Error("no irreducible polynomial found");
}

} // namespace

GFTable::GFTable(unsigned q) : q_(q) {
    if (!prime_power(q, p_, k_) || q > (1u << 16))
        throw Error("GF(q): q must be a prime power <= 2^16, got " + std::to_string(q));
    if (k_ == 1 && !is_prime(p_)) throw Error("GF(q): internal factorization error");

    add_p_.assign(p_ * p_, 0);
    for (unsigned a = 0; a < p_; ++a)
        for (unsigned b = 0; b < p_; ++b) add_p_[a * p_ + b] = (a + b) % p_;

    std::vector<unsigned> f;
    if (k_ > 1) f = find_irreducible(p_, k_);

    auto mul_codes = [&](unsigned a, unsigned b) -> unsigned {
        if (k_ == 1) return (a * b) % p_;
        return poly_mul_mod(a, b, p_, k_, f);
    };

    // Find a primitive element: order must be exactly q-1.
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (unsigned g = 1; g < q_; ++g) {
        unsigned x = 1;
        unsigned order = 0;
        do {
            x = mul_codes(x, g);
            ++order;
        } while (x != 1);
        if (order == q_ - 1) {
            x = 1;
            for (unsigned i = 0; i < q_ - 1; ++i) {
                exp_[i] = x;
                log_[x] = i;
                x = mul_codes(x, g);
            }
            return;
        }
    }
    throw Error("GF(q): no primitive element found");
}

gf_t GFTable::add(gf_t a, gf_t b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) return add_p_[a * p_ + b];
    gf_t result = 0, mult = 1;
    while (a || b) {
        result += add_p_[(a % p_) * p_ + (b % p_)] * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return result;
}

gf_t GFTable::neg(gf_t a) const {
    if (p_ == 2) return a;
    gf_t result = 0, mult = 1;
    while (a) {
        unsigned d = a % p_;
        result += (d ? p_ - d : 0) * mult;
        a /= p_;
        mult *= p_;
    }
    return result;
}

gf_t GFTable::pow(gf_t a, long e) const {
    if (a == 0) {
        if (e < 0) throw DivisionByZero("0^negative in GF(q)");
        return e == 0 ? 1 : 0;
    }
    long m = static_cast<long>(q_ - 1);
    long le = ((static_cast<long>(log_[a]) * (e % m)) % m + m) % m;
    return exp_[static_cast<std::size_t>(le)];
}

gf_t GFTable::from_int(long n) const {
    if (n >= 0 && static_cast<unsigned long>(n) < q_) return static_cast<gf_t>(n);
    long m = n % static_cast<long>(p_);
    if (m < 0) m += p_;
    return static_cast<gf_t>(m);
}

GFPtr GFTable::get(unsigned q) {
    static std::mutex mu;
    static std::map<unsigned, GFPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const GFTable>(q);
    cache.emplace(q, table);
    return table;
}

} // namespace hlf
