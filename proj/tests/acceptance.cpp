// Acceptance suite: one pass/fail line per criterion, all checks exact
// (tolerance zero). Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "hlf/verify.hpp"

namespace {

struct Criterion {
    int number;
    const char* description;
    const char* suite;
    int cases; // 0 = suite default
    double limit_seconds;
};

const Criterion kCriteria[] = {
    {1, "measure formula mu(t2^i t1^j O) = q^-j X^i on [-3,3]^2, q in {2,3}",
     "measure-formula", 0, 1.0},
    {2, "finite additivity of residue partitions and 100 randomized refinements",
     "additivity", 100, 5.0},
    {3, "translation and scaling invariance on 200 random cases each", "invariance", 200, 0},
    {4, "Fubini at n = 2 and n = 3, all orders, 50 random box functions per n", "fubini", 50,
     30.0},
    {5, "linear change of variables for 50 random monomial/diagonal matrices",
     "change-of-variables", 50, 0},
    {6, "GL_n bridge: integral of g^0 over GL_n(F) equals the GL_n(E) integral, n in {1,2}",
     "gl-bridge", 0, 0},
    {7, "closure of basic-function products on 100 random pairs with 10^3-point sampling",
     "basic-closure", 100, 120.0},
    {8, "worked GL_1 convolutions: e*e = (1-q^-1)e and the graded law", "gl1-convolution", 20,
     1.0},
    {9, "convolution associativity on random triples (n = 1 level <= 2; n = 2 level 1)",
     "associativity", 20, 600.0},
    {10, "representative independence of class values, >= 10 representatives per class",
     "tau-independence", 20, 0},
    {11, "algebra action: pi(f1*f2) v = pi(f1) pi(f2) v on 20 random triples",
     "algebra-action", 20, 0},
    {12, "stabilizer closed forms at level m = 1, n in {1,2}, and triviality for A != I",
     "stabilizer", 0, 0},
    {13, "engine/oracle agreement on 100 random distinguished measures and integrals",
     "oracle-equivalence", 100, 0},
    {14, "double-coset reconstruction agrees pointwise on sampled points", "double-coset", 0, 0},
};

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    bool all_pass = true;
    for (const Criterion& c : kCriteria) {
        hlf::VerifyOptions opt;
        opt.seed = 20240901u + static_cast<unsigned>(c.number);
        opt.cases = c.cases;
        auto start = clock::now();
        hlf::PropertyResult r;
        std::string error;
        try {
            r = hlf::run_verify(c.suite, opt);
        } catch (const hlf::Error& e) {
            r.pass = false;
            error = e.what();
        }
        double secs = std::chrono::duration<double>(clock::now() - start).count();
        bool in_time = c.limit_seconds <= 0 || secs <= c.limit_seconds;
        bool pass = r.pass && in_time;
        all_pass = all_pass && pass;
        std::printf("%s criterion-%d: %s (%d checks, %.2fs%s)\n", pass ? "PASS" : "FAIL",
                    c.number, c.description, r.cases_run, secs,
                    in_time ? "" : ", over time limit");
        if (!pass && !r.detail.empty()) std::printf("      %s\n", r.detail.c_str());
        if (!pass && !error.empty()) std::printf("      error: %s\n", error.c_str());
    }
    return all_pass ? 0 : 1;
}
