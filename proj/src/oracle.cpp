#include "hlf/oracle.hpp"

#include <algorithm>
#include <map>

namespace hlf {

namespace {

// enumerate the residue offsets r in t1^delta O_E / t1^c O_E
std::vector<EElem> stratum_offsets(const FieldRef& f, int delta, int c) {
    std::vector<EElem> out;
    std::vector<gf_t> digits(static_cast<std::size_t>(c - delta), 0);
    while (true) {
        out.push_back(EElem::from_coeffs(f, delta, digits));
        bool carried = false;
        for (auto& d : digits) {
            if (d + 1 < f->q) {
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

// cells of one distinguished box at the chosen per-coordinate level
void append_box_cells(const DistBox& box, const std::vector<int>& level,
                      std::vector<std::vector<FElem>>& cells, std::size_t budget) {
    unsigned dim = box.dim();
    const FieldRef& f = box.parts[0].a.field();
    std::vector<std::vector<EElem>> per_coord;
    std::size_t total = 1;
    for (unsigned i = 0; i < dim; ++i) {
        per_coord.push_back(stratum_offsets(f, box.parts[i].delta, level[i]));
        total *= per_coord.back().size();
        if (total > budget) throw BudgetExceeded("oracle cell count exceeds budget");
    }
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        std::vector<FElem> center;
        center.reserve(dim);
        for (unsigned i = 0; i < dim; ++i)
            center.push_back(box.parts[i].a +
                             FElem::monomial(box.parts[i].gamma, per_coord[i][idx[i]]));
        cells.push_back(std::move(center));
        if (cells.size() > budget) throw BudgetExceeded("oracle cell count exceeds budget");
        unsigned k = 0;
        for (; k < dim; ++k) {
            if (++idx[k] < per_coord[k].size()) break;
            idx[k] = 0;
        }
        if (k == dim) break;
    }
}

// canonical cell keys to deduplicate across source boxes
std::string cell_key(const std::vector<FElem>& center, const std::vector<int>& gamma,
                     const std::vector<int>& level) {
    std::string s;
    for (std::size_t i = 0; i < center.size(); ++i) {
        DistinguishedSet d(center[i], gamma[i], level[i]);
        s += d.a.str();
        s += "|";
    }
    return s;
}

// a random point of the cell center + t2^gamma t1^c O (per coordinate)
std::vector<FElem> random_cell_point(const std::vector<FElem>& center,
                                     const std::vector<int>& gamma, const std::vector<int>& level,
                                     Rng& rng) {
    std::vector<FElem> p;
    p.reserve(center.size());
    const FieldRef& f = center[0].field();
    for (std::size_t i = 0; i < center.size(); ++i)
        p.push_back(center[i] + random_in_dist(f, rng, gamma[i], level[i]));
    return p;
}

} // namespace

LaurentX oracle_measure(const SetExpr& expr, unsigned q, FieldRef f, const OracleOptions& opt) {
    std::vector<DistBox> leaves = set_expr_leaves(expr);
    if (leaves.empty()) return LaurentX::zero();
    unsigned dim = leaves[0].dim();
    for (const auto& b : leaves)
        if (b.dim() != dim) throw DimensionMismatch("oracle operand dimensions");

    // oracle class: per coordinate, a single t2-stratum across all leaves
    std::vector<int> gamma(dim), level(dim);
    for (unsigned i = 0; i < dim; ++i) {
        gamma[i] = leaves[0].parts[i].gamma;
        level[i] = leaves[0].parts[i].delta;
    }
    for (const auto& b : leaves)
        for (unsigned i = 0; i < dim; ++i) {
            if (b.parts[i].gamma != gamma[i])
                throw UnsupportedByOracle("mixed t2-strata in one coordinate");
            level[i] = std::max(level[i], b.parts[i].delta);
        }

    std::map<std::string, std::vector<FElem>> cells;
    for (const auto& b : leaves) {
        std::vector<std::vector<FElem>> local;
        append_box_cells(b, level, local, opt.cell_budget);
        for (auto& c : local) {
            std::string key = cell_key(c, gamma, level);
            cells.emplace(std::move(key), std::move(c));
            if (cells.size() > opt.cell_budget)
                throw BudgetExceeded("oracle cell count exceeds budget");
        }
    }

    Rng rng(opt.seed);
    Monomial munit{0, 0};
    for (unsigned i = 0; i < dim; ++i) munit = munit * Monomial{gamma[i], level[i]};
    LaurentX unit = munit.to_laurent(q);
    (void)f;
    Int count = 0;
    for (const auto& [key, center] : cells) {
        bool inside = expr.contains(center);
        for (int s = 0; s < opt.constancy_samples; ++s) {
            auto p = random_cell_point(center, gamma, level, rng);
            if (expr.contains(p) != inside)
                throw UnsupportedByOracle("indicator not constant on oracle cells");
        }
        if (inside) count += 1;
    }
    return unit.scaled(Coeff(Rat(count)));
}

LaurentX oracle_integral(const SimpleFn& fn, const OracleOptions& opt) {
    const auto& terms = fn.terms();
    if (terms.empty()) return LaurentX::zero();
    unsigned dim = fn.dim();
    const FieldRef& f = fn.field();

    // per coordinate: single stratum across terms; refinement from the
    // E-level ball levels
    std::vector<int> gamma(dim), level(dim);
    for (unsigned i = 0; i < dim; ++i) {
        gamma[i] = terms[0].gamma[i];
        level[i] = 0;
    }
    for (const auto& t : terms) {
        if (t.g.is_gl()) throw UnsupportedByOracle("GL-class profiles are outside the oracle");
        for (unsigned i = 0; i < dim; ++i) {
            if (t.gamma[i] != gamma[i])
                throw UnsupportedByOracle("mixed t2-strata in one coordinate");
            for (const auto& gterm : t.g.terms())
                level[i] = std::max(level[i], gterm.box.balls[i].k);
        }
    }

    // cells: supports are a + t2^gamma p^{-1}(E-box); enumerate the
    // E-box residues at the refinement level per coordinate
    std::map<std::string, std::vector<FElem>> cells;
    for (const auto& t : terms) {
        for (const auto& gterm : t.g.terms()) {
            std::vector<std::vector<EElem>> per_coord;
            std::size_t total = 1;
            for (unsigned i = 0; i < dim; ++i) {
                std::vector<EElem> offs;
                const EBall& ball = gterm.box.balls[i];
                for (const auto& r : stratum_offsets(f, ball.k, level[i]))
                    offs.push_back(ball.a + r);
                total *= offs.size();
                if (total > opt.cell_budget)
                    throw BudgetExceeded("oracle cell count exceeds budget");
                per_coord.push_back(std::move(offs));
            }
            std::vector<std::size_t> idx(dim, 0);
            while (true) {
                std::vector<FElem> center;
                center.reserve(dim);
                for (unsigned i = 0; i < dim; ++i)
                    center.push_back(t.a[i] + FElem::monomial(gamma[i], per_coord[i][idx[i]]));
                std::string key = cell_key(center, gamma, level);
                cells.emplace(std::move(key), std::move(center));
                if (cells.size() > opt.cell_budget)
                    throw BudgetExceeded("oracle cell count exceeds budget");
                unsigned k = 0;
                for (; k < dim; ++k) {
                    if (++idx[k] < per_coord[k].size()) break;
                    idx[k] = 0;
                }
                if (k == dim) break;
            }
        }
    }

    Rng rng(opt.seed);
    Monomial m{0, 0};
    for (unsigned i = 0; i < dim; ++i) m = m * Monomial{gamma[i], level[i]};
    LaurentX unit = m.to_laurent(f->q);

    LaurentX total;
    for (const auto& [key, center] : cells) {
        LaurentX v = fn.eval(center);
        for (int s = 0; s < opt.constancy_samples; ++s) {
            auto p = random_cell_point(center, gamma, level, rng);
            if (fn.eval(p) != v)
                throw UnsupportedByOracle("integrand not constant on oracle cells");
        }
        total += v * unit;
    }
    return total;
}

} // namespace hlf
