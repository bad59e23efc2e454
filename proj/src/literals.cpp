#include "hlf/literals.hpp"

#include <future>
#include <sstream>

namespace hlf {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\n");
    std::size_t e = s.find_last_not_of(" \t\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

// split on `sep` at paren/bracket depth zero
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(strip(cur));
    return parts;
}

std::string expect_wrapped(const std::string& text, const std::string& head, char open,
                           char close) {
    std::string t = strip(text);
    if (t.rfind(head, 0) != 0 || t.empty() || t.back() != close)
        throw ParseError("expected " + head + open + "..." + close + " literal", 0);
    return t.substr(head.size() + 1, t.size() - head.size() - 2);
}

int parse_int(const std::string& s) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(strip(s), &pos);
        if (pos != strip(s).size()) throw ParseError("trailing characters in integer", pos);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid integer literal: " + s, 0);
    }
}

} // namespace

DistinguishedSet parse_dist_literal(const FieldRef& f, const std::string& text) {
    std::string inner = expect_wrapped(text, "dist", '(', ')');
    auto halves = split_top(inner, ';');
    if (halves.size() != 2) throw ParseError("dist literal needs '<elem>; g, d'", 0);
    auto params = split_top(halves[1], ',');
    if (params.size() != 2) throw ParseError("dist literal needs two exponents", 0);
    return DistinguishedSet(fe_parse(f, halves[0]), parse_int(params[0]), parse_int(params[1]));
}

Ball parse_ball_literal(const FieldRef& f, const std::string& text) {
    std::string inner = expect_wrapped(text, "ball", '(', ')');
    auto halves = split_top(inner, ';');
    if (halves.size() != 2) throw ParseError("ball literal needs '<elem>; g'", 0);
    return Ball(fe_parse(f, halves[0]), parse_int(halves[1]));
}

DistBox parse_distbox_literal(const FieldRef& f, const std::string& text) {
    std::string t = strip(text);
    if (t.rfind("dist", 0) == 0) return DistBox{{parse_dist_literal(f, t)}};
    std::string inner = expect_wrapped(t, "box", '[', ']');
    DistBox box;
    for (const auto& part : split_top(inner, ',')) box.parts.push_back(parse_dist_literal(f, part));
    return box;
}

SetExpr parse_set_expr(const FieldRef& f, const json& spec) {
    if (spec.is_string()) return SetExpr::make_leaf(parse_distbox_literal(f, spec.get<std::string>()));
    if (spec.is_object()) {
        if (spec.contains("union")) {
            std::vector<SetExpr> parts;
            for (const auto& p : spec.at("union")) parts.push_back(parse_set_expr(f, p));
            return SetExpr::make_union(std::move(parts));
        }
        if (spec.contains("diff")) {
            const auto& arr = spec.at("diff");
            if (arr.empty()) throw ParseError("diff needs a base set", 0);
            SetExpr base = parse_set_expr(f, arr.at(0));
            std::vector<SetExpr> holes;
            for (std::size_t i = 1; i < arr.size(); ++i)
                holes.push_back(parse_set_expr(f, arr.at(i)));
            return SetExpr::make_diff(std::move(base), std::move(holes));
        }
    }
    throw ParseError("unrecognized set expression", 0);
}

MatF parse_matrix(const FieldRef& f, const json& spec) {
    if (!spec.is_array() || spec.empty()) throw ParseError("matrix literal must be a nested array", 0);
    unsigned n = static_cast<unsigned>(spec.size());
    MatF m(f, n);
    for (unsigned i = 0; i < n; ++i) {
        const auto& row = spec.at(i);
        if (!row.is_array() || row.size() != n)
            throw ParseError("matrix literal must be square", 0);
        for (unsigned j = 0; j < n; ++j)
            m.at(i, j) = fe_parse(f, row.at(j).get<std::string>());
    }
    return m;
}

IntMat parse_intmat(const json& spec) {
    if (!spec.is_array() || spec.empty()) throw ParseError("integer matrix must be a nested array", 0);
    unsigned n = static_cast<unsigned>(spec.size());
    IntMat m(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m.at(i, j) = spec.at(i).at(j).get<int>();
    return m;
}

ResMat parse_resmat(const ResRingPtr& ring, const json& spec) {
    unsigned n = static_cast<unsigned>(spec.size());
    ResMat m(ring, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            rcode_t code = spec.at(i).at(j).get<rcode_t>();
            if (code >= ring->size()) throw ParseError("residue code out of range", 0);
            m.at(i, j) = code;
        }
    return m;
}

BasicFn parse_basic_fn(const FieldRef& f, unsigned n, const json& spec,
                       unsigned default_level) {
    std::string kind = spec.at("kind").get<std::string>();
    unsigned level = spec.value("level", default_level);
    auto ring = ResRing::get(f->q, level);
    MatF a = spec.contains("A") ? parse_matrix(f, spec.at("A")) : MatF::identity(f, n);
    if (a.n() != n) throw ParseError("function base has wrong dimension", 0);

    ResFn g(ring, n);
    const json& profile = spec.at("profile");
    if (profile.is_string() && profile.get<std::string>() == "full") {
        g = ResFn::constant_full(ring, n, LaurentX::one());
    } else if (profile.is_string() && profile.get<std::string>() == "units") {
        g = ResFn::char_invertible(ring, n, MatEnumerator::kDefaultBudget);
    } else if (profile.is_object() && profile.contains("constant")) {
        g = ResFn::constant_full(ring, n, lx_parse(profile.at("constant").get<std::string>()));
    } else if (profile.is_object() && profile.contains("values")) {
        for (const auto& entry : profile.at("values")) {
            ResMat r = parse_resmat(ring, entry.at(0));
            g.set(r, lx_parse(entry.at(1).get<std::string>()));
        }
    } else {
        throw ParseError("unrecognized profile literal", 0);
    }

    if (kind == "res0") return BasicFn::res0(std::move(a), std::move(g));
    if (kind != "cong") throw ParseError("function kind must be cong or res0", 0);
    IntMat gamma = spec.contains("Gamma") ? parse_intmat(spec.at("Gamma"))
                                          : IntMat::constant(n, 1);
    return BasicFn::cong(std::move(a), std::move(gamma), std::move(g));
}

HeckeElem parse_hecke(const FieldRef& f, unsigned n, const json& spec,
                      unsigned default_level) {
    HeckeElem h(f, n);
    if (spec.is_object() && spec.contains("terms")) {
        for (const auto& t : spec.at("terms"))
            h.add_term(parse_basic_fn(f, n, t, default_level));
        return h;
    }
    h.add_term(parse_basic_fn(f, n, spec, default_level));
    return h;
}

namespace {

json render_matrix(const MatF& m) {
    json rows = json::array();
    for (unsigned i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (unsigned j = 0; j < m.n(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

json render_resmat(const ResMat& m) {
    json rows = json::array();
    for (unsigned i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (unsigned j = 0; j < m.n(); ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

json render_profile(const ResFn& g) {
    if (g.full()) return json{{"constant", lx_render(g.full_value())}};
    json values = json::array();
    for (const auto& [code, v] : g.values()) {
        ResMat r = ResMat::decode(g.ring(), g.n(), code);
        values.push_back(json::array({render_resmat(r), lx_render(v)}));
    }
    return json{{"values", values}};
}

} // namespace

json render_hecke(const HeckeElem& h) {
    json terms = json::array();
    for (const auto& t : h.terms()) {
        json entry;
        entry["kind"] = t.kind() == BasicFn::Kind::Cong ? "cong" : "res0";
        entry["A"] = render_matrix(t.base());
        if (t.kind() == BasicFn::Kind::Cong) {
            json g = json::array();
            for (unsigned i = 0; i < t.n(); ++i) {
                json row = json::array();
                for (unsigned j = 0; j < t.n(); ++j) row.push_back(t.gamma().at(i, j));
                g.push_back(row);
            }
            entry["Gamma"] = g;
        }
        entry["level"] = t.level();
        entry["profile"] = render_profile(t.profile());
        terms.push_back(entry);
    }
    return json{{"terms", terms}};
}

SimpleFn parse_simplefn(const FieldRef& f, unsigned n, const json& spec) {
    SimpleFn fn(f, n);
    for (const auto& t : spec.value("terms", json::array())) {
        std::vector<FElem> a;
        std::vector<int> gamma;
        for (const auto& e : t.at("a")) a.push_back(fe_parse(f, e.get<std::string>()));
        for (const auto& g : t.at("gamma")) gamma.push_back(g.get<int>());
        std::vector<EFunction::Term> eterms;
        for (const auto& bt : t.at("g")) {
            std::vector<EBall> balls;
            const auto& centers = bt.at("centers");
            const auto& levels = bt.at("levels");
            for (std::size_t i = 0; i < centers.size(); ++i)
                balls.emplace_back(ee_parse(f, centers.at(i).get<std::string>()),
                                   levels.at(i).get<int>());
            eterms.push_back(EFunction::Term{lx_parse(bt.at("coeff").get<std::string>()),
                                             EBox{std::move(balls)}});
        }
        EFunction g = EFunction::boxes(f, n, std::move(eterms));
        fn.add_term(SimpleTerm{std::move(g), std::move(a), std::move(gamma),
                               t.value("shift", 0)});
    }
    return fn;
}

json render_subgroup(const SubgroupDescriptor& d) {
    json out;
    switch (d.kind) {
        case SubgroupDescriptor::Kind::Trivial:
            out["kind"] = "trivial";
            out["n"] = d.n;
            return out;
        case SubgroupDescriptor::Kind::Congruence: {
            out["kind"] = "congruence";
            json g = json::array();
            for (unsigned i = 0; i < d.gamma.n(); ++i) {
                json row = json::array();
                for (unsigned j = 0; j < d.gamma.n(); ++j) row.push_back(d.gamma.at(i, j));
                g.push_back(row);
            }
            out["Gamma"] = g;
            break;
        }
        case SubgroupDescriptor::Kind::Residue:
            out["kind"] = "residue";
            break;
    }
    out["level"] = d.ring->level();
    json h = json::array();
    for (rcode_t code : d.h) h.push_back(render_resmat(ResMat::decode(d.ring, d.n, code)));
    out["H"] = h;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct JobContext {
    FieldRef f;
    unsigned n;
    unsigned level;
    rcode_t budget;
    std::uint64_t seed;
};

JobContext make_context(const json& job) {
    JobContext ctx;
    unsigned q = job.value("q", 2u);
    int t1p = job.value("t1-prec", 12);
    int t2p = job.value("t2-prec", 12);
    ctx.f = FieldConfig::make(q, t1p, t2p);
    ctx.n = job.value("n", 1u);
    ctx.level = job.value("level", 1u);
    ctx.budget = job.value("budget", static_cast<rcode_t>(MatEnumerator::kDefaultBudget));
    ctx.seed = job.value("seed", 1ull);
    return ctx;
}

json run_job_inner(const json& job, int& exit_code) {
    if (!job.contains("op")) throw ParseError("job needs an \"op\" field", 0);
    if (job.value("schema", 1) != 1) throw ParseError("unsupported job schema version", 0);
    std::string op = job.at("op").get<std::string>();
    JobContext ctx = make_context(job);
    json out;
    out["op"] = op;

    if (op == "measure") {
        SetExpr expr = parse_set_expr(ctx.f, job.at("set"));
        SetRingElem s = ring_normalize(expr, ctx.f->q);
        out["result"] = lx_render(dist_measure(s, ctx.f->q));
        out["components"] = s.components().size();
        return out;
    }
    if (op == "oracle") {
        OracleOptions oopt;
        oopt.seed = ctx.seed;
        if (job.contains("set")) {
            SetExpr expr = parse_set_expr(ctx.f, job.at("set"));
            out["result"] = lx_render(oracle_measure(expr, ctx.f->q, ctx.f, oopt));
            return out;
        }
        if (job.contains("function")) {
            SimpleFn fn = parse_simplefn(ctx.f, ctx.n, job.at("function"));
            out["result"] = lx_render(oracle_integral(fn, oopt));
            return out;
        }
        if (job.contains("coset") || job.contains("vector"))
            throw UnsupportedByOracle("congruence cosets are outside the oracle class");
        throw UnsupportedByOracle("oracle job needs a set or a simple function");
    }
    if (op == "integrate") {
        std::string space = job.value("space", "F");
        if (space == "GL_n") {
            HeckeElem h = parse_hecke(ctx.f, ctx.n, job.at("function"), ctx.level);
            out["result"] = lx_render(integrate_GLn(h, ctx.budget));
            return out;
        }
        unsigned n = space == "F" ? 1 : ctx.n;
        SimpleFn fn = parse_simplefn(ctx.f, n, job.at("function"));
        // finitely many point masses integrate to zero by definition and
        // are dropped with a diagnostic
        if (job.at("function").contains("points")) {
            std::size_t dropped = job.at("function").at("points").size();
            if (dropped > 0)
                out["diagnostics"] = "dropped " + std::to_string(dropped) +
                                     " point-mass term(s); points integrate to zero";
        }
        if (job.contains("order")) {
            std::vector<unsigned> order;
            for (const auto& o : job.at("order")) order.push_back(o.get<unsigned>());
            out["result"] = lx_render(integrate_Fn(fn, order));
        } else {
            out["result"] = lx_render(integrate_Fn(fn));
        }
        return out;
    }
    if (op == "convolve") {
        HeckeElem f1 = parse_hecke(ctx.f, ctx.n, job.at("f1"), ctx.level);
        HeckeElem f2 = parse_hecke(ctx.f, ctx.n, job.at("f2"), ctx.level);
        HeckeElem prod = convolve(f1, f2, ctx.budget);
        out["result"] = render_hecke(prod);
        return out;
    }
    if (op == "hecke-table") {
        std::vector<HeckeElem> basis;
        for (const auto& b : job.at("basis")) basis.push_back(parse_hecke(ctx.f, ctx.n, b, ctx.level));
        StructureTable table = hecke_structure_constants(basis, ctx.budget);
        json constants = json::array();
        for (std::size_t i = 0; i < table.size; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < table.size; ++j) {
                json cell = json::array();
                for (std::size_t k = 0; k < table.size; ++k)
                    cell.push_back(lx_render(table.constants[i][j][k]));
                row.push_back(cell);
            }
            constants.push_back(row);
        }
        out["result"] = constants;
        json rem = json::array();
        for (std::size_t i = 0; i < table.size; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < table.size; ++j)
                row.push_back(table.remainders[i][j].terms().empty() ? json(nullptr)
                                                                     : render_hecke(
                                                                           table.remainders[i][j]));
            rem.push_back(row);
        }
        out["remainders"] = rem;
        return out;
    }
    if (op == "stabilizer") {
        HeckeElem v = parse_hecke(ctx.f, ctx.n, job.at("vector"), ctx.level);
        out["result"] = render_subgroup(stabilizer(v, ctx.budget));
        return out;
    }
    if (op == "bicoset") {
        HeckeElem v = parse_hecke(ctx.f, ctx.n, job.at("vector"), ctx.level);
        SubgroupDescriptor m = bi_invariance_group(v, ctx.budget);
        auto dec = double_coset_decompose(v, m, job.value("bound", 8), ctx.budget);
        out["M"] = render_subgroup(m);
        json terms = json::array();
        for (const auto& t : dec.terms)
            terms.push_back(json{{"rep", render_matrix(t.rep)}, {"coeff", lx_render(t.coeff)}});
        out["result"] = terms;
        out["truncated"] = dec.truncated;
        return out;
    }
    if (op == "verify") {
        VerifyOptions vopt;
        vopt.seed = ctx.seed;
        vopt.cases = job.value("cases", 0);
        vopt.budget = ctx.budget;
        vopt.parallel = job.value("parallel", false);
        std::vector<std::string> suites;
        if (job.at("suite").get<std::string>() == "all")
            suites = verify_suite_names();
        else
            suites.push_back(job.at("suite").get<std::string>());

        std::vector<PropertyResult> results(suites.size());
        if (vopt.parallel && suites.size() > 1) {
            std::vector<std::future<PropertyResult>> futs;
            for (const auto& s : suites)
                futs.push_back(std::async(std::launch::async,
                                          [s, vopt] { return run_verify(s, vopt); }));
            for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
        } else {
            for (std::size_t i = 0; i < suites.size(); ++i) results[i] = run_verify(suites[i], vopt);
        }
        json arr = json::array();
        bool all_pass = true;
        for (const auto& r : results) {
            json entry{{"suite", r.suite},
                       {"pass", r.pass},
                       {"cases", r.cases_run},
                       {"detail", r.detail}};
            if (!r.pass) {
                // a replayable job reproducing this failure
                entry["replay"] = json{{"op", "verify"},
                                       {"suite", r.suite},
                                       {"seed", ctx.seed},
                                       {"cases", vopt.cases},
                                       {"budget", ctx.budget}};
            }
            arr.push_back(std::move(entry));
            all_pass = all_pass && r.pass;
        }
        out["result"] = arr;
        out["pass"] = all_pass;
        if (!all_pass) exit_code = 1;
        return out;
    }
    throw ParseError("unknown op: " + op, 0);
}

} // namespace

JobResult run_job(const json& job) {
    JobResult r;
    try {
        r.document = run_job_inner(job, r.exit_code);
        r.document["ok"] = true;
    } catch (const BudgetExceeded& e) {
        r.document = json{{"ok", false}, {"error", e.what()}, {"kind", "budget"}};
        r.exit_code = 3;
    } catch (const PrecisionExhausted& e) {
        r.document = json{{"ok", false}, {"error", e.what()}, {"kind", "precision"}};
        r.exit_code = 3;
    } catch (const UnknownSuite& e) {
        r.document = json{{"ok", false}, {"error", e.what()}, {"kind", "input"}};
        r.exit_code = 2;
    } catch (const UnsupportedByOracle& e) {
        r.document = json{{"ok", false}, {"error", e.what()}, {"kind", "oracle"}};
        r.exit_code = 2;
    } catch (const ParseError& e) {
        r.document = json{{"ok", false}, {"error", e.what()}, {"kind", "input"}};
        r.exit_code = 2;
    } catch (const json::exception& e) {
        r.document = json{{"ok", false}, {"error", e.what()}, {"kind", "input"}};
        r.exit_code = 2;
    } catch (const Error& e) {
        r.document = json{{"ok", false}, {"error", e.what()}, {"kind", "engine"}};
        r.exit_code = 2;
    }
    return r;
}

std::string render_result(const JobResult& r, const std::string& format) {
    if (format == "json") return r.document.dump(2) + "\n";
    if (format == "text") {
        std::ostringstream os;
        if (!r.document.value("ok", false)) {
            os << "error: " << r.document.value("error", "unknown") << "\n";
            return os.str();
        }
        const json& res = r.document.at("result");
        if (res.is_string()) {
            os << res.get<std::string>() << "\n";
        } else if (r.document["op"] == "verify") {
            for (const auto& s : res)
                os << (s["pass"].get<bool>() ? "PASS " : "FAIL ") << s["suite"].get<std::string>()
                   << " (" << s["cases"].get<int>() << " checks)"
                   << (s["pass"].get<bool>() ? "" : ": " + s["detail"].get<std::string>()) << "\n";
        } else {
            os << res.dump(2) << "\n";
        }
        return os.str();
    }
    if (format == "csv") {
        std::ostringstream os;
        const json& res = r.document.at("result");
        if (r.document["op"] == "hecke-table") {
            // rows: i,j,k,coefficient
            os << "i,j,k,coefficient\n";
            for (std::size_t i = 0; i < res.size(); ++i)
                for (std::size_t j = 0; j < res[i].size(); ++j)
                    for (std::size_t k = 0; k < res[i][j].size(); ++k)
                        os << i << "," << j << "," << k << ",\"" << res[i][j][k].get<std::string>()
                           << "\"\n";
            return os.str();
        }
        if (r.document["op"] == "verify") {
            os << "suite,pass,cases\n";
            for (const auto& s : res)
                os << s["suite"].get<std::string>() << "," << (s["pass"].get<bool>() ? 1 : 0)
                   << "," << s["cases"].get<int>() << "\n";
            return os.str();
        }
        os << "result\n\"" << (res.is_string() ? res.get<std::string>() : res.dump()) << "\"\n";
        return os.str();
    }
    throw ParseError("unknown format: " + format, 0);
}

} // namespace hlf
