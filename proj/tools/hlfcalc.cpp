// hlfcalc: batch calculator for exact measures, integrals, convolution
// products, and subgroup computations over F = F_q((t1))((t2)).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hlf/literals.hpp"

namespace {

int emit(const hlf::JobResult& r, const std::string& format) {
    try {
        std::cout << hlf::render_result(r, format);
    } catch (const hlf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return r.exit_code;
}

hlf::json load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hlf::ParseError("cannot open job file: " + path, 0);
    hlf::json j;
    try {
        in >> j;
    } catch (const hlf::json::exception& e) {
        throw hlf::ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    return j;
}

// apply flag overrides shared by all subcommands
struct CommonFlags {
    unsigned q = 0, n = 0, level = 0;
    int t1_prec = 0, t2_prec = 0;
    std::uint64_t budget = 0, seed = 0;
    std::string format = "text";
    bool parallel = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--q", q, "residue field size");
        cmd->add_option("--n", n, "matrix dimension");
        cmd->add_option("--t1-prec", t1_prec, "t1 truncation window");
        cmd->add_option("--t2-prec", t2_prec, "t2 truncation window");
        cmd->add_option("--level", level, "congruence level m");
        cmd->add_option("--budget", budget, "enumeration budget");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--format", format, "output format: json|text|csv")
            ->check(CLI::IsMember({"json", "text", "csv"}));
        cmd->add_flag("--parallel", parallel, "parallel verification");
    }

    void apply(hlf::json& job) const {
        if (q) job["q"] = q;
        if (n) job["n"] = n;
        if (t1_prec) job["t1-prec"] = t1_prec;
        if (t2_prec) job["t2-prec"] = t2_prec;
        if (level) job["level"] = level;
        if (budget) job["budget"] = budget;
        if (seed) job["seed"] = seed;
        if (parallel) job["parallel"] = true;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation on two-dimensional local fields"};
    app.require_subcommand(1);

    std::string job_path, set_literal, suite;
    int cases = 0;

    CommonFlags flags;

    auto* run = app.add_subcommand("run", "run a JSON job file");
    run->add_option("job", job_path, "job file")->required();
    flags.add_to(run);

    auto* measure = app.add_subcommand("measure", "measure of a set expression");
    measure->add_option("--job", job_path, "job file with a set expression");
    measure->add_option("--set", set_literal, "set literal, e.g. 'dist(0; 2, 3)'");
    flags.add_to(measure);

    auto* oracle = app.add_subcommand("oracle", "independent counting oracle");
    oracle->add_option("--job", job_path, "job file");
    oracle->add_option("--set", set_literal, "set literal");
    flags.add_to(oracle);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite, "suite name or 'all'")->required();
    verify->add_option("--cases", cases, "case count override");
    flags.add_to(verify);

    for (const char* name : {"integrate", "convolve", "hecke-table", "stabilizer", "bicoset"}) {
        auto* cmd = app.add_subcommand(name, std::string("run a ") + name + " job");
        cmd->add_option("--job", job_path, "job file")->required();
        flags.add_to(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        hlf::json job;
        std::string op = app.get_subcommands()[0]->get_name();
        if (!job_path.empty()) {
            job = load_job(job_path);
            if (op != "run") job["op"] = op;
        } else if (op == "measure" || op == "oracle") {
            if (set_literal.empty())
                throw hlf::ParseError("measure/oracle needs --set or --job", 0);
            job["op"] = op;
            job["set"] = set_literal;
        } else if (op == "verify") {
            job["op"] = "verify";
            job["suite"] = suite;
            if (cases > 0) job["cases"] = cases;
        } else {
            throw hlf::ParseError("missing --job file", 0);
        }
        flags.apply(job);
        return emit(hlf::run_job(job), flags.format);
    } catch (const hlf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hlf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
