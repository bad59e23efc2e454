#include <doctest.h>

#include "hlf/literals.hpp"

using namespace hlf;

TEST_CASE("set literals parse") {
    auto f = FieldConfig::make(2, 10, 10);
    DistinguishedSet d = parse_dist_literal(f, "dist(t2^2*(t1); 2, 3)");
    CHECK(d.gamma == 2);
    CHECK(d.delta == 3);
    CHECK(d.a.eq_exact(fe_parse(f, "t2^2*(t1)")));

    Ball b = parse_ball_literal(f, "ball(0; 1)");
    CHECK(b.gamma == 1);
    CHECK(b.a.provably_zero());

    DistBox box = parse_distbox_literal(f, "box[dist(0; 0, 0), dist(1; 1, 0)]");
    CHECK(box.dim() == 2);

    CHECK_THROWS_AS(parse_dist_literal(f, "dist(0)"), ParseError);
    CHECK_THROWS_AS(parse_dist_literal(f, "nope(0; 1, 2)"), ParseError);
}

TEST_CASE("measure job") {
    json job = {{"op", "measure"}, {"q", 2}, {"set", "dist(0; 2, 3)"}};
    JobResult r = run_job(job);
    CHECK(r.exit_code == 0);
    CHECK(r.document.at("ok") == true);
    CHECK(r.document.at("result") == "(1/8)*X^2");
    CHECK(render_result(r, "text") == "(1/8)*X^2\n");

    // determinism: byte-identical reruns
    JobResult r2 = run_job(job);
    CHECK(r.document.dump() == r2.document.dump());
}

TEST_CASE("oracle job and unsupported operands") {
    json job = {{"op", "oracle"}, {"q", 5}, {"set", "dist(0; 1, 0)"}};
    JobResult r = run_job(job);
    CHECK(r.document.at("result") == "X");

    json mixed = {{"op", "oracle"},
                  {"q", 2},
                  {"set", json{{"diff", json::array({"dist(0; 0, 0)", "dist(0; 1, 0)"})}}}};
    JobResult rm = run_job(mixed);
    CHECK(rm.exit_code == 2);
    CHECK(rm.document.at("ok") == false);
}

TEST_CASE("convolve job: e * e at q = 2") {
    json units_profile = "units";
    json e = {{"kind", "res0"}, {"level", 1}, {"profile", units_profile}};
    json job = {{"op", "convolve"}, {"q", 2}, {"n", 1}, {"f1", e}, {"f2", e}};
    JobResult r = run_job(job);
    REQUIRE(r.exit_code == 0);
    const json& terms = r.document.at("result").at("terms");
    REQUIRE(terms.size() == 1);
    // every class of the result profile carries the coefficient 1/2
    for (const auto& entry : terms.at(0).at("profile").at("values"))
        CHECK(entry.at(1) == "1/2");
}

TEST_CASE("integrate job") {
    json fn = {{"terms",
                json::array({json{{"a", json::array({"0"})},
                                  {"gamma", json::array({2})},
                                  {"shift", 0},
                                  {"g", json::array({json{{"coeff", "1"},
                                                          {"centers", json::array({"0"})},
                                                          {"levels", json::array({0})}}})}}})}};
    json job = {{"op", "integrate"}, {"space", "F"}, {"q", 2}, {"function", fn}};
    JobResult r = run_job(job);
    CHECK(r.document.at("result") == "X^2");
}

TEST_CASE("malformed input produces a position-annotated error") {
    json job = {{"op", "measure"}, {"q", 2}, {"set", "dist(t2^^; 1, 2)"}};
    JobResult r = run_job(job);
    CHECK(r.exit_code == 2);
    CHECK(r.document.at("ok") == false);
    std::string err = r.document.at("error").get<std::string>();
    CHECK(err.find("position") != std::string::npos);

    json bad = {{"q", 2}};
    CHECK(run_job(bad).exit_code == 2);
    json unknown = {{"op", "verify"}, {"suite", "no-such-suite"}};
    CHECK(run_job(unknown).exit_code == 2);
}

TEST_CASE("verify job") {
    json job = {{"op", "verify"}, {"suite", "measure-formula"}, {"seed", 5}};
    JobResult r = run_job(job);
    CHECK(r.exit_code == 0);
    CHECK(r.document.at("pass") == true);
    std::string text = render_result(r, "text");
    CHECK(text.find("PASS measure-formula") != std::string::npos);
    std::string csv = render_result(r, "csv");
    CHECK(csv.find("measure-formula,1") != std::string::npos);
}

TEST_CASE("stabilizer job serialization") {
    // kernel-class vector at n = 1, q = 2, m = 1
    json resmat = json::array({json::array({0})});
    json vec = {{"kind", "cong"},
                {"A", json::array({json::array({"1"})})},
                {"Gamma", json::array({json::array({1})})},
                {"level", 1},
                {"profile", json{{"values", json::array({json::array({resmat, "1"})})}}}};
    json job = {{"op", "stabilizer"}, {"q", 2}, {"n", 1}, {"vector", vec}};
    JobResult r = run_job(job);
    REQUIRE(r.exit_code == 0);
    const json& d = r.document.at("result");
    CHECK(d.at("kind") == "congruence");
    CHECK(d.at("level") == 1);
    CHECK(d.at("H") == json::array({resmat}));

    json bij = {{"op", "bicoset"}, {"q", 2}, {"n", 1}, {"vector", vec}, {"bound", 8}};
    JobResult rb = run_job(bij);
    REQUIRE(rb.exit_code == 0);
    CHECK(rb.document.at("result").size() == 1);
    CHECK(rb.document.at("result").at(0).at("coeff") == "1");
}
