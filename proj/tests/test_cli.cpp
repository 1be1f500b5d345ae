#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "witt/cli.hpp"

using namespace witt;

namespace {
struct Run {
    int code;
    std::string out, err;
};
Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("parsing round-trips") {
    CHECK(parse_field("Q").is_rational());
    CHECK(parse_field("sqrt:-3") == quadratic_field(-3));
    CHECK(parse_field("mu:n=12;H=[5]").degree() == 2);
    auto K = parse_field("mu:n=17;H=[4]");
    CHECK(parse_field(field_str(K)) == K);

    auto chi = parse_character("chi:n=7;d=3;img=[1]");
    CHECK(chi.order() == 3);
    CHECK(parse_character(character_str(chi)) == chi);
    CHECK(parse_character("sqrt:-3").order() == 2);

    auto a = parse_class("5:1/8,11:7/8");
    CHECK(a.index() == 8);
    CHECK(parse_class(class_str(a)).index() == 8);
    CHECK_THROWS_AS(parse_class("5:1/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_field("bogus:3"), std::invalid_argument);
}

TEST_CASE("height command JSON matches the documented example") {
    auto r = cli({"height", "--ext", "mu:n=17;H=[4]", "--p", "2", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["lower"] == 2);
    CHECK(j["upper"] == 2);
    CHECK(j["exact"] == true);
    // byte-identical re-serialization
    CHECK(json::parse(r.out).dump(2) + "\n" == r.out);
}

TEST_CASE("classify and decide verdicts") {
    auto r = cli({"classify", "--chi", "sqrt:-3", "--m", "4", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["verdict"] == "CaseII");
    CHECK(j["per_prime"][0]["p"] == 2);
    CHECK(j["per_prime"][0]["n_p"] == 2);
    CHECK(j["per_prime"][0]["b_p_upper"] == 1);

    auto r2 = cli({"decide", "--chi", "sqrt:-3", "--alpha", "5:1/8,11:7/8", "--json"});
    REQUIRE(r2.code == 0);
    auto j2 = json::parse(r2.out);
    CHECK(j2["verdict"] == "Noncrossed");
    CHECK(j2["witness"]["q1"] == 5);
    CHECK(j2["witness"]["q2"] == 11);
    CHECK(j2["fiber_index"] == 8);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 2);                                              // usage
    CHECK(cli({"height", "--ext", "nope", "--p", "2"}).code == 2);        // bad spec
    CHECK(cli({"height", "--ext", "mu:n=12;H=[]", "--p", "2"}).code == 2);  // non-cyclic Q(mu_12)/Q
    CHECK(cli({"classify", "--chi", "sqrt:-3", "--m", "0"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("deterministic output") {
    auto a1 = cli({"density", "--chi", "sqrt:-3", "--m", "4", "--x", "100", "--seed", "5", "--samples", "5000", "--json"});
    auto a2 = cli({"density", "--chi", "sqrt:-3", "--m", "4", "--x", "100", "--seed", "5", "--samples", "5000", "--json"});
    CHECK(a1.out == a2.out);
    auto j = json::parse(a1.out);
    CHECK(j["seed"] == 5);  // seeds echoed
}

TEST_CASE("primesets with sieve limit") {
    auto r = cli({"primesets", "--ext", "sqrt:-3", "--p", "2", "--n", "2", "--limit", "60", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["P1"]["modulus"] == 12);
    CHECK(j["P1"]["residues"] == json::array({5}));
    CHECK(j["P1"]["primes"] == json::array({5, 17, 29, 41, 53}));
    CHECK(j["P2"]["primes"] == json::array({11, 23, 47, 59}));
}

TEST_CASE("config file and environment override the sieve limit") {
    std::string path = "/tmp/witt_test_config";
    {
        std::ofstream f(path);
        f << "# test config\nsieve_limit=30\n";
    }
    auto r = cli({"primesets", "--ext", "sqrt:-3", "--p", "2", "--n", "2", "--config", path});
    CHECK(r.code == 0);

    setenv("WITT_SIEVE_LIMIT", "40", 1);
    auto r2 = cli({"primesets", "--ext", "sqrt:-3", "--p", "2", "--n", "2", "--json"});
    unsetenv("WITT_SIEVE_LIMIT");
    auto j = json::parse(r2.out);
    CHECK(j["input"]["limit"] == 40);
    CHECK(j["P1"]["primes"] == json::array({5, 17, 29}));
}

TEST_CASE("metacyclic and selftest subcommands") {
    auto r = cli({"metacyclic", "--verify", "iso", "--s", "2", "--t", "2", "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["pass"] == true);

    auto r2 = cli({"selftest", "--only", "primesets", "--json"});
    REQUIRE(r2.code == 0);
    auto j2 = json::parse(r2.out);
    CHECK(j2["pass"] == true);
    CHECK(j2["items"].size() == 2);
}

TEST_CASE("field JSON serialization round-trips") {
    for (auto spec : {"sqrt:-14", "mu:n=17;H=[4]", "Q"}) {
        auto K = parse_field(spec);
        CHECK(field_from_json(field_json(K)) == K);
    }
}

TEST_CASE("the acceptance harness reports failures") {
    AcceptanceOutcome out;
    out.expect(true, "fine");
    CHECK(out.pass);
    out.expect(false, "broken bound");
    CHECK_FALSE(out.pass);
    CHECK(out.detail == "broken bound");
}

TEST_CASE("local-data JSON schema fields") {
    auto r = cli({"local-data", "--ext", "sqrt:-3", "--q", "3", "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    for (auto key : {"place", "e", "f", "g", "frobenius_residue", "presentation"}) CHECK(j.contains(key));
    CHECK(j["presentation"]["e"] == 2);
    auto r2 = cli({"local-data", "--ext", "sqrt:-3", "--q", "inf", "--json"});
    CHECK(json::parse(r2.out)["e"] == 2);
}
