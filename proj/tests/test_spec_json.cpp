#include "doctest.h"

#include "vdlab/catalog.hpp"
#include "vdlab/spec_json.hpp"

#include <cmath>

using namespace vdlab;

TEST_SUITE("spec_json") {

TEST_CASE("exponent documents")
{
    LaplaceExponent b = exponent_from_json(Json::parse(R"({"catalog": "bessel", "params": {"nu": 1}})"));
    CHECK(b(2.0) == doctest::Approx(6.0));

    LaplaceExponent a = exponent_from_json(
        Json::parse(R"({"kappa": 0.5, "a": 1, "sigma2": 0, "measure": {"atoms": [[1, 1]]}})"));
    CHECK(a(1.0) == doctest::Approx(-0.5 + 1.0 - (1.0 - std::exp(-1.0))));

    LaplaceExponent g = exponent_from_json(Json::parse(R"({"kappa": 0.09, "a": 0, "sigma2": 2})"));
    CHECK(g.theta() == doctest::Approx(0.3));

    LaplaceExponent ts = exponent_from_json(Json::parse(
        R"({"kappa": 0, "a": 0, "sigma2": 1, "measure": {"density": "tempered_stable", "c": 1, "alpha": 0.5, "lambda": 1}})"));
    // int (1 - e^{-ur} - ur 1{r<1}) mu(dr) is finite and Psi stays convex
    CHECK(std::isfinite(ts(2.0)));
    CHECK(ts(2.0) - 2 * ts(1.0) + ts(0.0) > 0.0);

    Json round = exponent_to_json(b);
    CHECK(round["name"] == "bessel");
    CHECK(round["params"]["nu"] == 1.0);
}

TEST_CASE("malformed exponent documents")
{
    CHECK_THROWS_AS(exponent_from_json(Json::parse(R"({"catalog": "nope"})")), SpecError);
    CHECK_THROWS_AS(exponent_from_json(Json::parse(R"({"catalog": "bessel", "params": {"mu": 1}})")), SpecError);
    CHECK_THROWS_AS(exponent_from_json(Json::parse(R"({"catalog": "bessel", "params": {"nu": -3}})")), SpecError);
    CHECK_THROWS_AS(exponent_from_json(Json::parse(R"({"kappa": "x"})")), SpecError);
    CHECK_THROWS_AS(exponent_from_json(Json::parse(R"([1, 2])")), SpecError);
    CHECK_THROWS_AS(
        exponent_from_json(Json::parse(R"({"kappa": 0, "a": 1, "sigma2": 1, "measure": {"density": "weird"}})")),
        SpecError);
}

TEST_CASE("LP, Ising and density documents")
{
    LPEvenFunction f = lp_from_json(Json::parse(R"({"c2": 0.5, "zeros": [1, 2], "tail": {"kappa": 3, "p": 1, "shift": 0}})"));
    CHECK(f.c2 == 0.5);
    CHECK(f.zeros.size() == 2);
    REQUIRE(f.tail.has_value());
    CHECK(f.zero(3) == doctest::Approx(9.0));
    CHECK_THROWS_AS(lp_from_json(Json::parse(R"({"c2": -1})")), SpecError);

    IsingModel m = ising_from_json(Json::parse(R"({"N": 2, "J": [[0, 0.5], [0.5, 0]], "lambda": 1})"));
    CHECK(m.N == 2);
    CHECK(m.lambda == std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(ising_from_json(Json::parse(R"({"N": 2, "J": [[0]]})")), SpecError);

    SymmetricDensity g = symmetric_density_from_json(Json::parse(R"({"density": "gaussian", "sigma": 2})"));
    CHECK(g.f(0.0) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0 * 3.14159265358979323846))));
    SymmetricDensity u = symmetric_density_from_json(Json::parse(R"({"density": "uniform", "half_width": 2})"));
    CHECK(u.support == 2.0);
    CHECK_THROWS_AS(symmetric_density_from_json(Json::parse(R"({"density": "cauchy"})")), SpecError);
}

TEST_CASE("inline and file arguments")
{
    CHECK(load_json_argument(R"({"a": 1})")["a"] == 1);
    CHECK_THROWS_AS(load_json_argument("/nonexistent/file.json"), SpecError);
}

TEST_CASE("report serialization")
{
    EntirePair p(bessel(0.0));
    Json z = to_json(zero_report(p, 3.0));
    CHECK(z["report"] == "zeros");
    CHECK(z["disk_count"] == 4);
    CHECK(z["classification"] == "AllRealUpToR");

    IsingModel one{1, {{0.0}}, {1.0}};
    CHECK(to_json(leeyang_check(one))["report"] == "leeyang");
}

TEST_CASE("schema validator")
{
    Json schema = Json::parse(R"({
        "type": "object",
        "required": ["n", "tags"],
        "additionalProperties": false,
        "properties": {
            "n": {"type": "integer", "minimum": 0, "maximum": 10},
            "kind": {"enum": ["a", "b"]},
            "tags": {"type": "array", "minItems": 1, "items": {"type": "string"}}
        }
    })");
    CHECK(validate_against_schema(Json::parse(R"({"n": 3, "tags": ["x"]})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 11, "tags": ["x"]})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 1.5, "tags": ["x"]})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 1, "tags": []})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 1, "tags": [2]})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"tags": ["x"]})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 1, "tags": ["x"], "extra": 0})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 1, "tags": ["x"], "kind": "c"})"), schema).empty());
    auto errs = validate_against_schema(Json::parse(R"({"n": 1, "tags": [2]})"), schema);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("/tags/0") != std::string::npos);
}

}
