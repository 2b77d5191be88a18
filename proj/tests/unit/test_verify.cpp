#include "doctest.h"
#include "helpers.hpp"

#include "bhk/core/blaschke.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/verify/runner.hpp"

#include <cmath>

using namespace bhk;
using namespace bhk::test;
using namespace bhk::verify;
using nlohmann::json;

namespace {

json doc_with(json objects, json tasks = json::array()) {
    return json{{"schema_version", "1.0"}, {"objects", std::move(objects)}, {"tasks", std::move(tasks)}};
}

std::string data(const std::string& name) { return std::string(BHK_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("number grammar") {
    CHECK(parse_number("3") == q(3));
    CHECK(parse_number("-2/5") == q(-2, 5));
    CHECK(parse_number("1/2+1/3i") == gi(1, 2, 1, 3));
    CHECK(parse_number("i") == gi(0, 1, 1, 1));
    CHECK(parse_number("-3/4i") == gi(0, 1, -3, 4));
    CHECK_THROWS_AS(parse_number("1/0"), SchemaError);
    CHECK_THROWS_AS(parse_number("abc"), SchemaError);
}

TEST_CASE("entry forms resolve to exact rational functions") {
    json objects = {
        {"p", {{"kind", "polynomial"}, {"coefficients", {"1", "0", "1/2"}}}},
        {"r", {{"kind", "rational"}, {"value", {{"num", "p"}, {"den", {{"sum", {"z", "-3"}}}}}}}},
        {"a", {{"kind", "rational"}, {"value", {{"adjoint", "z"}}}}},
        {"w", {{"kind", "rational"}, {"value", {{"power", {"z", -2}}}}}},
        {"b", {{"kind", "blaschke"}, {"zeros", {{"1/2", 2}}}}},
        {"m", {{"kind", "matrix"}, {"rows", json::array({json::array({"r", "b"}), json::array({"a", {{"product", {"2", "z"}}}})})}}},
        {"mt", {{"kind", "matrix"}, {"adjoint", "m"}}},
        {"h", {{"kind", "matrix"}, {"hstack", {"m", "mt"}}}},
    };
    SymbolDocument d = SymbolDocument::parse(doc_with(objects));
    RationalFunction p = poly({1, 0}) + RationalFunction(q(1, 2)) * zf().pow(2);
    CHECK(d.matrix("r")(0, 0) == p / (zf() - RationalFunction(q(3))));
    CHECK(d.matrix("a")(0, 0) == zbar());
    CHECK(d.matrix("w")(0, 0) == zbar().pow(2));
    CHECK(d.matrix("b")(0, 0) == blaschke_factor(q(1, 2)).pow(2));
    RatMat m = d.matrix("m");
    CHECK(m(1, 1) == RationalFunction(q(2)) * zf());
    CHECK(d.matrix("mt") == circle_adjoint(m));
    CHECK(d.matrix("h").cols() == 4);
    CHECK(kind_name(d.object("b")) == "blaschke");
}

TEST_CASE("schema violations") {
    CHECK_THROWS_AS(SymbolDocument::parse(json{{"objects", json::object()}}), SchemaError);
    CHECK_THROWS_AS(SymbolDocument::parse(json{{"schema_version", "2.0"}}), SchemaError);
    json cyc = {{"a", {{"kind", "rational"}, {"value", "b"}}}, {"b", {{"kind", "rational"}, {"value", {{"product", {"a", "z"}}}}}}};
    CHECK_THROWS_WITH_AS(SymbolDocument::parse(doc_with(cyc)), doctest::Contains("cycle"), SchemaError);
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with({{"a", {{"kind", "rational"}, {"value", "missing"}}}})), SchemaError);
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with({{"1/2", {{"kind", "atom"}}}})), SchemaError);
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with({{"a", {{"kind", "widget"}}}})), SchemaError);
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with({{"m", {{"kind", "matrix"}, {"rows", json::array({json::array({"1", "2"}), json::array({"3"})})}}}})), SchemaError);

    json floats = {{"a", {{"kind", "rational"}, {"value", 0.5}}}};
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with(floats), ParseOptions{true}), SchemaError);
    CHECK(SymbolDocument::parse(doc_with(floats)).matrix("a")(0, 0) == RationalFunction(q(1, 2)));
    json extra = {{"a", {{"kind", "atom"}, {"color", "red"}}}};
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with(extra), ParseOptions{true}), SchemaError);
    CHECK_NOTHROW(SymbolDocument::parse(doc_with(extra)));
    json shadow = {{"t", {{"kind", "inner"}, {"matrix", {{"z"}}}, {"shadow", 0.25}}}};
    CHECK_NOTHROW(SymbolDocument::parse(doc_with(shadow), ParseOptions{true}));

    json tasks = json::array({{{"id", "x"}, {"op", "gcd"}, {"inputs", {"@y"}}}, {{"id", "y"}, {"op", "gcd"}, {"inputs", {"@x"}}}});
    CHECK_THROWS_WITH_AS(SymbolDocument::parse(doc_with(json::object(), tasks)), doctest::Contains("cycle"), SchemaError);
    json unknown = json::array({{{"id", "x"}, {"op", "transmogrify"}}});
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with(json::object(), unknown)), SchemaError);
    json missing = json::array({{{"id", "x"}, {"op", "kernel"}}});
    CHECK_THROWS_AS(SymbolDocument::parse(doc_with(json::object(), missing)), SchemaError);
}

TEST_CASE("a Blaschke zero on the circle is a domain error naming the zero") {
    json objects = {{"b", {{"kind", "blaschke"}, {"zeros", {"3/5+4/5i"}}}}};
    CHECK_THROWS_WITH_AS(SymbolDocument::parse(doc_with(objects)), doctest::Contains("3/5+4/5i"), DomainError);
}

TEST_CASE("tasks run in dependency order") {
    json objects = {{"t", {{"kind", "blaschke"}, {"zeros", {"0"}}}}, {"s", {{"kind", "blaschke"}, {"zeros", {"1/2"}}}}};
    json tasks = json::array({{{"id", "audit"}, {"op", "audit"}, {"of", "@g"}}, {{"id", "g"}, {"op", "gcd"}, {"inputs", {"t", "s"}}}});
    SymbolDocument d = SymbolDocument::parse(doc_with(objects, tasks));
    REQUIRE(d.tasks().size() == 2);
    CHECK(d.tasks()[0].id == "g");
    RunReport rep = run_document(d);
    CHECK(rep.exit_code() == kExitPass);
    CHECK(rep.tasks[1].op == "audit");
    CHECK(rep.tasks[1].status == "pass");
}

TEST_CASE("empty task list") {
    RunReport rep = run_document(SymbolDocument::load(data("empty.json")));
    CHECK(rep.tasks.empty());
    CHECK(rep.exit_code() == kExitPass);
    CHECK(rep.to_json()["tasks"].empty());
}

TEST_CASE("sample documents pass and reports are deterministic") {
    for (const char* name : {"two_point.json", "lattice.json", "backward_shift.json", "numeric.json"}) {
        CAPTURE(name);
        SymbolDocument d = SymbolDocument::load(data(name), ParseOptions{true});
        RunReport a = run_document(d), b = run_document(d);
        CHECK(a.exit_code() == kExitPass);
        CHECK(a.to_json().dump() == b.to_json().dump());
        CHECK(a.to_text() == b.to_text());
    }
    RunReport rep = run_document(SymbolDocument::load(data("two_point.json")));
    CHECK(rep.to_text().find("matches two-point reference inner up to right unitary: true") != std::string::npos);
}

TEST_CASE("failed expectations and task errors map to exit codes") {
    json objects = {{"f", {{"kind", "matrix"}, {"rows", json::array({json::array({"1"}), json::array({"z"})})}}},
                    {"bad", {{"kind", "matrix"}, {"rows", {{{{"num", "1"}, {"den", {{"sum", {"z", "-1"}}}}}}}}}}};
    json tasks = json::array({{{"id", "wrong"}, {"op", "sstar"}, {"generators", {"f"}}, {"expect", {{"dim", 3}}}}});
    RunReport rep = run_document(SymbolDocument::parse(doc_with(objects, tasks)));
    CHECK(rep.tasks[0].status == "fail");
    CHECK(rep.exit_code() == kExitFail);

    json pole = json::array({{{"id", "k"}, {"op", "kernel"}, {"symbol", "bad"}}});
    RunReport rp = run_document(SymbolDocument::parse(doc_with(objects, pole)));
    CHECK(rp.tasks[0].status == "domain-error");
    CHECK(rp.exit_code() == kExitDomain);
}

TEST_CASE("numeric cross-check examples") {
    RationalFunction a = RationalFunction(q(1, 2)) * zf() - RationalFunction(q(1, 2));
    RationalFunction b = RationalFunction(q(1, 2)) * zf() + RationalFunction(q(1, 2));
    ResidualSummary s = crosscheck_inner(MatrixInner::from_explicit(RatMat{{a, b}, {b, a}}), 256, 5);
    REQUIRE(!s.residuals.empty());
    CHECK(s.residuals[0].value < 1e-10);
    CHECK(s.pass());

    auto zp = [](int k) { return zf().pow(k); };
    RatMat f{{RationalFunction(1), RationalFunction(1), zp(1), zp(2)},
             {RationalFunction(1), zp(1), zp(2), zp(3)},
             {RationalFunction(1), RationalFunction(0), RationalFunction(0), RationalFunction(0)}};
    for (const auto& z : circle_samples(5, 11)) CHECK(svd_rank(evaluate(f, z)) == 2);

    RationalFunction geometric = RationalFunction(1) / (RationalFunction(1) - RationalFunction(q(1, 2)) * zf());
    auto c = fft_coefficients(geometric, 8, 1024);
    double err = 0.0;
    for (int k = -8; k <= 8; ++k) {
        const double want = k < 0 ? 0.0 : std::pow(0.5, k);
        err = std::max(err, std::abs(c[static_cast<std::size_t>(k + 8)] - want));
    }
    CHECK(err < 1e-8);

    auto p1 = circle_samples(4, 3), p2 = circle_samples(4, 3);
    CHECK(p1 == p2);
    for (const auto& z : p1) CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);
}
