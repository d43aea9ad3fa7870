#include <doctest.h>

#include <sstream>

#include "maxmod/classify.hpp"
#include "maxmod/error.hpp"
#include "maxmod/io.hpp"
#include "maxmod/report.hpp"

using namespace maxmod;

namespace {

const Complex I{0.0, 1.0};

TraceResult small_trace(const Polynomial& p, int n = 40) {
    TraceConfig cfg;
    cfg.n_radii = n;
    cfg.r_min = std::max(cfg.r_min, 2 * numerical_floor(hayman_form(p)));
    return trace(p, cfg);
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("format_double") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(-2.5) == "-2.5");
}

TEST_CASE("canonical JSON") {
    Json j = {{"b", 1}, {"a", {1.0, 2.5, std::numeric_limits<double>::infinity()}}, {"c", "x"}};
    const auto s = canonical_dump(j);
    CHECK(s == R"({"a":[1.0,2.5,null],"b":1,"c":"x"})");
    CHECK(canonical_dump(Json::parse(s)) == s);

    SUBCASE("round trip of a full report") {
        const Polynomial p({1.0, 0.0, 1.0, I});
        RunReport r{p, classify(p), small_trace(p), Agreement::Confirmed, "", ""};
        r.verdict = agreement(r.classification, r.trace.n_components);
        const auto once = canonical_dump(to_json(r));
        CHECK(canonical_dump(Json::parse(once)) == once);
        const auto parsed = Json::parse(once);
        CHECK(parsed["agreement"] == "CONFIRMED");
        CHECK(parsed["classification"]["magic"] == "MAGIC");
        CHECK(parsed["trace"]["n_components"] == 2);
        CHECK(parsed.contains("predicted_J"));
    }
}

TEST_CASE("polynomial JSON") {
    const auto p = polynomial_from_json(Json::parse(R"({"coeffs": [[1, 0], 0, [1.0, 0.0], [0, 1]]})"));
    CHECK(p == Polynomial({1.0, 0.0, 1.0, I}));
    CHECK_FALSE(p.truncated_series());
    const auto q = polynomial_from_json(Json::parse(R"({"coeffs": [1, 0, 1], "truncated": true})"));
    CHECK(q.truncated_series());
    CHECK(polynomial_from_json(polynomial_to_json(q)) == q);
    CHECK(polynomial_from_json(polynomial_to_json(q)).truncated_series());
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"c": [1]})")), ParseError);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"coeffs": [[1, 2, 3]]})")), ParseError);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"coeffs": ["x"]})")), ParseError);
}

TEST_CASE("classification JSON") {
    const auto j = to_json(classify(Polynomial({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0})));
    CHECK(j["mu"] == 2);
    CHECK(j["N"] == 6);
    CHECK(j["exceptional"] == true);
    CHECK(j["magic"] == "UNKNOWN");
    CHECK(j["predicted_count"] == Json::array({2, 4}));
    CHECK(j["omega"].size() == 4);
    CHECK(j["witnesses"].size() >= 1);
    const auto nonexc = to_json(classify(Polynomial({1.0, 0.0, 1.0, 1.0})));
    CHECK(nonexc["predicted_count"] == 1);
    CHECK(nonexc["conjecture_count"].is_null());
}

TEST_CASE("CSV") {
    const auto t = small_trace(Polynomial({1.0, 0.0, 1.0, I}));
    std::ostringstream out;
    write_csv(out, t);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "r,theta,re,im,mod,curve_id");
    int rows = 0;
    int last_id = -1;
    double last_r = 0.0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream cells(line);
        std::string cell;
        std::vector<std::string> v;
        while (std::getline(cells, cell, ',')) {
            v.push_back(cell);
        }
        REQUIRE(v.size() == 6);
        const double r = std::stod(v[0]);
        const double th = std::stod(v[1]);
        CHECK(std::abs(std::stod(v[2]) - r * std::cos(th)) < 1e-15);
        const int id = std::stoi(v[5]);
        if (id == last_id) {
            CHECK(r < last_r);
        } else {
            CHECK(id > last_id);
        }
        last_id = id;
        last_r = r;
    }
    CHECK(t.events.empty());
    CHECK(rows == t.n_components * static_cast<int>(t.radii.size()));
}

TEST_CASE("SVG") {
    for (const auto& p : {Polynomial({1.0, 0.0, 1.0, I}), Polynomial({1.0, 0.0, 1.0, 1.0}),
                          Polynomial({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0})}) {
        const auto t = small_trace(p);
        std::ostringstream out;
        write_svg(out, t);
        const auto s = out.str();
        CHECK(s.rfind("<svg", 0) == 0);
        CHECK(count(s, "<path") == static_cast<std::size_t>(t.n_components));
        CHECK(count(s, "<polyline") == static_cast<std::size_t>(t.n_curves - t.n_components));
        CHECK(s.find("</svg>") != std::string::npos);
    }
}

TEST_CASE("agreement verdicts") {
    const auto nonexc = classify(Polynomial({1.0, 0.0, 1.0, 1.0}));
    CHECK(agreement(nonexc, 1) == Agreement::Confirmed);
    CHECK(agreement(nonexc, 2) == Agreement::Discrepant);
    const auto magic = classify(Polynomial({1.0, 0.0, 1.0, I}));
    CHECK(agreement(magic, 2) == Agreement::Confirmed);
    CHECK(agreement(magic, 1) == Agreement::Discrepant);
    const auto unknown = classify(Polynomial({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0}));
    CHECK(agreement(unknown, 2) == Agreement::ConjectureConsistent);
    CHECK(agreement(unknown, 4) == Agreement::ConjectureConsistent);
    CHECK(agreement(unknown, 3) == Agreement::Discrepant);
    CHECK(to_string(Agreement::ConjectureConsistent) == "CONJECTURE_CONSISTENT");
}
