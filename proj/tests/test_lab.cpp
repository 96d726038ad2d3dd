#include "a2lab/lab/report.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <vector>

using namespace a2lab::lab;

TEST_CASE("fit_exponent") {
    SUBCASE("exact power laws") {
        const std::vector<double> xs{2.0, 4.0, 8.0, 16.0};
        std::vector<double> ys;
        for (double x : xs) ys.push_back(x * x);
        const FitResult f = fit_exponent(xs, ys);
        CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(f.residual == doctest::Approx(0.0).epsilon(1e-12));

        ys.clear();
        for (double x : xs) ys.push_back(7.25 * std::pow(x, 1.5));
        const FitResult g = fit_exponent(xs, ys);
        CHECK(g.slope == doctest::Approx(1.5).epsilon(1e-13));
        CHECK(g.intercept == doctest::Approx(std::log2(7.25)).epsilon(1e-13));
    }

    SUBCASE("hand-computed least squares") {
        const std::vector<double> xs{2.0, 4.0, 8.0};
        const std::vector<double> ys{3.0, 11.5, 49.0};
        const FitResult f = fit_exponent(xs, ys);
        CHECK(f.slope == doctest::Approx(2.014873671697026).epsilon(1e-12));
    }

    SUBCASE("error paths") {
        CHECK_THROWS_AS(fit_exponent(std::vector<double>{1.0, 2.0},
                                     std::vector<double>{1.0, 2.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(fit_exponent(std::vector<double>{1.0, 2.0, 3.0},
                                     std::vector<double>{1.0, -2.0, 3.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(fit_exponent(std::vector<double>{1.0, 1.0, 1.0},
                                     std::vector<double>{1.0, 2.0, 3.0}),
                        std::invalid_argument);
    }
}

namespace {

ExperimentReport sample_report() {
    ExperimentReport rep;
    rep.name = "sample";
    rep.timestamp = "2000-01-01T00:00:00Z";
    rep.config = {{"a_list", "4,5,6"}, {"tol", "1e-10"}};
    for (int a : {4, 5, 6}) {
        ExperimentRow row;
        row.a = a;
        row.alpha = std::ldexp(1.0, -a);
        row.a2_log2 = a + 1.5;
        row.quantity_log2 = 3.0 * a + 0.25;
        if (a != 5) row.oracle_log2 = 3.0 * a + 0.75;
        row.cpu_ms = 12.5;
        rep.rows.push_back(row);
    }
    std::vector<double> xs, ys;
    for (const ExperimentRow& r : rep.rows) {
        xs.push_back(1.0 / r.alpha);
        ys.push_back(std::exp2(r.quantity_log2));
    }
    rep.fit = fit_exponent(xs, ys);
    rep.extra_series["aux"] = {1.0, 2.0, 3.0};
    rep.notes.push_back("sample note");
    return rep;
}

} // namespace

TEST_CASE("CSV schema is stable") {
    const ExperimentReport rep = sample_report();
    const std::string csv = to_csv(rep);
    const std::string expected =
        "a,alpha,a2_log2,quantity_log2,oracle_log2,cpu_ms\n"
        "4,0.0625,5.5,12.25,12.75,12.5\n"
        "5,0.03125,6.5,15.25,,12.5\n"
        "6,0.015625,7.5,18.25,18.75,12.5\n";
    CHECK(csv == expected);

    ExperimentReport empty;
    empty.name = "empty";
    CHECK(to_csv(empty) == "a,alpha,a2_log2,quantity_log2,oracle_log2,cpu_ms\n");
}

TEST_CASE("JSON round trip reproduces the fit bit-exactly") {
    const ExperimentReport rep = sample_report();
    const nlohmann::json j = report_to_json(rep);
    const ExperimentReport back = report_from_json(nlohmann::json::parse(j.dump()));
    REQUIRE(back.fit.has_value());
    CHECK(back.fit->slope == rep.fit->slope);
    CHECK(back.fit->intercept == rep.fit->intercept);
    CHECK(back.fit->residual == rep.fit->residual);
    REQUIRE(back.rows.size() == rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(back.rows[i].alpha == rep.rows[i].alpha);
        CHECK(back.rows[i].quantity_log2 == rep.rows[i].quantity_log2);
        CHECK(back.rows[i].oracle_log2.has_value() == rep.rows[i].oracle_log2.has_value());
    }
    CHECK(back.extra_series.at("aux") == rep.extra_series.at("aux"));
    CHECK(back.notes == rep.notes);
}

TEST_CASE("SVG scatter carries the fitted slope") {
    const ExperimentReport rep = sample_report();
    const std::string svg = to_svg(rep);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("slope") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
}

TEST_CASE("emit_report writes the requested formats") {
    const ExperimentReport rep = sample_report();
    const auto dir = std::filesystem::temp_directory_path() / "a2lab_report_test";
    const auto files = emit_report(rep, {"csv", "json", "svg"}, dir);
    REQUIRE(files.size() == 3);
    for (const auto& f : files) CHECK(std::filesystem::file_size(f) > 0);
    CHECK_THROWS_AS(emit_report(rep, {"pdf"}, dir), std::invalid_argument);
    std::filesystem::remove_all(dir);
}
