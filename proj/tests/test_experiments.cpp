#include <atomic>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "rmtlab/experiments.hpp"
#include "rmtlab/fredholm.hpp"
#include "rmtlab/report.hpp"

using namespace rmtlab;

namespace {

ExperimentConfig small_edge() {
    ExperimentConfig c;
    c.ensemble = EnsembleSpec{60, ElementLaw::parse("rademacher"), 1.0, 9};
    c.replicas = 12;
    return c;
}

}  // namespace

TEST_CASE("parallel_for visits every index once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(1000, 4, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("regression slope and KS distance") {
    CHECK(regression_slope({1, 2, 3, 4}, {3, 1, -1, -3}) == doctest::Approx(-2.0));
    CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
    std::vector<double> grid;
    for (int k = 0; k < 100; ++k) grid.push_back((k + 0.5) / 100.0);
    CHECK(ks_distance(grid, [](double x) { return x; }) == doctest::Approx(0.005));
}

TEST_CASE("edge experiment is deterministic and independent of the worker count") {
    ExperimentConfig c = small_edge();
    ExperimentReport a = run_edge_experiment(c);
    c.workers = 3;
    ExperimentReport b = run_edge_experiment(c);
    a.wall_clock = b.wall_clock = 0.0;
    CHECK(a == b);
    CHECK(a.rows.size() == 12);
    CHECK(a.summary.count("ks_distance") == 1);
    c.ensemble.seed = 10;
    ExperimentReport d = run_edge_experiment(c);
    CHECK(d.rows[0][1] != a.rows[0][1]);
}

TEST_CASE("edge experiment edge cases") {
    ExperimentConfig c = small_edge();
    c.replicas = 1;
    ExperimentReport r = run_edge_experiment(c);
    CHECK(r.rows.size() == 1);
    CHECK(r.summary.count("ks_distance") == 0);
    CHECK(r.checks.empty());
    c.ensemble.law = ElementLaw::parse("student_t:3");
    CHECK_THROWS_AS(run_edge_experiment(c), std::invalid_argument);
    c.ensemble.law = ElementLaw::parse("symmetric_pareto:3");
    CHECK_THROWS_AS(run_edge_experiment(c), std::invalid_argument);
}

TEST_CASE("bulk experiment") {
    ExperimentConfig c;
    c.experiment = "bulk";
    c.ensemble = EnsembleSpec{80, ElementLaw{}, 1.0, 4};
    c.replicas = 5;
    c.psi_scale = 0.0;
    ExperimentReport r = run_bulk_experiment(c);
    for (const auto& row : r.rows) CHECK(row[1] == 1.0);
    CHECK(r.summary["mc_laplace"] == 1.0);
    CHECK(r.summary["fredholm_laplace"] == 1.0);
    CHECK(r.summary["beta"] == doctest::Approx(2.0 / std::sqrt(5.0)));
    CHECK(r.summary["fredholm_gap"] == doctest::Approx(sine_gap(2.0 / std::sqrt(5.0), 0.5).value));
    c.d = 3.0;
    CHECK_THROWS_AS(run_bulk_experiment(c), std::invalid_argument);
    c.d = 0.0;
    c.psi_scale = -1.0;
    CHECK_THROWS_AS(run_bulk_experiment(c), std::invalid_argument);
}

TEST_CASE("bulk window count matches the limiting density") {
    ExperimentConfig c;
    c.experiment = "bulk";
    c.ensemble = EnsembleSpec{400, ElementLaw{}, 1.0, 21};
    c.replicas = 300;
    ExperimentReport r = run_bulk_experiment(c);
    CHECK(r.summary["expected_window_count"] == doctest::Approx(4.0 * 2.0 / (M_PI * std::sqrt(5.0))));
    CHECK(r.checks["density"]);
}

TEST_CASE("lemma checks") {
    ExperimentConfig c;
    c.ensemble.kappa = 1.0;
    c.replicas = 50;
    CHECK_THROWS_AS(run_lemma_checks(c), std::invalid_argument);
    c.replicas = 100;
    c.sizes = {20};
    ExperimentReport zero =
        run_lemma_checks(c, [](int n, std::uint64_t) { return HermitianMatrix(HermitianMatrix::Zero(n, n)); });
    CHECK(zero.summary["var_z_i_n20"] == 0.0);
    CHECK(zero.summary["var_z_half_n20"] == 0.0);
    CHECK(zero.checks["variance_constant"]);
    c.sizes = {100};
    c.replicas = 300;
    ExperimentReport g = run_lemma_checks(c);
    CHECK(g.checks["variance_constant"]);
    CHECK(g.rows.size() == 300);
}

TEST_CASE("event probabilities at small scale") {
    ExperimentConfig c;
    c.experiment = "events";
    c.ensemble.kappa = 1.0;
    c.replicas = 20;
    c.reference_replicas = 20;
    c.sizes = {100};
    ExperimentReport r = run_event_probabilities(c);
    CHECK(r.rows.size() == 20);
    CHECK(r.checks.count("H_subset_G") == 1);
    CHECK(r.checks["VB_subset_C"]);
    CHECK(r.summary["freq_F_n100"] >= 0.9);
    CHECK(r.summary["freq_G_n100"] <= r.summary["freq_F_n100"]);
}

TEST_CASE("report round trips") {
    ExperimentReport r;
    r.experiment = "edge";
    r.columns = {"replica", "lambda_max", "scaled"};
    r.rows = {{0.0, 1.0 / 3.0, -1e-300}, {1.0, 123456.789, std::numeric_limits<double>::quiet_NaN()}};
    r.summary = {{"ks_distance", 0.031}, {"mean_scaled", -1.7777777777777777}};
    r.checks = {{"ks", true}, {"mean_window", false}};
    r.seeds = {1, 18446744073709551615ULL};
    r.notes = {"first", "second note, with a comma"};
    r.wall_clock = 2.5;

    auto same = [](const ExperimentReport& a, const ExperimentReport& b) {
        CHECK(a.experiment == b.experiment);
        CHECK(a.columns == b.columns);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i)
            for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
                double x = a.rows[i][j], y = b.rows[i][j];
                CHECK(((std::isnan(x) && std::isnan(y)) || x == y));
            }
        CHECK(a.summary == b.summary);
        CHECK(a.checks == b.checks);
        CHECK(a.seeds == b.seeds);
        CHECK(a.notes == b.notes);
        CHECK(a.wall_clock == b.wall_clock);
    };
    same(r, parse_json(emit_json(r)));
    same(r, parse_csv(emit_csv(r)));
    r.rows[1][2] = 0.0;
    CHECK(parse_json(emit_json(r)) == r);
    CHECK(parse_csv(emit_csv(r)) == r);

    ExperimentReport real = run_edge_experiment(small_edge());
    CHECK(parse_json(emit_json(real)) == real);
    CHECK(parse_csv(emit_csv(real)) == real);
}

TEST_CASE("configs round trip and reject unknown keys") {
    ExperimentConfig c;
    c.ensemble = EnsembleSpec{123, ElementLaw::parse("student_t:5"), 0.75, 77};
    c.replicas = 40;
    c.experiment = "bulk";
    c.d = 0.4;
    c.gap = 0.8;
    c.sizes = {50, 100};
    c.tolerances["ks"] = 0.07;
    ExperimentConfig back = parse_config(emit_config(c));
    CHECK(back.ensemble.n == 123);
    CHECK(back.ensemble.law.kind == LawKind::student_t);
    CHECK(back.ensemble.law.param == 5.0);
    CHECK(back.ensemble.kappa == 0.75);
    CHECK(back.ensemble.seed == 77);
    CHECK(back.replicas == 40);
    CHECK(back.experiment == "bulk");
    CHECK(back.d == 0.4);
    CHECK(back.gap == 0.8);
    CHECK(back.sizes == std::vector<int>{50, 100});
    CHECK(back.tolerance("ks", 0.05) == 0.07);
    CHECK(back.tolerance("gap", 0.03) == 0.03);
    CHECK_THROWS_AS(parse_config(R"({"replicaz": 3})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"n": {"x": 1}})"), std::invalid_argument);
    CHECK_THROWS(parse_config("[1, 2]"));
    ExperimentConfig bad;
    bad.replicas = 0;
    CHECK_THROWS(bad.validate());
    bad = ExperimentConfig{};
    bad.workers = 0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("finite checks pass") {
    CHECK(check_identities(100, 12, 1).all_checks_pass());
    CHECK(check_fredholm(20, 2).all_checks_pass());
    CHECK(check_descent_bounds(10, 100, 3).all_checks_pass());
    CHECK(check_contours(4, 2, 4).all_checks_pass());
}
