#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relu_jackson/harness.hpp"
#include "relu_jackson/numeric.hpp"
#include "relu_jackson/sampler.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace relu_jackson;

TEST_CASE("slope fitting") {
    const SlopeFit exact = fit_slope({{1, 1}, {2, 0.25}, {4, 1.0 / 16}});
    CHECK(exact.slope == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(exact.residual < 1e-14);
    CHECK(fit_slope({{1, 1}, {2, 1}, {4, 1}}).slope == 0.0);
    CHECK_THROWS(fit_slope({{1, 1}}));
    CHECK_THROWS(fit_slope({{1, 1}, {2, 0}}));
    CHECK_THROWS(fit_slope({{0, 1}, {2, 1}}));

    std::mt19937_64 engine(8);
    for (int trial = 0; trial < 20; ++trial) {
        const double truth = -3 * uniform01(engine);
        std::vector<std::pair<double, double>> points;
        for (double x = 8; x <= 4096; x *= 2)
            points.emplace_back(x, 5 * std::pow(x, truth) * (1 + 0.02 * uniform01(engine) - 0.01));
        CHECK(std::abs(fit_slope(points).slope - truth) <= 0.03);
    }
}

TEST_CASE("median") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK_THROWS(median({}));
}

TEST_CASE("experiment config") {
    std::istringstream in(
        "# network sweep\n"
        "mode = network-rate\n"
        "target = corpus:smooth1   # comment\n"
        "r = 2\n"
        "sweep = 64, 128, 256, 512\n"
        "seeds = 1,2,3\n"
        "grid = 1025\n"
        "out = rate.csv\n");
    const RateExperiment exp = load_experiment(in);
    CHECK(exp.mode == ExperimentMode::NetworkRate);
    CHECK(exp.target == "corpus:smooth1");
    CHECK(exp.sweep == std::vector<int>{64, 128, 256, 512});
    CHECK(exp.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(exp.grid == 1025);
    CHECK(exp.out == "rate.csv");
    CHECK_NOTHROW(exp.validate());

    RateExperiment bad = exp;
    bad.sweep = {64, 64, 128, 256};
    CHECK_THROWS(bad.validate());
    bad.sweep = {64, 128, 256};
    CHECK_THROWS(bad.validate());
    bad = exp;
    bad.seeds.clear();
    CHECK_THROWS(bad.validate());

    std::istringstream unknown("colour = blue\n");
    CHECK_THROWS(load_experiment(unknown));
    std::istringstream noeq("mode\n");
    CHECK_THROWS(load_experiment(noeq));
    CHECK_THROWS(mode_from_string("other"));
    CHECK_THROWS(parse_seed_list("1,-2"));
}

TEST_CASE("jackson-rate") {
    RateExperiment constant;
    constant.mode = ExperimentMode::JacksonRate;
    constant.target = "corpus:const1";
    constant.sweep = {8, 16, 32, 64};
    const JacksonRateResult flat = run_jackson_rate(constant);
    for (const auto &row : flat.rows) CHECK(row.sup_error < 1e-12);
    CHECK_FALSE(flat.fit.has_value());
    CHECK(run_experiment_csv(constant).find("slope=undefined") != std::string::npos);

    RateExperiment exp;
    exp.mode = ExperimentMode::JacksonRate;
    exp.target = "corpus:decay1";
    exp.r = 2;
    exp.sweep = {8, 16, 32, 64, 128};
    const JacksonRateResult result = run_jackson_rate(exp);
    REQUIRE(result.fit.has_value());
    CHECK(result.fit->slope <= -1.6);
    CHECK(result.fit->slope >= -3.2);
    const std::string csv = run_experiment_csv(exp);
    CHECK(csv.rfind("# schema=jackson-rate@1\n", 0) == 0);
    CHECK(csv.find("N,sup_error,slope_so_far\n8,") != std::string::npos);
    CHECK(csv == run_experiment_csv(exp));
}

TEST_CASE("network-rate") {
    RateExperiment exp;
    exp.mode = ExperimentMode::NetworkRate;
    exp.target = "corpus:cos1";
    exp.r = 2;
    exp.sweep = {64, 128, 256, 512};
    exp.seeds = {1, 2};
    exp.grid = 513;
    const NetworkRateResult result = run_network_rate(exp);
    REQUIRE(result.rows.size() == 4);
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto &row = result.rows[i];
        CHECK(row.errors.size() == 2);
        CHECK(row.median_error > 0.0);
        CHECK(row.N == select_degree(row.m, 1, 2));
        if (i > 0) CHECK(row.m > result.rows[i - 1].m);
    }
    const std::string csv = run_experiment_csv(exp);
    CHECK(csv.rfind("# schema=network-rate@1\n", 0) == 0);
    CHECK(csv.find("m,N_selected,v,median_error,error_seed1,error_seed2,within_budget\n") != std::string::npos);
    CHECK(csv == run_experiment_csv(exp));
}

TEST_CASE("paired-mc") {
    RateExperiment exp;
    exp.mode = ExperimentMode::PairedMc;
    exp.target = "corpus:cos1";
    exp.r = 2;
    exp.m = 256;
    exp.seeds = {1, 2, 3, 4, 5};
    exp.grid = 513;
    const PairedResult result = run_paired_mc(exp);
    REQUIRE(result.rows.size() == 5);
    for (const auto &row : result.rows) {
        CHECK(row.stratified_error > 0.0);
        CHECK(row.plain_error > 0.0);
    }
    CHECK(result.stratified_median <= result.plain_median);
    const std::string csv = run_experiment_csv(exp);
    CHECK(csv.rfind("# schema=paired-mc@1\n", 0) == 0);
    CHECK(csv == run_experiment_csv(exp));
    exp.m = 4;
    CHECK_THROWS(run_experiment_csv(exp));
}
