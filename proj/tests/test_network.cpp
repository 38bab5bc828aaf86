#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relu_jackson/network.hpp"
#include "relu_jackson/numeric.hpp"
#include "relu_jackson/sampler.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace relu_jackson;

namespace {

Unit unit(std::vector<double> alpha, double beta, double bias, Origin origin = Origin::Sampled) {
    Unit u;
    u.alpha = std::move(alpha);
    u.beta = beta;
    u.bias = bias;
    u.origin = origin;
    return u;
}

ShallowNetwork random_network(int d, int count, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::vector<Unit> units;
    for (int i = 0; i < count; ++i) {
        std::vector<double> alpha(d);
        for (double &a : alpha) a = (2 * uniform01(engine) - 1) / d;
        units.push_back(unit(alpha, 2 * uniform01(engine) - 1, uniform01(engine)));
    }
    return ShallowNetwork(d, units);
}

} // namespace

TEST_CASE("evaluation") {
    const ShallowNetwork empty(2, {});
    const double x[] = {0.3, -0.9};
    CHECK(empty.evaluate(x) == 0.0);

    const ShallowNetwork single(2, {unit({1.0, 0.0}, 1.0, 0.0)});
    const double plus[] = {0.7, 0.2}, minus[] = {-0.7, 0.2};
    CHECK(single.evaluate(plus) == 0.7);
    CHECK(single.evaluate(minus) == 0.0);

    CHECK_THROWS(ShallowNetwork(2, {unit({1.0}, 1.0, 0.0)}));
    const double wrong[] = {0.1};
    CHECK_THROWS(single.evaluate(wrong));
}

TEST_CASE("piecewise linearity") {
    const ShallowNetwork net = random_network(2, 1, 7);
    const Unit &u = net.units()[0];
    std::mt19937_64 engine(11);
    int tested = 0;
    while (tested < 50) {
        double a[2], b[2];
        for (int j = 0; j < 2; ++j) {
            a[j] = 2 * uniform01(engine) - 1;
            b[j] = 2 * uniform01(engine) - 1;
        }
        const double pa = u.alpha[0] * a[0] + u.alpha[1] * a[1] - u.bias;
        const double pb = u.alpha[0] * b[0] + u.alpha[1] * b[1] - u.bias;
        if ((pa > 0) != (pb > 0)) continue;  // segment crosses the hyperplane
        const double m[] = {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
        CHECK(net.evaluate(m) == doctest::Approx(0.5 * (net.evaluate(a) + net.evaluate(b))).epsilon(1e-13));
        ++tested;
    }
}

TEST_CASE("positive homogeneity") {
    const ShallowNetwork net = random_network(3, 40, 5);
    std::vector<Unit> rescaled;
    for (const Unit &u : net.units()) {
        const double c = 0.5 + u.bias;  // c > 0
        std::vector<double> alpha;
        for (double a : u.alpha) alpha.push_back(a / c);
        rescaled.push_back(unit(alpha, u.beta * c, u.bias / c));
    }
    const ShallowNetwork other(3, rescaled);
    std::mt19937_64 engine(2);
    for (int i = 0; i < 100; ++i) {
        const double x[] = {2 * uniform01(engine) - 1, 2 * uniform01(engine) - 1, 2 * uniform01(engine) - 1};
        CHECK(std::abs(net.evaluate(x) - other.evaluate(x)) < 1e-12);
    }
}

TEST_CASE("sup error") {
    const FourierTarget one = make_trig_poly(1, {{{0}, 1.0}});
    const ShallowNetwork constant(1, {unit({0.0}, 1.0, -1.0, Origin::Affine)});
    const EvaluationGrid grid(1, 257, Domain::Cube);
    CHECK(sup_error(constant, one, grid).grid_max == 0.0);

    const FourierTarget cosx = make_trig_poly(1, {{{1}, 0.5}, {{-1}, 0.5}});
    const SupErrorReport zero = sup_error(ShallowNetwork(1, {}), cosx, grid);
    CHECK(zero.grid_max == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(zero.certified_bound >= zero.grid_max);

    // The certified bound dominates a much finer scan.
    const ShallowNetwork net = construct(cosx, 2, 64, 3);
    const SupErrorReport coarse = sup_error(net, cosx, EvaluationGrid(1, 65, Domain::Cube));
    const SupErrorReport fine = sup_error(net, cosx, EvaluationGrid(1, 20001, Domain::Cube));
    CHECK(fine.grid_max <= coarse.certified_bound);
    CHECK_THROWS(sup_error(net, cosx, EvaluationGrid(1, 64, Domain::Torus)));

    const ShallowNetwork again = construct(cosx, 2, 1024, 7);
    CHECK(sup_error(again, cosx, grid).grid_max == sup_error(construct(cosx, 2, 1024, 7), cosx, grid).grid_max);
}

TEST_CASE("audit") {
    NetworkMetadata meta;
    meta.m_requested = 40;
    meta.variation = 1.0;
    const ShallowNetwork good(1, {unit({0.3}, 0.1, 0.5), unit({0.0}, 2.0, -1.0, Origin::Affine)}, meta);
    const AuditReport ok = audit(good);
    CHECK(ok.pass);
    CHECK(ok.sampled_units == 1);
    CHECK(ok.affine_units == 1);
    CHECK(ok.beta_bound == doctest::Approx(8 * kPi * kPi / 40));

    const ShallowNetwork wide(1, {unit({1.5}, 0.1, 0.5)}, meta);
    const AuditReport bad = audit(wide);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.check("sampled_alpha_l1").pass);
    CHECK(bad.check("sampled_bias_min").pass);

    const ShallowNetwork heavy(1, {unit({0.3}, 10.0, 0.5)}, meta);
    CHECK_FALSE(audit(heavy).check("sampled_beta").pass);
    const ShallowNetwork negative_bias(1, {unit({0.3}, 0.1, -0.1)}, meta);
    CHECK_FALSE(audit(negative_bias).check("sampled_bias_min").pass);

    std::vector<Unit> many(6, unit({0.0}, 1.0, -1.0, Origin::Affine));
    CHECK_FALSE(audit(ShallowNetwork(1, many, meta)).check("affine_count").pass);

    const FourierTarget one = make_trig_poly(2, {{{0, 0}, 1.0}});
    const AuditReport affine_only = audit(construct(one, 2, 64, 1));
    CHECK(affine_only.pass);
    CHECK(affine_only.sampled_units == 0);
    CHECK(affine_only.affine_units <= 5);

    for (const char *name : {"cos1", "decay1", "sin2", "decay2"})
        CHECK(audit(construct(corpus_target(name), 2, 256, 4)).pass);
}

TEST_CASE("CSV round trip is bit exact") {
    const ShallowNetwork net = construct(corpus_target("decay2"), 2, 128, 5);
    std::stringstream buffer;
    write_network(buffer, net);
    const std::string text = buffer.str();
    CHECK(text.rfind("# schema=network@1\n", 0) == 0);
    CHECK(text.find("\nd=2 m=" + std::to_string(net.size()) + " v=") != std::string::npos);

    const ShallowNetwork back = read_network(buffer);
    REQUIRE(back.size() == net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        CHECK(back.units()[i].alpha == net.units()[i].alpha);
        CHECK(back.units()[i].beta == net.units()[i].beta);
        CHECK(back.units()[i].bias == net.units()[i].bias);
        CHECK(back.units()[i].origin == net.units()[i].origin);
    }
    CHECK(back.metadata().v == net.metadata().v);
    CHECK(back.metadata().variation == net.metadata().variation);
    CHECK(back.metadata().N == net.metadata().N);
    CHECK(back.metadata().m_requested == 128);
    CHECK(back.metadata().seed == 5);
    std::stringstream again;
    write_network(again, back);
    CHECK(again.str() == text);

    std::stringstream truncated("d=1 m=2 v=1 N=3\n0.1,0.2,0.3,sampled\n");
    CHECK_THROWS(read_network(truncated));
    std::stringstream bad_origin("d=1 m=1 v=1 N=3\n0.1,0.2,0.3,other\n");
    CHECK_THROWS(read_network(bad_origin));
    CHECK(format_double(0.1) == "0.10000000000000001");
}
