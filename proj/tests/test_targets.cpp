#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relu_jackson/numeric.hpp"
#include "relu_jackson/targets.hpp"

#include <cmath>
#include <sstream>

using namespace relu_jackson;

namespace {

FourierTarget cos_target() { return make_trig_poly(1, {{{1}, 0.5}, {{-1}, 0.5}}); }

FourierTarget sin_sum_target() {
    return make_trig_poly(2, {{{1, 1}, Complex(0, -0.5)}, {{-1, -1}, Complex(0, 0.5)}});
}

} // namespace

TEST_CASE("trig polynomials evaluate to their closed forms") {
    const FourierTarget one = make_trig_poly(1, {{{0}, 1.0}});
    const double x0[] = {0.37};
    CHECK(evaluate(one, x0) == 1.0);

    const FourierTarget c = cos_target();
    const double zero[] = {0.0}, pi[] = {kPi}, third[] = {kPi / 3};
    CHECK(evaluate(c, zero) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(evaluate(c, pi) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(evaluate(c, third) == doctest::Approx(0.5).epsilon(1e-14));

    const FourierTarget s = sin_sum_target();
    const double x[] = {kPi / 2, 0.0};
    CHECK(evaluate(s, x) == doctest::Approx(1.0).epsilon(1e-15));

    const FourierTarget one2 = make_trig_poly(2, {{{0, 0}, 1.0}});
    const double y[] = {0.37, -1.2};
    CHECK(evaluate(one2, y) == 1.0);
}

TEST_CASE("construction validates input") {
    CHECK_THROWS_AS(make_trig_poly(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_trig_poly(1, {{{1}, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_trig_poly(1, {{{1}, Complex(0.5, 0.1)}, {{-1}, Complex(0.5, 0.1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_trig_poly(2, {{{1}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_decay_target(1, 1.0, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_decay_target(2, 1.5, 8, 1), std::invalid_argument);

    const FourierTarget fixed = make_trig_poly(1, {{{2}, Complex(0.25, 0.5)}}, true);
    CHECK(fixed.coefficient({-2}) == std::conj(fixed.coefficient({2})));
    CHECK(fixed.support_radius() == 2);
    CHECK(fixed.smoothness() == kUnboundedSmoothness);
}

TEST_CASE("decay targets") {
    const FourierTarget a = make_decay_target(1, 3.0, 64, 5);
    const FourierTarget b = make_decay_target(1, 3.0, 64, 5);
    CHECK(a.coefficients() == b.coefficients());
    CHECK(std::abs(a.coefficient({0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.support_radius() == 64);

    // s = 3, d = 1: W^r for r < s - d, so r = 1.
    CHECK(a.smoothness() == 1);
    CHECK(make_decay_target(1, 3.2, 64, 1).smoothness() == 2);

    // Independent summation of |f^(k)| |k|_1 straight from the formula.
    double direct = 0.0;
    for (int k = -64; k <= 64; ++k) direct += std::pow(1.0 + std::abs(k), -3.0) * std::abs(k);
    CHECK(lipschitz_bound(a) == doctest::Approx(direct).epsilon(1e-13));

    for (const auto &[k, c] : a.coefficients()) {
        CHECK(std::abs(c) == doctest::Approx(std::pow(1.0 + l1_norm(k), -3.0)).epsilon(1e-14));
        CHECK(a.coefficient(negate(k)) == std::conj(c));
    }
    CHECK(make_decay_target(1, 3.0, 64, 6).coefficients() != a.coefficients());
}

TEST_CASE("grid evaluation matches pointwise evaluation and stays real") {
    const FourierTarget t = make_decay_target(2, 4.5, 6, 3);
    const EvaluationGrid grid(2, 20, Domain::Torus);
    const std::vector<Complex> values = evaluate_on_grid(t, grid);
    for (std::size_t i = 0; i < grid.size(); i += 7) {
        const std::vector<double> x = grid.point(i);
        const Complex direct = evaluate_complex(t, x);
        CHECK(std::abs(values[i] - direct) < 1e-12);
        CHECK(std::abs(values[i].imag()) < 1e-12);
    }
    const EvaluationGrid cube(2, 11, Domain::Cube);
    const std::vector<Complex> cube_values = evaluate_on_grid(t, cube);
    for (std::size_t i = 0; i < cube.size(); i += 5)
        CHECK(std::abs(cube_values[i] - evaluate_complex(t, cube.point(i))) < 1e-12);
    CHECK(cube.coordinate(0) == -1.0);
    CHECK(cube.coordinate(10) == 1.0);
}

TEST_CASE("Parseval on a resolved grid") {
    const FourierTarget t = make_decay_target(1, 3.2, 64, 1);
    const EvaluationGrid grid(1, 256, Domain::Torus);
    // Pointwise evaluation as the spatial side; coefficient sum as the oracle.
    double spatial = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) spatial += std::norm(evaluate_complex(t, grid.point(i)));
    spatial /= grid.size();
    double spectral = 0.0;
    for (const auto &[k, c] : t.coefficients()) spectral += std::norm(c);
    CHECK(std::abs(spatial - spectral) < 1e-10);
}

TEST_CASE("grid resolution") {
    const FourierTarget t = make_decay_target(1, 3.2, 64, 1);
    CHECK_THROWS_AS(require_resolved(t, EvaluationGrid(1, 128, Domain::Torus)), std::invalid_argument);
    CHECK_NOTHROW(require_resolved(t, EvaluationGrid(1, 129, Domain::Torus)));
    CHECK(resolved_torus_grid(t).points_per_axis() == 4096);
    CHECK_THROWS(resolved_torus_grid(t, 100));
    const FourierTarget wide = make_trig_poly(2, {{{300, 0}, 0.5}, {{-300, 0}, 0.5}});
    CHECK(resolved_torus_grid(wide).points_per_axis() > 600);
}

TEST_CASE("Holder norms") {
    const FourierTarget one = make_trig_poly(1, {{{0}, 1.0}});
    CHECK(holder_norm(one, 2, EvaluationGrid(1, 64, Domain::Torus)) == doctest::Approx(1.0));
    CHECK(holder_norm(cos_target(), 1, EvaluationGrid(1, 1024, Domain::Torus)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(holder_norm(one, -1, EvaluationGrid(1, 64, Domain::Torus)), std::invalid_argument);

    // sin(x1 + x2): every partial derivative is +-sin or +-cos of x1 + x2, so
    // the norm is 1. Oracle: central finite differences on a dense scan.
    const FourierTarget s = sin_sum_target();
    const double h = 1e-3;
    auto f = [&](double a, double b) {
        const double x[] = {a, b};
        return evaluate(s, x);
    };
    double fd_max = 0.0;
    for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < 200; j += 3) {
            const double a = -kPi + 2 * kPi * i / 200, b = -kPi + 2 * kPi * j / 200;
            const double dxx = (f(a + h, b) - 2 * f(a, b) + f(a - h, b)) / (h * h);
            const double dxy = (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h)) / (4 * h * h);
            const double dx = (f(a + h, b) - f(a - h, b)) / (2 * h);
            fd_max = std::max({fd_max, std::abs(f(a, b)), std::abs(dx), std::abs(dxx), std::abs(dxy)});
        }
    }
    const double norm = holder_norm(s, 2, EvaluationGrid(2, 512, Domain::Torus));
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(norm - fd_max) < 1e-5);
}

TEST_CASE("multi-indices are graded and complete") {
    const auto indices = multi_indices(2, 2);
    CHECK(indices.size() == 6);
    CHECK(indices.front() == std::vector<int>{0, 0});
    int previous = 0;
    for (const auto &alpha : indices) {
        const int order = alpha[0] + alpha[1];
        CHECK(order >= previous);
        previous = order;
    }
    CHECK(multi_indices(3, 3).size() == 20);
}

TEST_CASE("target text format round-trips exactly") {
    const FourierTarget t = make_decay_target(2, 4.5, 5, 9);
    std::stringstream buffer;
    write_target(buffer, t);
    const FourierTarget back = read_target(buffer);
    CHECK(back.dimension() == 2);
    CHECK(back.smoothness() == t.smoothness());
    CHECK(back.coefficients() == t.coefficients());

    std::stringstream poly;
    write_target(poly, cos_target());
    CHECK(poly.str().rfind("d=1 r=inf", 0) == 0);

    std::stringstream duplicate("d=1 r=inf\n1 0.5 0\n1 0.5 0\n-1 0.5 0\n");
    CHECK_THROWS(read_target(duplicate));
    std::stringstream bad("d=1 r=inf\n1 0.5\n");
    CHECK_THROWS(read_target(bad));
}

TEST_CASE("corpus") {
    const auto corpus = standard_corpus();
    CHECK(corpus.size() == 8);
    for (const auto &entry : corpus) {
        CHECK(resolve_target("corpus:" + entry.name).coefficients() == entry.target.coefficients());
        const EvaluationGrid grid = resolved_torus_grid(entry.target);
        for (const Complex &v : evaluate_on_grid(entry.target, grid)) {
            if (std::abs(v.imag()) >= 1e-12) {
                FAIL("imaginary residue in " << entry.name);
                break;
            }
        }
    }
    CHECK_THROWS(resolve_target("corpus:nope"));
}
