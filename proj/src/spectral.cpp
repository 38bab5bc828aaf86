#include "relu_jackson/spectral.hpp"

#include "relu_jackson/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace relu_jackson {

namespace {

double integer_power(int base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

double max_abs_level(const FourierTarget &series, const EvaluationGrid &grid) {
    return grid_max_abs(evaluate_on_grid(series, grid));
}

C6Report c6_report(const FourierTarget &series, int dimension, int r, int level, double holder, const EvaluationGrid &grid) {
    C6Report report;
    report.lhs = max_abs_level(series, grid);
    report.rhs = c6_constant(dimension, r) * holder * integer_power(level + 1, dimension);
    report.pass = report.lhs <= report.rhs;
    return report;
}

} // namespace

FourierTarget level_series(const FourierTarget &target, int level, int r) {
    if (level < 0) throw std::invalid_argument("level_series: level must be >= 0");
    if (r < 0) throw std::invalid_argument("level_series: r must be >= 0");
    const long long cutoff = 1LL << level;
    CoefficientMap weighted;
    for (const auto &[k, c] : target.coefficients()) {
        if (linf_norm(k) > cutoff) continue;
        const double weight = integer_power(l1_norm(k), r);
        if (weight != 0.0) weighted[k] = c * weight;
    }
    return FourierTarget(target.dimension(), std::move(weighted));
}

double parseval_residual(const FourierTarget &series, const EvaluationGrid &grid) {
    require_resolved(series, grid);
    const std::vector<Complex> values = evaluate_on_grid(series, grid);
    CompensatedSum spatial;
    for (const Complex &v : values) spatial += std::norm(v);
    CompensatedSum spectral;
    for (const auto &[k, c] : series.coefficients()) spectral += std::norm(c);
    return std::abs(spatial.value() / static_cast<double>(values.size()) - spectral.value());
}

double variation(const FourierTarget &series, double q) {
    if (q < 0) throw std::invalid_argument("variation: q must be >= 0");
    CompensatedSum sum;
    for (const auto &[k, c] : series.coefficients()) sum += std::abs(c) * std::pow(static_cast<double>(l1_norm(k)), q);
    return sum.value();
}

std::vector<double> shell_sums(const FourierTarget &target, int r, int L) {
    if (L < 0) throw std::invalid_argument("shell_sums: L must be >= 0");
    std::vector<CompensatedSum> shells(L + 1);
    for (const auto &[k, c] : target.coefficients()) {
        const int radius = linf_norm(k);
        if (radius == 0) continue;
        // Shell l holds 2^{l-1} < radius <= 2^l, i.e. l = ceil(log2 radius).
        int level = 0;
        while ((1LL << level) < radius) ++level;
        if (level > L) continue;
        shells[level] += std::abs(c) * integer_power(l1_norm(k), r);
    }
    std::vector<double> out(L + 1);
    for (int l = 0; l <= L; ++l) out[l] = shells[l].value();
    return out;
}

double c6_constant(int dimension, int r) {
    return std::pow(3.0 / kPi + 6.0, dimension) * integer_power(dimension, r);
}

C6Report c6_bound_check(const FourierTarget &target, int r, int level, const EvaluationGrid &grid) {
    require_resolved(target, grid);
    const double holder = holder_norm(target, r, grid);
    return c6_report(level_series(target, level, r), target.dimension(), r, level, holder, grid);
}

int level_count(int N) {
    if (N < 1) throw std::invalid_argument("level_count: N must be >= 1");
    int L = 0;
    while ((1LL << L) < N) ++L;
    return L;
}

SpectralLevels analyze_levels(const FourierTarget &target, int r, int L, const EvaluationGrid &grid) {
    require_resolved(target, grid);
    SpectralLevels out;
    out.r = r;
    out.L = L;
    out.holder_norm = holder_norm(target, r, grid);
    const std::vector<double> shells = shell_sums(target, r, L);
    for (int l = 0; l <= L; ++l) {
        LevelSummary summary;
        summary.level = l;
        summary.series = level_series(target, l, r);
        summary.shell_sum = shells[l];
        summary.coefficient_l1 = variation(summary.series, 0.0);
        summary.parseval_residual = parseval_residual(summary.series, grid);
        summary.c6 = c6_report(summary.series, target.dimension(), r, l, out.holder_norm, grid);
        summary.sup_norm = summary.c6.lhs;
        out.levels.push_back(std::move(summary));
    }
    return out;
}

} // namespace relu_jackson
