#include "relu_jackson/jackson.hpp"

#include "relu_jackson/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace relu_jackson {

std::vector<double> fejer_coefficients(int M) {
    if (M < 1) throw std::invalid_argument("fejer_coefficients: M must be >= 1");
    std::vector<double> b(M);
    b[0] = 0.5;
    for (int j = 1; j < M; ++j) b[j] = 1.0 - static_cast<double>(j) / M;
    return b;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return std::round(out);
}

JacksonKernel1D::JacksonKernel1D(int N, int r, std::vector<double> coefficients)
    : N_(N), r_(r), M_(N / r + 1), degree_(r * (N / r)), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != static_cast<std::size_t>(2 * degree_ + 1))
        throw std::invalid_argument("JacksonKernel1D: coefficient length must be 2 r (M-1) + 1");
}

double JacksonKernel1D::at(int k) const {
    if (k < -degree_ || k > degree_) return 0.0;
    return coefficients_[k + degree_];
}

double JacksonKernel1D::value(double t) const {
    double sum = at(0);
    for (int k = 1; k <= degree_; ++k) sum += 2.0 * at(k) * std::cos(k * t);
    return sum;
}

JacksonKernel1D build_kernel(int N, int r) {
    if (N < 1) throw std::invalid_argument("build_kernel: N must be >= 1");
    if (r < 1) throw std::invalid_argument("build_kernel: r must be >= 1");
    const int M = N / r + 1;

    // Exponential-basis Fejer sequence c_0 = b_0, c_{+-j} = b_j / 2.
    const std::vector<double> b = fejer_coefficients(M);
    std::vector<double> fejer(2 * M - 1);
    fejer[M - 1] = b[0];
    for (int j = 1; j < M; ++j) fejer[M - 1 + j] = fejer[M - 1 - j] = 0.5 * b[j];

    std::vector<double> power = fejer;
    for (int step = 1; step < r; ++step) {
        std::vector<double> next(power.size() + fejer.size() - 1, 0.0);
        for (std::size_t i = 0; i < power.size(); ++i) {
            for (std::size_t j = 0; j < fejer.size(); ++j) next[i + j] += power[i] * fejer[j];
        }
        power = std::move(next);
    }
    const std::size_t center = power.size() / 2;
    const double scale = 1.0 / (kTwoPi * power[center]);
    for (double &c : power) c *= scale;
    power[center] = 1.0 / kTwoPi;
    // Enforce exact evenness against rounding in the convolution.
    for (std::size_t i = 0; i < center; ++i) power[power.size() - 1 - i] = power[i];
    return JacksonKernel1D(N, r, std::move(power));
}

std::vector<double> kernel_on_grid(const JacksonKernel1D &kernel, int points) {
    if (points < 2) throw std::invalid_argument("kernel_on_grid: need at least 2 points");
    std::vector<double> cosines(points);
    for (int m = 0; m < points; ++m) cosines[m] = std::cos(kTwoPi * m / points);
    std::vector<double> values(points);
    for (int g = 0; g < points; ++g) {
        // t_g = -pi + 2 pi g / G, so cos(k t_g) = (-1)^k cos(2 pi (k g mod G) / G).
        double sum = kernel.at(0);
        for (int k = 1; k <= kernel.degree(); ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            sum += 2.0 * kernel.at(k) * sign * cosines[(static_cast<long long>(k) * g) % points];
        }
        values[g] = sum;
    }
    return values;
}

JacksonMultiplier::JacksonMultiplier(int dimension, int N, int r, std::vector<double> axis_coefficients)
    : dimension_(dimension), N_(N), r_(r), axis_(std::move(axis_coefficients)) {
    if (dimension < 1) throw std::invalid_argument("JacksonMultiplier: dimension must be >= 1");
    if (axis_.size() != static_cast<std::size_t>(2 * N + 1))
        throw std::invalid_argument("JacksonMultiplier: axis sequence must have length 2N + 1");
}

double JacksonMultiplier::axis_at(int k) const {
    if (k < -N_ || k > N_) return 0.0;
    return axis_[k + N_];
}

double JacksonMultiplier::at(const Frequency &k) const {
    double product = 1.0;
    for (int component : k) {
        product *= axis_at(component);
        if (product == 0.0) break;
    }
    return product;
}

JacksonMultiplier multiplier_from_kernel(const JacksonKernel1D &kernel, int dimension) {
    const int N = kernel.N();
    const int r = kernel.order();
    std::vector<double> axis(2 * N + 1, 0.0);
    for (int k = -N; k <= N; ++k) {
        if (k == 0) {
            // sum_{l=1}^r (-1)^{l-1} C(r,l) = 1
            axis[N] = kernel.at(0);
            continue;
        }
        double sum = 0.0;
        for (int l = 1; l <= r; ++l) {
            const double sign = (l % 2 == 1) ? 1.0 : -1.0;
            sum += sign * binomial(r, l) * kernel.at(k * l);
        }
        axis[k + N] = sum;
    }
    return JacksonMultiplier(dimension, N, r, std::move(axis));
}

namespace {

// (2 pi)^d a_k, formed per axis so that the k = 0 factor is exactly one.
double jackson_factor(const JacksonMultiplier &multiplier, const Frequency &k) {
    double product = 1.0;
    for (int component : k) product *= kTwoPi * multiplier.axis_at(component);
    return product;
}

} // namespace

FourierTarget apply_jackson(const FourierTarget &target, int N, int r) {
    const JacksonMultiplier multiplier = multiplier_from_kernel(build_kernel(N, r), target.dimension());
    CoefficientMap image;
    for (const auto &[k, c] : target.coefficients()) {
        if (linf_norm(k) > N) continue;
        const double factor = jackson_factor(multiplier, k);
        if (factor != 0.0) image[k] = factor * c;
    }
    return FourierTarget(target.dimension(), std::move(image));
}

double jackson_sup_error(const FourierTarget &target, int N, int r, const EvaluationGrid &grid) {
    require_resolved(target, grid);
    const JacksonMultiplier multiplier = multiplier_from_kernel(build_kernel(N, r), target.dimension());
    CoefficientMap difference;
    for (const auto &[k, c] : target.coefficients()) {
        const double factor = linf_norm(k) > N ? 0.0 : jackson_factor(multiplier, k);
        const Complex residual = (1.0 - factor) * c;
        if (residual != Complex{}) difference[k] = residual;
    }
    return grid_max_abs(evaluate_series_on_grid(target.dimension(), difference, grid));
}

} // namespace relu_jackson
