#include "relu_jackson/sampler.hpp"

#include "relu_jackson/jackson.hpp"
#include "relu_jackson/numeric.hpp"
#include "relu_jackson/spectral.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace relu_jackson {

namespace {

// n such that theta lies in [n pi - pi/2, n pi + pi/2), where cos has sign (-1)^n.
long long half_period(double theta) { return static_cast<long long>(std::floor((theta + kPi / 2) / kPi)); }

double parity(long long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

double simpson(const auto &f, double a, double b, int panels) {
    if (panels % 2 == 1) ++panels;
    const double h = (b - a) / panels;
    CompensatedSum odd, even;
    for (int i = 1; i < panels; ++i) (i % 2 == 1 ? odd : even) += f(a + i * h);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd.value() + 2.0 * even.value());
}

} // namespace

double identity_residual(double z, double c, int panels) {
    if (panels < 2) throw std::invalid_argument("identity_residual: panels must be >= 2");
    if (!(std::abs(z) <= c)) throw std::invalid_argument("identity_residual: requires |z| <= c");
    if (z == 0.0) return 0.0;
    const Complex lhs = std::exp(Complex(0.0, z)) - Complex(0.0, z) - 1.0;
    auto integrand = [z](double u) {
        return relu(z - u) * std::exp(Complex(0.0, u)) + relu(-z - u) * std::exp(Complex(0.0, -u));
    };
    auto re = [&](double u) { return integrand(u).real(); };
    auto im = [&](double u) { return integrand(u).imag(); };
    // The integrand is smooth on [0, |z|] and vanishes beyond the kink.
    const double kink = std::abs(z);
    const int inner = std::max(2, static_cast<int>(std::lround(panels * kink / c)));
    const int outer = std::max(2, panels - inner);
    Complex integral(simpson(re, 0.0, kink, inner), simpson(im, 0.0, kink, inner));
    if (kink < c) integral += Complex(simpson(re, kink, c, outer), simpson(im, kink, c, outer));
    return std::abs(lhs + integral);
}

double abs_cos_integral(double theta_a, double theta_b) {
    if (theta_b < theta_a) return -abs_cos_integral(theta_b, theta_a);
    const long long na = half_period(theta_a);
    const long long nb = half_period(theta_b);
    if (na == nb) return parity(na) * (std::sin(theta_b) - std::sin(theta_a));
    return (1.0 - parity(na) * std::sin(theta_a)) + 2.0 * static_cast<double>(nb - na - 1) +
           (1.0 + parity(nb) * std::sin(theta_b));
}

SamplingDensity build_density(const FourierTarget &image) {
    SamplingDensity density;
    density.dimension = image.dimension();
    density.variation = variation(image, 2.0);
    CompensatedSum v;
    for (const auto &[q, c] : image.coefficients()) {
        const int l1 = l1_norm(q);
        if (l1 == 0) continue;
        if (std::abs(c) == 0.0) continue;
        DensityMode mode;
        mode.frequency = q;
        mode.modulus = std::abs(c);
        mode.phase = std::arg(c);
        if (mode.phase <= -kPi) mode.phase = kPi;
        mode.omega = kPi * l1;
        for (int component : q) mode.direction.push_back(component / mode.omega);
        // pi^2 |J^| |q|_1^2 int_0^1 |cos(omega t + b)| dt, with the t integral
        // rewritten as (1/omega) int |cos| d theta.
        mode.mass_per_sign =
            kPi * l1 * mode.modulus * abs_cos_integral(mode.phase, mode.omega + mode.phase);
        mode.mass = 2.0 * mode.mass_per_sign;
        v += mode.mass;
        density.modes.push_back(std::move(mode));
    }
    density.v = v.value();
    return density;
}

int SamplingPlan::total_samples() const {
    int total = 0;
    for (const Stratum &s : strata) total += s.samples;
    return total;
}

double strata_epsilon(int m, int dimension) {
    const double m_prime = std::ceil(m / 4.0);
    return 2.0 * (dimension + 1) * std::pow(kPi, -1.0 + 1.0 / dimension) / std::pow(m_prime, 1.0 / dimension);
}

namespace {

// Orthant signs plus binned |e_j|. For d <= 2 the last coordinate is implied by
// |e|_1 = 1/pi within an orthant, so binning the first d-1 coordinates keeps the
// l_inf diameter at delta.
std::vector<int> direction_cell(const std::vector<double> &direction, double delta) {
    const int d = static_cast<int>(direction.size());
    std::vector<int> cell;
    for (double e : direction) cell.push_back(e >= 0.0 ? 1 : -1);
    const int binned = d <= 2 ? d - 1 : d;
    for (int j = 0; j < binned; ++j) cell.push_back(static_cast<int>(std::floor(std::abs(direction[j]) / delta)));
    return cell;
}

Unit make_unit(const DensityMode &mode, double t, double beta) {
    Unit u;
    u.alpha = mode.direction;
    u.bias = t;
    u.beta = beta;
    u.origin = Origin::Sampled;
    return u;
}

// Inverse transform of |cos(omega t + b)| restricted to a piece of one sign.
double sample_t(const DensityMode &mode, const Piece &piece, double u) {
    const double theta_a = mode.omega * piece.t_begin + mode.phase;
    const double theta_b = mode.omega * piece.t_end + mode.phase;
    const long long n = half_period(0.5 * (theta_a + theta_b));
    const double ya = parity(n) * std::sin(theta_a);
    const double yb = parity(n) * std::sin(theta_b);
    const double y = std::clamp(ya + u * (yb - ya), -1.0, 1.0);
    const double theta = static_cast<double>(n) * kPi + std::asin(y);
    return std::clamp((theta - mode.phase) / mode.omega, piece.t_begin, piece.t_end);
}

int sign_at(const DensityMode &mode, double t) {
    // s = -sgn cos(omega t + b)
    return half_period(mode.omega * t + mode.phase) % 2 == 0 ? -1 : 1;
}

std::size_t pick(const std::vector<double> &cumulative, double u) {
    const double target = u * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

} // namespace

SamplingPlan build_strata(const SamplingDensity &density, int m) {
    if (density.degenerate()) throw std::invalid_argument("build_strata: empty density");
    if (m < 8) throw std::invalid_argument("build_strata: m must be >= 8");
    const int d = density.dimension;
    SamplingPlan plan;
    plan.m = m;
    plan.m_prime = (m + 3) / 4;
    plan.epsilon = strata_epsilon(m, d);
    plan.delta = plan.epsilon / (d + 1);

    int bins = static_cast<int>(std::ceil(1.0 / plan.delta));
    while (bins > 1 && (bins - 1) * plan.delta >= 1.0) --bins;
    std::vector<double> edges(bins + 1);
    for (int j = 0; j < bins; ++j) edges[j] = j * plan.delta;
    edges[bins] = 1.0;

    using Key = std::tuple<std::vector<int>, int, int>;
    std::map<Key, Stratum> strata;
    for (int mi = 0; mi < static_cast<int>(density.modes.size()); ++mi) {
        const DensityMode &mode = density.modes[mi];
        const std::vector<int> cell = direction_cell(mode.direction, plan.delta);
        // Zeros of cos(omega t + b) inside (0, 1), merged with the bin edges.
        std::vector<double> breaks = edges;
        const long long n_first = half_period(mode.phase);
        const long long n_last = half_period(mode.omega + mode.phase);
        for (long long n = n_first; n < n_last; ++n) {
            const double t = ((static_cast<double>(n) + 0.5) * kPi - mode.phase) / mode.omega;
            if (t > 0.0 && t < 1.0) breaks.push_back(t);
        }
        std::sort(breaks.begin(), breaks.end());
        // Both signs: 2 pi^2 |J^| |q|_1^2 int |cos| dt = 2 pi |q|_1 |J^| int |cos| d theta.
        const double scale = 2.0 * kPi * l1_norm(mode.frequency) * mode.modulus;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            const double a = breaks[i], b = breaks[i + 1];
            if (!(b > a)) continue;
            const double mid = 0.5 * (a + b);
            const int bin = std::min(bins - 1, static_cast<int>(std::floor(mid / plan.delta)));
            const int s = sign_at(mode, mid);
            Piece piece{mi, a, b, 0.0};
            piece.mass = scale * abs_cos_integral(mode.omega * a + mode.phase, mode.omega * b + mode.phase);
            if (piece.mass <= 0.0) continue;
            Stratum &stratum = strata[Key{cell, bin, s}];
            stratum.pieces.push_back(piece);
        }
    }

    for (auto &[key, stratum] : strata) {
        stratum.cell = std::get<0>(key);
        stratum.t_bin = std::get<1>(key);
        stratum.sign = std::get<2>(key);
        CompensatedSum mass;
        for (const Piece &p : stratum.pieces) mass += p.mass;
        stratum.mass = mass.value();
        stratum.probability = stratum.mass / density.v;
        stratum.target_count = plan.m_prime * stratum.probability;
        stratum.samples = std::max(1, static_cast<int>(std::ceil(stratum.target_count)));
        plan.strata.push_back(std::move(stratum));
    }
    return plan;
}

std::vector<Unit> stratified_sample(const SamplingPlan &plan, const SamplingDensity &density, std::uint64_t seed) {
    std::vector<std::size_t> offsets(plan.strata.size() + 1, 0);
    for (std::size_t i = 0; i < plan.strata.size(); ++i) offsets[i + 1] = offsets[i] + plan.strata[i].samples;
    std::vector<Unit> units(offsets.back());
    const long long count = static_cast<long long>(plan.strata.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        const Stratum &stratum = plan.strata[i];
        std::mt19937_64 engine = substream(seed, static_cast<std::uint64_t>(i));
        std::vector<double> cumulative;
        CompensatedSum running;
        for (const Piece &p : stratum.pieces) {
            running += p.mass;
            cumulative.push_back(running.value());
        }
        // v L_i / n_i with v L_i = stratum mass.
        const double beta = stratum.sign * stratum.mass / stratum.samples;
        for (int j = 0; j < stratum.samples; ++j) {
            const Piece &piece = stratum.pieces[pick(cumulative, uniform01(engine))];
            const DensityMode &mode = density.modes[piece.mode];
            const double t = sample_t(mode, piece, uniform01(engine));
            units[offsets[i] + j] = make_unit(mode, t, beta);
        }
    }
    return units;
}

std::vector<Unit> plain_sample(const SamplingDensity &density, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("plain_sample: n must be >= 1");
    if (density.degenerate()) throw std::invalid_argument("plain_sample: empty density");
    std::vector<double> cumulative;
    CompensatedSum running;
    for (const DensityMode &mode : density.modes) {
        running += mode.mass;
        cumulative.push_back(running.value());
    }
    std::mt19937_64 engine = substream(seed, std::numeric_limits<std::uint64_t>::max());
    std::vector<Unit> units;
    units.reserve(n);
    for (int j = 0; j < n; ++j) {
        const DensityMode &mode = density.modes[pick(cumulative, uniform01(engine))];
        // Invert theta -> 2k + (-1)^k sin theta, the antiderivative of |cos|.
        const double theta0 = mode.phase, theta1 = mode.omega + mode.phase;
        const long long n0 = half_period(theta0), n1 = half_period(theta1);
        const double phi0 = 2.0 * static_cast<double>(n0) + parity(n0) * std::sin(theta0);
        const double phi1 = 2.0 * static_cast<double>(n1) + parity(n1) * std::sin(theta1);
        const double target = phi0 + uniform01(engine) * (phi1 - phi0);
        const long long k = std::clamp(static_cast<long long>(std::floor((target + 1.0) / 2.0)), n0, n1);
        const double theta = static_cast<double>(k) * kPi + std::asin(std::clamp(target - 2.0 * static_cast<double>(k), -1.0, 1.0));
        const double t = std::clamp((theta - mode.phase) / mode.omega, 0.0, 1.0);
        const double s = (k % 2 == 0) ? -1.0 : 1.0;
        units.push_back(make_unit(mode, t, s * density.v / n));
    }
    return units;
}

std::vector<Unit> affine_units(const FourierTarget &image) {
    const int d = image.dimension();
    std::vector<CompensatedSum> w(d);
    CompensatedSum constant;
    for (const auto &[k, c] : image.coefficients()) {
        for (int j = 0; j < d; ++j) w[j] += -c.imag() * k[j];
        constant += c.real();
    }
    std::vector<Unit> units;
    double w_l1 = 0.0;
    std::vector<double> w_values(d);
    for (int j = 0; j < d; ++j) {
        w_values[j] = w[j].value();
        w_l1 += std::abs(w_values[j]);
    }
    if (w_l1 > 0.0) {
        // u = relu(u) - relu(-u) applied to u = w_hat . x
        Unit plus, minus;
        for (int j = 0; j < d; ++j) {
            plus.alpha.push_back(w_values[j] / w_l1);
            minus.alpha.push_back(-w_values[j] / w_l1);
        }
        plus.beta = w_l1;
        minus.beta = -w_l1;
        plus.origin = minus.origin = Origin::Affine;
        units.push_back(std::move(plus));
        units.push_back(std::move(minus));
    }
    if (constant.value() != 0.0) {
        Unit unit;
        unit.alpha.assign(d, 0.0);
        unit.beta = constant.value();
        unit.bias = -1.0;
        unit.origin = Origin::Affine;
        units.push_back(std::move(unit));
    }
    return units;
}

double affine_value(const FourierTarget &image, std::span<const double> x) {
    CompensatedSum sum;
    for (const auto &[k, c] : image.coefficients()) {
        sum += c.real();
        for (std::size_t j = 0; j < x.size(); ++j) sum += -c.imag() * k[j] * x[j];
    }
    return sum.value();
}

int select_degree(int m, int dimension, int r) {
    if (m < 1) throw std::invalid_argument("select_degree: m must be >= 1");
    if (dimension < 1 || r < 1) throw std::invalid_argument("select_degree: d and r must be >= 1");
    using boost::multiprecision::cpp_int;
    // N = floor(m^{p/q}), i.e. the largest N with N^q <= m^p.
    const unsigned p = dimension + 2;
    const unsigned q = dimension * std::max(2 * r, dimension + 4);
    const cpp_int bound = boost::multiprecision::pow(cpp_int(m), p);
    long long N = static_cast<long long>(std::floor(std::pow(static_cast<double>(m), static_cast<double>(p) / q)));
    N = std::max(N, 1LL);
    while (N > 1 && boost::multiprecision::pow(cpp_int(N), q) > bound) --N;
    while (boost::multiprecision::pow(cpp_int(N + 1), q) <= bound) ++N;
    return static_cast<int>(N);
}

Construction construct_detailed(const FourierTarget &target, int r, int m, std::uint64_t seed,
                                const ConstructOptions &options) {
    if (r < 1) throw std::invalid_argument("construct: r must be >= 1");
    if (m < 1) throw std::invalid_argument("construct: m must be >= 1");
    Construction out;
    out.N = options.N_override > 0 ? options.N_override : select_degree(m, target.dimension(), r);
    out.image = apply_jackson(target, out.N, r);
    out.density = build_density(out.image);
    out.degenerate = out.density.degenerate();

    std::vector<Unit> units;
    if (!out.degenerate) {
        out.plan = build_strata(out.density, m);
        const int sampled = out.plan.total_samples();
        if (sampled > out.plan.m_prime + static_cast<int>(out.plan.strata.size()))
            throw std::logic_error("construct: stratum allocation exceeds m' + #strata");
        units = options.plain ? plain_sample(out.density, sampled, seed)
                              : stratified_sample(out.plan, out.density, seed);
    }
    for (Unit &u : affine_units(out.image)) units.push_back(std::move(u));

    NetworkMetadata meta;
    meta.v = out.density.v;
    meta.variation = out.density.variation;
    meta.N = out.N;
    meta.r = r;
    meta.seed = seed;
    meta.m_requested = m;
    out.within_budget = units.size() <= static_cast<std::size_t>(m);
    out.network = ShallowNetwork(target.dimension(), std::move(units), meta);
    return out;
}

ShallowNetwork construct(const FourierTarget &target, int r, int m, std::uint64_t seed,
                         const ConstructOptions &options) {
    return construct_detailed(target, r, m, seed, options).network;
}

} // namespace relu_jackson
