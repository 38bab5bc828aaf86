#include "relu_jackson/targets.hpp"

#include "relu_jackson/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relu_jackson {

int l1_norm(const Frequency &k) {
    int s = 0;
    for (int c : k) s += std::abs(c);
    return s;
}

int linf_norm(const Frequency &k) {
    int s = 0;
    for (int c : k) s = std::max(s, std::abs(c));
    return s;
}

Frequency negate(const Frequency &k) {
    Frequency out(k.size());
    std::transform(k.begin(), k.end(), out.begin(), [](int c) { return -c; });
    return out;
}

namespace {

// First nonzero component positive.
bool is_positive(const Frequency &k) {
    for (int c : k) {
        if (c != 0) return c > 0;
    }
    return false;
}

bool is_zero(const Frequency &k) {
    return std::all_of(k.begin(), k.end(), [](int c) { return c == 0; });
}

} // namespace

FourierTarget::FourierTarget(int dimension, CoefficientMap coefficients, int smoothness)
    : dimension_(dimension), smoothness_(smoothness) {
    if (dimension < 1) throw std::invalid_argument("FourierTarget: dimension must be >= 1");
    if (smoothness < 0) throw std::invalid_argument("FourierTarget: smoothness must be >= 0");
    for (auto &[k, c] : coefficients) {
        if (static_cast<int>(k.size()) != dimension)
            throw std::invalid_argument("FourierTarget: frequency has wrong dimension");
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("FourierTarget: non-finite coefficient");
    }
    for (const auto &[k, c] : coefficients) {
        if (c == Complex{}) continue;
        const auto it = coefficients.find(negate(k));
        const Complex partner = it == coefficients.end() ? Complex{} : it->second;
        const double scale = 1.0 + std::abs(c);
        if (std::abs(partner - std::conj(c)) > 1e-12 * scale)
            throw std::invalid_argument("FourierTarget: coefficients are not Hermitian-symmetric");
    }
    // Store an exactly Hermitian copy: the positive half is authoritative.
    for (const auto &[k, c] : coefficients) {
        if (c == Complex{}) continue;
        if (is_zero(k)) {
            if (c.real() != 0.0) coefficients_[k] = Complex(c.real(), 0.0);
        } else if (is_positive(k)) {
            coefficients_[k] = c;
            coefficients_[negate(k)] = std::conj(c);
        }
    }
    for (const auto &[k, c] : coefficients_) support_radius_ = std::max(support_radius_, linf_norm(k));
}

Complex FourierTarget::coefficient(const Frequency &k) const {
    const auto it = coefficients_.find(k);
    return it == coefficients_.end() ? Complex{} : it->second;
}

EvaluationGrid::EvaluationGrid(int dimension, int points_per_axis, Domain domain)
    : dimension_(dimension), points_(points_per_axis), domain_(domain) {
    if (dimension < 1) throw std::invalid_argument("EvaluationGrid: dimension must be >= 1");
    if (points_per_axis < 2) throw std::invalid_argument("EvaluationGrid: need at least 2 points per axis");
    spacing_ = domain == Domain::Torus ? kTwoPi / points_per_axis : 2.0 / (points_per_axis - 1);
    size_ = 1;
    for (int j = 0; j < dimension; ++j) size_ *= static_cast<std::size_t>(points_per_axis);
}

double EvaluationGrid::coordinate(int index) const {
    if (domain_ == Domain::Torus) return -kPi + kTwoPi * index / points_;
    if (index == points_ - 1) return 1.0;
    return -1.0 + 2.0 * index / (points_ - 1);
}

std::vector<double> EvaluationGrid::axis() const {
    std::vector<double> out(points_);
    for (int i = 0; i < points_; ++i) out[i] = coordinate(i);
    return out;
}

std::vector<double> EvaluationGrid::point(std::size_t flat_index) const {
    std::vector<double> x(dimension_);
    for (int j = dimension_ - 1; j >= 0; --j) {
        x[j] = coordinate(static_cast<int>(flat_index % points_));
        flat_index /= points_;
    }
    return x;
}

int default_points_per_axis(int dimension) {
    if (dimension <= 1) return 4096;
    if (dimension == 2) return 512;
    return 96;
}

EvaluationGrid resolved_torus_grid(const FourierTarget &target, int requested_points) {
    const int d = target.dimension();
    if (requested_points > 0) {
        EvaluationGrid grid(d, requested_points, Domain::Torus);
        require_resolved(target, grid);
        return grid;
    }
    int points = default_points_per_axis(d);
    if (points <= 2 * target.support_radius()) points = 2 * target.support_radius() + 2;
    return EvaluationGrid(d, points, Domain::Torus);
}

FourierTarget make_trig_poly(int dimension, const CoefficientMap &coefficients, bool auto_symmetrize) {
    if (dimension < 1) throw std::invalid_argument("make_trig_poly: dimension must be >= 1");
    if (!auto_symmetrize) return FourierTarget(dimension, coefficients);
    CoefficientMap symmetric;
    for (const auto &[k, c] : coefficients) {
        if (static_cast<int>(k.size()) != dimension)
            throw std::invalid_argument("make_trig_poly: frequency has wrong dimension");
        const Frequency minus = negate(k);
        const auto it = coefficients.find(minus);
        const Complex partner = it == coefficients.end() ? Complex{} : it->second;
        // Real part of the function: (f + conj f) / 2.
        const Complex value = 0.5 * (c + std::conj(partner));
        symmetric[k] = value;
        symmetric[minus] = std::conj(value);
    }
    return FourierTarget(dimension, std::move(symmetric));
}

FourierTarget make_decay_target(int dimension, double decay, int max_frequency, std::uint64_t seed) {
    if (dimension < 1) throw std::invalid_argument("make_decay_target: dimension must be >= 1");
    if (!(decay > dimension)) throw std::invalid_argument("make_decay_target: decay exponent must exceed d");
    if (max_frequency < 1) throw std::invalid_argument("make_decay_target: K_max must be >= 1");

    std::mt19937_64 engine = substream(seed, 0);
    CoefficientMap coefficients;
    Frequency k(dimension, -max_frequency);
    while (true) {
        if (is_zero(k)) {
            coefficients[k] = 1.0;
        } else if (is_positive(k)) {
            const double modulus = std::pow(1.0 + l1_norm(k), -decay);
            const double phase = kTwoPi * uniform01(engine) - kPi;
            const Complex c = std::polar(modulus, phase);
            coefficients[k] = c;
            coefficients[negate(k)] = std::conj(c);
        }
        int j = dimension - 1;
        while (j >= 0 && k[j] == max_frequency) k[j--] = -max_frequency;
        if (j < 0) break;
        ++k[j];
    }
    // Largest integer r with r < s - d.
    const int smoothness = std::max(0, static_cast<int>(std::ceil(decay - dimension)) - 1);
    return FourierTarget(dimension, std::move(coefficients), smoothness);
}

Complex evaluate_complex(const FourierTarget &target, std::span<const double> x) {
    if (static_cast<int>(x.size()) != target.dimension())
        throw std::invalid_argument("evaluate: point has wrong dimension");
    Complex sum{};
    for (const auto &[k, c] : target.coefficients()) {
        double phase = 0.0;
        for (std::size_t j = 0; j < k.size(); ++j) phase += k[j] * x[j];
        sum += c * std::polar(1.0, phase);
    }
    return sum;
}

double evaluate(const FourierTarget &target, std::span<const double> x) { return evaluate_complex(target, x).real(); }

namespace {

// e^{i k x_g} for k in [-K, K] and every axis coordinate, row g, column k + K.
std::vector<Complex> axis_exponentials(const EvaluationGrid &grid, int radius) {
    const int points = grid.points_per_axis();
    const int width = 2 * radius + 1;
    std::vector<Complex> table(static_cast<std::size_t>(points) * width);
    if (grid.domain() == Domain::Torus) {
        // x_g = -pi + 2 pi g / G, so e^{i k x_g} = (-1)^k e^{2 pi i (k g mod G) / G}.
        std::vector<Complex> roots(points);
        for (int m = 0; m < points; ++m) roots[m] = std::polar(1.0, kTwoPi * m / points);
        for (int g = 0; g < points; ++g) {
            for (int k = -radius; k <= radius; ++k) {
                const long long idx = ((static_cast<long long>(k) * g) % points + points) % points;
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                table[static_cast<std::size_t>(g) * width + (k + radius)] = sign * roots[idx];
            }
        }
    } else {
        for (int g = 0; g < points; ++g) {
            const double x = grid.coordinate(g);
            for (int k = -radius; k <= radius; ++k)
                table[static_cast<std::size_t>(g) * width + (k + radius)] = std::polar(1.0, k * x);
        }
    }
    return table;
}

} // namespace

std::vector<Complex> evaluate_series_on_grid(int dimension, const CoefficientMap &coefficients,
                                             const EvaluationGrid &grid) {
    if (grid.dimension() != dimension) throw std::invalid_argument("evaluate_on_grid: grid dimension mismatch");
    if (coefficients.empty()) return std::vector<Complex>(grid.size());

    int radius = 0;
    for (const auto &[k, c] : coefficients) radius = std::max(radius, linf_norm(k));
    const std::size_t width = 2 * radius + 1;
    const std::size_t points = grid.points_per_axis();

    std::vector<std::size_t> dims(dimension, width);
    std::size_t total = 1;
    for (int j = 0; j < dimension; ++j) total *= width;
    std::vector<Complex> tensor(total);
    for (const auto &[k, c] : coefficients) {
        std::size_t idx = 0;
        for (int j = 0; j < dimension; ++j) idx = idx * width + static_cast<std::size_t>(k[j] + radius);
        tensor[idx] = c;
    }

    const std::vector<Complex> table = axis_exponentials(grid, radius);
    for (int axis = 0; axis < dimension; ++axis) {
        std::size_t outer = 1, inner = 1;
        for (int j = 0; j < axis; ++j) outer *= dims[j];
        for (int j = axis + 1; j < dimension; ++j) inner *= dims[j];
        std::vector<Complex> next(outer * points * inner);
        const long long rows = static_cast<long long>(outer * points);
#pragma omp parallel for schedule(static)
        for (long long row = 0; row < rows; ++row) {
            const std::size_t o = static_cast<std::size_t>(row) / points;
            const std::size_t g = static_cast<std::size_t>(row) % points;
            Complex *dst = &next[(o * points + g) * inner];
            const Complex *weights = &table[g * width];
            for (std::size_t k = 0; k < width; ++k) {
                const Complex w = weights[k];
                const Complex *src = &tensor[(o * width + k) * inner];
                for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
            }
        }
        tensor = std::move(next);
        dims[axis] = points;
    }
    return tensor;
}

std::vector<Complex> evaluate_on_grid(const FourierTarget &target, const EvaluationGrid &grid) {
    return evaluate_series_on_grid(target.dimension(), target.coefficients(), grid);
}

double grid_max_abs(std::span<const Complex> values) {
    double m = 0.0;
    for (const Complex &v : values) m = std::max(m, std::abs(v));
    return m;
}

double grid_max_abs(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

void require_resolved(const FourierTarget &target, const EvaluationGrid &grid) {
    if (grid.dimension() != target.dimension()) throw std::invalid_argument("grid dimension mismatch");
    if (grid.domain() != Domain::Torus) throw std::invalid_argument("expected a torus grid");
    if (grid.points_per_axis() <= 2 * target.support_radius())
        throw std::invalid_argument("grid does not resolve the target: need G > 2*K_max");
}

std::vector<std::vector<int>> multi_indices(int dimension, int max_order) {
    std::vector<std::vector<int>> out;
    if (max_order < 0) return out;
    std::vector<int> alpha(dimension, 0);
    while (true) {
        int order = 0;
        for (int a : alpha) order += a;
        if (order <= max_order) out.push_back(alpha);
        int j = dimension - 1;
        while (j >= 0 && alpha[j] == max_order) alpha[j--] = 0;
        if (j < 0) break;
        ++alpha[j];
    }
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        int oa = 0, ob = 0;
        for (int v : a) oa += v;
        for (int v : b) ob += v;
        return oa < ob;
    });
    return out;
}

double holder_norm(const FourierTarget &target, int r, const EvaluationGrid &grid) {
    if (r < 0) throw std::invalid_argument("holder_norm: r must be >= 0");
    require_resolved(target, grid);
    double norm = 0.0;
    for (const auto &alpha : multi_indices(target.dimension(), r)) {
        CoefficientMap derivative;
        for (const auto &[k, c] : target.coefficients()) {
            // prod_j (i k_j)^{alpha_j} = i^{|alpha|} prod_j k_j^{alpha_j}
            double magnitude = 1.0;
            int order = 0;
            for (std::size_t j = 0; j < k.size(); ++j) {
                for (int p = 0; p < alpha[j]; ++p) magnitude *= k[j];
                order += alpha[j];
            }
            if (magnitude == 0.0) continue;
            static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            derivative[k] = c * magnitude * kIPowers[order % 4];
        }
        norm = std::max(norm, grid_max_abs(evaluate_series_on_grid(target.dimension(), derivative, grid)));
    }
    return norm;
}

double lipschitz_bound(const FourierTarget &target) {
    CompensatedSum sum;
    for (const auto &[k, c] : target.coefficients()) sum += std::abs(c) * l1_norm(k);
    return sum.value();
}

void write_target(std::ostream &out, const FourierTarget &target) {
    out << "d=" << target.dimension() << " r=";
    if (target.smoothness() == kUnboundedSmoothness)
        out << "inf";
    else
        out << target.smoothness();
    out << '\n';
    char buf[64];
    for (const auto &[k, c] : target.coefficients()) {
        for (int component : k) out << component << ' ';
        std::snprintf(buf, sizeof buf, "%.17g %.17g", c.real(), c.imag());
        out << buf << '\n';
    }
}

FourierTarget read_target(std::istream &in) {
    std::string line;
    int dimension = 0;
    int smoothness = kUnboundedSmoothness;
    bool have_header = false;
    CoefficientMap coefficients;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string token;
            while (fields >> token) {
                if (token.rfind("d=", 0) == 0) {
                    dimension = std::stoi(token.substr(2));
                } else if (token.rfind("r=", 0) == 0) {
                    const std::string value = token.substr(2);
                    smoothness = value == "inf" ? kUnboundedSmoothness : std::stoi(value);
                } else {
                    throw std::runtime_error("read_target: unknown header token '" + token + "'");
                }
            }
            if (dimension < 1) throw std::runtime_error("read_target: header must declare d >= 1");
            have_header = true;
            continue;
        }
        Frequency k(dimension);
        double re = 0.0, im = 0.0;
        for (int j = 0; j < dimension; ++j) {
            if (!(fields >> k[j])) throw std::runtime_error("read_target: malformed line '" + line + "'");
        }
        if (!(fields >> re >> im)) throw std::runtime_error("read_target: malformed line '" + line + "'");
        if (coefficients.contains(k)) throw std::runtime_error("read_target: duplicate frequency");
        coefficients[k] = Complex(re, im);
    }
    if (!have_header) throw std::runtime_error("read_target: missing header");
    return FourierTarget(dimension, std::move(coefficients), smoothness);
}

void save_target(const std::string &path, const FourierTarget &target) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_target(out, target);
}

FourierTarget load_target(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open target file " + path);
    return read_target(in);
}

std::vector<CorpusEntry> standard_corpus() {
    std::vector<CorpusEntry> corpus;
    corpus.push_back({"const1", make_trig_poly(1, {{{0}, 1.0}})});
    corpus.push_back({"cos1", make_trig_poly(1, {{{1}, 0.5}, {{-1}, 0.5}})});
    corpus.push_back({"decay1", make_decay_target(1, 3.2, 64, 1)});
    corpus.push_back({"smooth1", make_decay_target(1, 6.0, 16, 11)});
    corpus.push_back({"const2", make_trig_poly(2, {{{0, 0}, 1.0}})});
    corpus.push_back({"sin2", make_trig_poly(2, {{{1, 1}, Complex(0, -0.5)}, {{-1, -1}, Complex(0, 0.5)}})});
    corpus.push_back({"decay2", make_decay_target(2, 4.5, 16, 2)});
    corpus.push_back({"smooth2", make_decay_target(2, 7.0, 8, 12)});
    return corpus;
}

FourierTarget corpus_target(const std::string &name) {
    for (auto &entry : standard_corpus()) {
        if (entry.name == name) return entry.target;
    }
    throw std::invalid_argument("unknown corpus target '" + name + "'");
}

FourierTarget resolve_target(const std::string &spec) {
    static const std::string prefix = "corpus:";
    if (spec.rfind(prefix, 0) == 0) return corpus_target(spec.substr(prefix.size()));
    return load_target(spec);
}

} // namespace relu_jackson
