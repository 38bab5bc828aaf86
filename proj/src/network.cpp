#include "relu_jackson/network.hpp"

#include "relu_jackson/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relu_jackson {

std::string to_string(Origin origin) { return origin == Origin::Sampled ? "sampled" : "affine"; }

Origin origin_from_string(const std::string &text) {
    if (text == "sampled") return Origin::Sampled;
    if (text == "affine") return Origin::Affine;
    throw std::invalid_argument("unknown unit origin '" + text + "'");
}

ShallowNetwork::ShallowNetwork(int dimension, std::vector<Unit> units, NetworkMetadata metadata)
    : dimension_(dimension), units_(std::move(units)), metadata_(metadata) {
    if (dimension < 1) throw std::invalid_argument("ShallowNetwork: dimension must be >= 1");
    for (const Unit &u : units_) {
        if (static_cast<int>(u.alpha.size()) != dimension)
            throw std::invalid_argument("ShallowNetwork: unit direction has wrong dimension");
    }
}

std::size_t ShallowNetwork::count(Origin origin) const {
    return static_cast<std::size_t>(
        std::count_if(units_.begin(), units_.end(), [origin](const Unit &u) { return u.origin == origin; }));
}

double ShallowNetwork::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension_) throw std::invalid_argument("evaluate: point has wrong dimension");
    double sum = 0.0;
    for (const Unit &u : units_) {
        double pre = -u.bias;
        for (int j = 0; j < dimension_; ++j) pre += u.alpha[j] * x[j];
        sum += u.beta * relu(pre);
    }
    return sum;
}

std::vector<double> ShallowNetwork::evaluate_on_grid(const EvaluationGrid &grid) const {
    if (grid.dimension() != dimension_) throw std::invalid_argument("evaluate_on_grid: grid dimension mismatch");
    std::vector<double> values(grid.size());
    const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) values[i] = evaluate(grid.point(static_cast<std::size_t>(i)));
    return values;
}

double ShallowNetwork::lipschitz_bound() const {
    CompensatedSum sum;
    for (const Unit &u : units_) {
        double l1 = 0.0;
        for (double a : u.alpha) l1 += std::abs(a);
        sum += std::abs(u.beta) * l1;
    }
    return sum.value();
}

SupErrorReport sup_error(const ShallowNetwork &net, const FourierTarget &target, const EvaluationGrid &cube_grid) {
    if (cube_grid.domain() != Domain::Cube) throw std::invalid_argument("sup_error: expected a cube grid");
    if (net.dimension() != target.dimension()) throw std::invalid_argument("sup_error: dimension mismatch");
    const std::vector<Complex> reference = evaluate_on_grid(target, cube_grid);
    const std::vector<double> approx = net.evaluate_on_grid(cube_grid);
    SupErrorReport report;
    for (std::size_t i = 0; i < approx.size(); ++i)
        report.grid_max = std::max(report.grid_max, std::abs(reference[i].real() - approx[i]));
    const double lipschitz = lipschitz_bound(target) + net.lipschitz_bound();
    report.certified_bound = report.grid_max + lipschitz * cube_grid.spacing() * cube_grid.dimension() / 2.0;
    return report;
}

const AuditCheck &AuditReport::check(const std::string &name) const {
    for (const auto &c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no audit check named " + name);
}

AuditReport audit(const ShallowNetwork &net) {
    const NetworkMetadata &meta = net.metadata();
    AuditReport report;
    report.min_sampled_bias = std::numeric_limits<double>::infinity();
    report.max_sampled_bias = -std::numeric_limits<double>::infinity();
    double max_affine_alpha = 0.0;
    double min_affine_bias = 0.0, max_affine_bias = 0.0;
    for (const Unit &u : net.units()) {
        double l1 = 0.0;
        for (double a : u.alpha) l1 += std::abs(a);
        if (u.origin == Origin::Sampled) {
            ++report.sampled_units;
            report.max_sampled_alpha_l1 = std::max(report.max_sampled_alpha_l1, l1);
            report.min_sampled_bias = std::min(report.min_sampled_bias, u.bias);
            report.max_sampled_bias = std::max(report.max_sampled_bias, u.bias);
            report.max_sampled_beta = std::max(report.max_sampled_beta, std::abs(u.beta));
        } else {
            ++report.affine_units;
            max_affine_alpha = std::max(max_affine_alpha, l1);
            min_affine_bias = std::min(min_affine_bias, u.bias);
            max_affine_bias = std::max(max_affine_bias, u.bias);
        }
    }
    if (report.sampled_units == 0) report.min_sampled_bias = report.max_sampled_bias = 0.0;

    const double m = std::max(meta.m_requested, 1);
    report.beta_bound = 8.0 * kPi * kPi * meta.variation / m;
    // One part in 1e12 absorbs rounding in v <= 2 pi^2 v_{J_N,2}.
    const double beta_limit = report.beta_bound * (1.0 + 1e-12);

    auto add = [&report](std::string name, double measured, double limit, bool pass) {
        report.checks.push_back({std::move(name), measured, limit, pass});
        report.pass = report.pass && pass;
    };
    add("sampled_alpha_l1", report.max_sampled_alpha_l1, 1.0, report.max_sampled_alpha_l1 <= 1.0);
    add("sampled_bias_min", report.min_sampled_bias, 0.0, report.min_sampled_bias >= 0.0);
    add("sampled_bias_max", report.max_sampled_bias, 1.0, report.max_sampled_bias <= 1.0);
    add("sampled_beta", report.max_sampled_beta, report.beta_bound, report.max_sampled_beta <= beta_limit);
    add("affine_alpha_l1", max_affine_alpha, 1.0, max_affine_alpha <= 1.0);
    add("affine_bias_min", min_affine_bias, -1.0, min_affine_bias >= -1.0);
    add("affine_bias_max", max_affine_bias, 1.0, max_affine_bias <= 1.0);
    add("affine_count", static_cast<double>(report.affine_units), 5.0, report.affine_units <= 5);
    const bool budget_applies = meta.m_requested >= 20;
    add("unit_count", static_cast<double>(net.size()), static_cast<double>(meta.m_requested),
        !budget_applies || net.size() <= static_cast<std::size_t>(meta.m_requested));
    return report;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_network(std::ostream &out, const ShallowNetwork &net) {
    const NetworkMetadata &meta = net.metadata();
    out << "# schema=network@1\n";
    out << "# m_requested=" << meta.m_requested << " r=" << meta.r << " seed=" << meta.seed
        << " variation=" << format_double(meta.variation) << '\n';
    out << "d=" << net.dimension() << " m=" << net.size() << " v=" << format_double(meta.v) << " N=" << meta.N
        << '\n';
    for (const Unit &u : net.units()) {
        for (double a : u.alpha) out << format_double(a) << ',';
        out << format_double(u.beta) << ',' << format_double(u.bias) << ',' << to_string(u.origin) << '\n';
    }
}

namespace {

std::vector<std::pair<std::string, std::string>> key_values(const std::string &line) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        out.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    return out;
}

double parse_double(const std::string &text) {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::runtime_error("malformed number '" + text + "'");
    return value;
}

} // namespace

ShallowNetwork read_network(std::istream &in) {
    NetworkMetadata meta;
    int dimension = 0;
    std::size_t declared_units = 0;
    bool have_header = false;
    std::vector<Unit> units;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            for (const auto &[key, value] : key_values(line.substr(1))) {
                if (key == "m_requested") meta.m_requested = std::stoi(value);
                else if (key == "r") meta.r = std::stoi(value);
                else if (key == "seed") meta.seed = std::stoull(value);
                else if (key == "variation") meta.variation = parse_double(value);
            }
            continue;
        }
        if (!have_header) {
            for (const auto &[key, value] : key_values(line)) {
                if (key == "d") dimension = std::stoi(value);
                else if (key == "m") declared_units = std::stoull(value);
                else if (key == "v") meta.v = parse_double(value);
                else if (key == "N") meta.N = std::stoi(value);
            }
            if (dimension < 1) throw std::runtime_error("read_network: header must declare d >= 1");
            have_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != static_cast<std::size_t>(dimension) + 3)
            throw std::runtime_error("read_network: malformed row '" + line + "'");
        Unit u;
        for (int j = 0; j < dimension; ++j) u.alpha.push_back(parse_double(fields[j]));
        u.beta = parse_double(fields[dimension]);
        u.bias = parse_double(fields[dimension + 1]);
        u.origin = origin_from_string(fields[dimension + 2]);
        units.push_back(std::move(u));
    }
    if (!have_header) throw std::runtime_error("read_network: missing header");
    if (units.size() != declared_units) throw std::runtime_error("read_network: unit count does not match header");
    return ShallowNetwork(dimension, std::move(units), meta);
}

void save_network(const std::string &path, const ShallowNetwork &net) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_network(out, net);
}

ShallowNetwork load_network(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open network file " + path);
    return read_network(in);
}

} // namespace relu_jackson
