#include "relu_jackson/harness.hpp"

#include "relu_jackson/jackson.hpp"
#include "relu_jackson/network.hpp"
#include "relu_jackson/sampler.hpp"
#include "relu_jackson/targets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relu_jackson {

SlopeFit fit_slope(const std::vector<std::pair<double, double>> &points) {
    if (points.size() < 2) throw std::invalid_argument("fit_slope: need at least 2 points");
    std::vector<double> xs, ys;
    for (const auto &[scale, error] : points) {
        if (!(scale > 0.0) || !(error > 0.0)) throw std::invalid_argument("fit_slope: values must be positive");
        xs.push_back(std::log(scale));
        ys.push_back(std::log(error));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: scales must not all coincide");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residual = std::max(fit.residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
    return fit;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string to_string(ExperimentMode mode) {
    switch (mode) {
    case ExperimentMode::JacksonRate: return "jackson-rate";
    case ExperimentMode::NetworkRate: return "network-rate";
    case ExperimentMode::PairedMc: return "paired-mc";
    }
    return "unknown";
}

ExperimentMode mode_from_string(const std::string &text) {
    if (text == "jackson-rate") return ExperimentMode::JacksonRate;
    if (text == "network-rate") return ExperimentMode::NetworkRate;
    if (text == "paired-mc") return ExperimentMode::PairedMc;
    throw std::invalid_argument("unknown experiment mode '" + text + "'");
}

void RateExperiment::validate() const {
    if (target.empty()) throw std::invalid_argument("experiment: target is required");
    if (r < 1) throw std::invalid_argument("experiment: r must be >= 1");
    if (mode != ExperimentMode::PairedMc) {
        if (sweep.size() < 4) throw std::invalid_argument("experiment: need at least 4 sweep values");
        for (std::size_t i = 1; i < sweep.size(); ++i) {
            if (sweep[i] <= sweep[i - 1]) throw std::invalid_argument("experiment: sweep must be strictly increasing");
        }
        if (sweep.front() < 1) throw std::invalid_argument("experiment: sweep values must be positive");
    } else if (m < 8) {
        throw std::invalid_argument("experiment: paired-mc needs m >= 8");
    }
    if (mode != ExperimentMode::JacksonRate && seeds.empty())
        throw std::invalid_argument("experiment: seeds are required for stochastic modes");
}

namespace {

std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

int parse_int(const std::string &text) {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument("malformed integer '" + text + "'");
    return value;
}

} // namespace

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_int(item));
    }
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string &text) {
    std::vector<std::uint64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t used = 0;
        const unsigned long long value = std::stoull(item, &used);
        if (used != item.size() || item[0] == '-') throw std::invalid_argument("malformed seed '" + item + "'");
        out.push_back(value);
    }
    return out;
}

RateExperiment load_experiment(std::istream &in) {
    RateExperiment exp;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("experiment line " + std::to_string(line_number) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "mode") exp.mode = mode_from_string(value);
        else if (key == "target") exp.target = value;
        else if (key == "r") exp.r = parse_int(value);
        else if (key == "sweep") exp.sweep = parse_int_list(value);
        else if (key == "m") exp.m = parse_int(value);
        else if (key == "seeds") exp.seeds = parse_seed_list(value);
        else if (key == "grid") exp.grid = parse_int(value);
        else if (key == "N") exp.N_override = parse_int(value);
        else if (key == "out") exp.out = value;
        else throw std::invalid_argument("experiment line " + std::to_string(line_number) + ": unknown key '" + key + "'");
    }
    return exp;
}

RateExperiment load_experiment_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment file " + path);
    return load_experiment(in);
}

namespace {

// Cube grid for network errors. d = 2 uses a coarser default than the torus
// grids because each point costs one pass over all units.
int cube_points(int dimension, int requested) {
    if (requested > 0) return requested;
    if (dimension == 1) return 4096;
    if (dimension == 2) return 129;
    return 33;
}

void write_fit(std::ostream &out, const std::optional<SlopeFit> &fit, double theory) {
    if (fit) {
        out << "# fit slope=" << format_double(fit->slope) << " intercept=" << format_double(fit->intercept)
            << " residual=" << format_double(fit->residual);
    } else {
        out << "# fit slope=undefined";
    }
    out << " theory=" << format_double(theory) << " tolerance=0.3\n";
}

void write_header(std::ostream &out, const std::string &schema, const RateExperiment &exp) {
    out << "# schema=" << schema << "@1\n";
    out << "# target=" << exp.target << " r=" << exp.r;
    if (exp.grid > 0) out << " grid=" << exp.grid;
    if (exp.N_override > 0) out << " N=" << exp.N_override;
    out << '\n';
}

double network_theory_exponent(int d, int r) {
    return -static_cast<double>(r) * (d + 2) / (static_cast<double>(d) * std::max(2 * r, d + 4));
}

} // namespace

JacksonRateResult run_jackson_rate(const RateExperiment &exp) {
    const FourierTarget target = resolve_target(exp.target);
    const EvaluationGrid grid = resolved_torus_grid(target, exp.grid);
    JacksonRateResult result;
    std::vector<std::pair<double, double>> points;
    bool positive = true;
    for (int N : exp.sweep) {
        JacksonRateRow row;
        row.N = N;
        row.sup_error = jackson_sup_error(target, N, exp.r, grid);
        positive = positive && row.sup_error > 0.0;
        points.emplace_back(N, row.sup_error);
        if (positive && points.size() >= 2) row.slope_so_far = fit_slope(points).slope;
        result.rows.push_back(row);
    }
    if (positive && points.size() >= 2) result.fit = fit_slope(points);
    return result;
}

void write_csv(std::ostream &out, const RateExperiment &exp, const JacksonRateResult &result) {
    write_header(out, "jackson-rate", exp);
    out << "N,sup_error,slope_so_far\n";
    for (const JacksonRateRow &row : result.rows) {
        out << row.N << ',' << format_double(row.sup_error) << ','
            << (row.slope_so_far ? format_double(*row.slope_so_far) : std::string("NA")) << '\n';
    }
    write_fit(out, result.fit, -static_cast<double>(exp.r));
}

NetworkRateResult run_network_rate(const RateExperiment &exp) {
    const FourierTarget target = resolve_target(exp.target);
    const int d = target.dimension();
    const EvaluationGrid grid(d, cube_points(d, exp.grid), Domain::Cube);
    NetworkRateResult result;
    std::vector<std::pair<double, double>> points;
    bool positive = true;
    for (int m : exp.sweep) {
        NetworkRateRow row;
        row.m = m;
        ConstructOptions options;
        options.N_override = exp.N_override;
        for (std::uint64_t seed : exp.seeds) {
            const Construction c = construct_detailed(target, exp.r, m, seed, options);
            row.N = c.N;
            row.v = c.density.v;
            row.within_budget = row.within_budget && c.within_budget;
            row.errors.push_back(sup_error(c.network, target, grid).grid_max);
        }
        row.median_error = median(row.errors);
        positive = positive && row.median_error > 0.0;
        points.emplace_back(m, row.median_error);
        result.rows.push_back(std::move(row));
    }
    if (positive) result.fit = fit_slope(points);
    return result;
}

void write_csv(std::ostream &out, const RateExperiment &exp, const NetworkRateResult &result) {
    write_header(out, "network-rate", exp);
    out << "m,N_selected,v,median_error";
    for (std::uint64_t seed : exp.seeds) out << ",error_seed" << seed;
    out << ",within_budget\n";
    for (const NetworkRateRow &row : result.rows) {
        out << row.m << ',' << row.N << ',' << format_double(row.v) << ',' << format_double(row.median_error);
        for (double e : row.errors) out << ',' << format_double(e);
        out << ',' << (row.within_budget ? 1 : 0) << '\n';
    }
    const int d = resolve_target(exp.target).dimension();
    write_fit(out, result.fit, network_theory_exponent(d, exp.r));
}

PairedResult run_paired_mc(const RateExperiment &exp) {
    const FourierTarget target = resolve_target(exp.target);
    const int d = target.dimension();
    const EvaluationGrid grid(d, cube_points(d, exp.grid), Domain::Cube);
    PairedResult result;
    std::vector<double> stratified, plain;
    for (std::uint64_t seed : exp.seeds) {
        ConstructOptions options;
        options.N_override = exp.N_override;
        const Construction a = construct_detailed(target, exp.r, exp.m, seed, options);
        options.plain = true;
        const Construction b = construct_detailed(target, exp.r, exp.m, seed, options);
        result.N = a.N;
        result.units = static_cast<int>(a.network.size());
        PairedRow row;
        row.seed = seed;
        row.stratified_error = sup_error(a.network, target, grid).grid_max;
        row.plain_error = sup_error(b.network, target, grid).grid_max;
        stratified.push_back(row.stratified_error);
        plain.push_back(row.plain_error);
        result.rows.push_back(row);
    }
    result.stratified_median = median(stratified);
    result.plain_median = median(plain);
    return result;
}

void write_csv(std::ostream &out, const RateExperiment &exp, const PairedResult &result) {
    write_header(out, "paired-mc", exp);
    out << "# m=" << exp.m << " N=" << result.N << " units=" << result.units << '\n';
    out << "seed,stratified_error,plain_error\n";
    for (const PairedRow &row : result.rows)
        out << row.seed << ',' << format_double(row.stratified_error) << ',' << format_double(row.plain_error) << '\n';
    out << "# median stratified=" << format_double(result.stratified_median)
        << " plain=" << format_double(result.plain_median) << '\n';
}

std::string run_experiment_csv(const RateExperiment &exp) {
    exp.validate();
    std::ostringstream out;
    switch (exp.mode) {
    case ExperimentMode::JacksonRate: write_csv(out, exp, run_jackson_rate(exp)); break;
    case ExperimentMode::NetworkRate: write_csv(out, exp, run_network_rate(exp)); break;
    case ExperimentMode::PairedMc: write_csv(out, exp, run_paired_mc(exp)); break;
    }
    return out.str();
}

} // namespace relu_jackson
