#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace relu_jackson {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Max absolute deviation of log(error) from the fitted line.
    double residual = 0.0;
};

/// Least-squares line through (log scale, log error).
SlopeFit fit_slope(const std::vector<std::pair<double, double>> &points);

double median(std::vector<double> values);

enum class ExperimentMode { JacksonRate, NetworkRate, PairedMc };

std::string to_string(ExperimentMode mode);
ExperimentMode mode_from_string(const std::string &text);

struct RateExperiment {
    ExperimentMode mode = ExperimentMode::JacksonRate;
    std::string target;            // path or corpus:<name>
    int r = 2;
    std::vector<int> sweep;        // N values (jackson-rate) or m values (network-rate)
    int m = 0;                     // paired-mc budget
    std::vector<std::uint64_t> seeds;
    int grid = 0;                  // points per axis, 0 = default
    int N_override = 0;
    std::string out;

    /// Throws std::invalid_argument when the experiment is malformed.
    void validate() const;
};

/// Key-value text: one "key = value" per line, '#' starts a comment. Keys:
/// mode, target, r, sweep (comma list), m, seeds (comma list), grid, N, out.
RateExperiment load_experiment(std::istream &in);
RateExperiment load_experiment_file(const std::string &path);

std::vector<int> parse_int_list(const std::string &text);
std::vector<std::uint64_t> parse_seed_list(const std::string &text);

struct JacksonRateRow {
    int N = 0;
    double sup_error = 0.0;
    std::optional<double> slope_so_far;
};

struct JacksonRateResult {
    std::vector<JacksonRateRow> rows;
    std::optional<SlopeFit> fit;  // empty when some error is zero
};

JacksonRateResult run_jackson_rate(const RateExperiment &exp);
void write_csv(std::ostream &out, const RateExperiment &exp, const JacksonRateResult &result);

struct NetworkRateRow {
    int m = 0;
    int N = 0;
    double v = 0.0;
    double median_error = 0.0;
    std::vector<double> errors;  // one per seed, in seed order
    bool within_budget = true;
};

struct NetworkRateResult {
    std::vector<NetworkRateRow> rows;
    std::optional<SlopeFit> fit;
};

NetworkRateResult run_network_rate(const RateExperiment &exp);
void write_csv(std::ostream &out, const RateExperiment &exp, const NetworkRateResult &result);

struct PairedRow {
    std::uint64_t seed = 0;
    double stratified_error = 0.0;
    double plain_error = 0.0;
};

struct PairedResult {
    int N = 0;
    int units = 0;
    std::vector<PairedRow> rows;
    double stratified_median = 0.0;
    double plain_median = 0.0;
};

PairedResult run_paired_mc(const RateExperiment &exp);
void write_csv(std::ostream &out, const RateExperiment &exp, const PairedResult &result);

/// Runs the experiment and returns its CSV text.
std::string run_experiment_csv(const RateExperiment &exp);

} // namespace relu_jackson
