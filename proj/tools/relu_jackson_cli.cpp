// relu-jackson: command-line front end for kernels, spectral checks, network
// construction and the rate experiments.

#include "relu_jackson/harness.hpp"
#include "relu_jackson/jackson.hpp"
#include "relu_jackson/network.hpp"
#include "relu_jackson/numeric.hpp"
#include "relu_jackson/sampler.hpp"
#include "relu_jackson/spectral.hpp"
#include "relu_jackson/targets.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace relu_jackson;

namespace {

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

std::string kernel_csv(int N, int r) {
    const JacksonKernel1D kernel = build_kernel(N, r);
    const JacksonMultiplier multiplier = multiplier_from_kernel(kernel);
    std::ostringstream out;
    out << "# schema=kernel@1\n# N=" << N << " r=" << r << " M=" << kernel.M() << " degree=" << kernel.degree()
        << '\n';
    out << "k,a_tilde,a_multiplier\n";
    for (int k = -N; k <= N; ++k)
        out << k << ',' << format_double(kernel.at(k)) << ',' << format_double(multiplier.axis_at(k)) << '\n';
    return out.str();
}

std::string spectral_csv(const std::string &target_spec, int r, int L, int grid_points) {
    const FourierTarget target = resolve_target(target_spec);
    const SpectralLevels levels = analyze_levels(target, r, L, resolved_torus_grid(target, grid_points));
    std::ostringstream out;
    out << "# schema=spectral@1\n# target=" << target_spec << " r=" << r << " L=" << L
        << " holder_norm=" << format_double(levels.holder_norm) << '\n';
    out << "level,sup_norm,shell_sum,parseval_residual,c6_lhs,c6_rhs\n";
    for (const LevelSummary &s : levels.levels) {
        out << s.level << ',' << format_double(s.sup_norm) << ',' << format_double(s.shell_sum) << ','
            << format_double(s.parseval_residual) << ',' << format_double(s.c6.lhs) << ','
            << format_double(s.c6.rhs) << '\n';
    }
    return out.str();
}

std::string identity_csv(int samples, double cmax, std::uint64_t seed, int panels, double &worst) {
    std::mt19937_64 engine = substream(seed, 0);
    std::ostringstream out;
    out << "# schema=identity@1\n# samples=" << samples << " cmax=" << format_double(cmax) << " panels=" << panels
        << '\n';
    out << "z,c,residual\n";
    worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double c = cmax * uniform01(engine);
        const double z = (2.0 * uniform01(engine) - 1.0) * c;
        const double residual = identity_residual(z, c, panels);
        worst = std::max(worst, residual);
        out << format_double(z) << ',' << format_double(c) << ',' << format_double(residual) << '\n';
    }
    out << "# max_residual=" << format_double(worst) << '\n';
    return out.str();
}

std::vector<std::uint64_t> seeds_or_default(const std::string &text) {
    return text.empty() ? std::vector<std::uint64_t>{1} : parse_seed_list(text);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Jackson-operator construction of shallow ReLU networks"};
    app.require_subcommand(1);

    int N = 8, r = 2, L = 6, m = 256, grid = 0, samples = 100, panels = 1 << 14;
    double cmax = 10.0;
    bool plain = false;
    std::string target, seed_text, out, config, dump, sweep_text;

    auto *kernel = app.add_subcommand("kernel", "Jackson kernel and multiplier coefficients");
    kernel->add_option("--N", N, "degree parameter")->check(CLI::PositiveNumber);
    kernel->add_option("--r", r, "order")->check(CLI::PositiveNumber);
    kernel->add_option("--dump", dump, "CSV output path (default stdout)");

    auto *spectral = app.add_subcommand("spectral", "level operators, shell sums and the C6 bound");
    spectral->add_option("--target", target, "target file or corpus:<name>")->required();
    spectral->add_option("--r", r)->check(CLI::PositiveNumber);
    spectral->add_option("--L", L)->check(CLI::NonNegativeNumber);
    spectral->add_option("--grid", grid, "torus points per axis");
    spectral->add_option("--out", out);

    auto *build = app.add_subcommand("construct", "build a network and write it as CSV");
    build->add_option("--target", target)->required();
    build->add_option("--r", r)->check(CLI::PositiveNumber);
    build->add_option("--m", m)->check(CLI::PositiveNumber);
    build->add_option("--seed", seed_text);
    build->add_option("--N", N, "override the degree selection rule");
    build->add_flag("--plain", plain, "unstratified sampling");
    build->add_option("--out", out);

    auto add_experiment = [&](const std::string &name, const std::string &help) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", config, "key = value experiment file");
        sub->add_option("--target", target);
        sub->add_option("--r", r)->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed_text, "comma-separated seeds");
        sub->add_option("--grid", grid);
        sub->add_option("--out", out);
        return sub;
    };
    auto *jackson_rate = add_experiment("jackson-rate", "Jackson error against N");
    jackson_rate->add_option("--sweep", sweep_text, "comma-separated N values");
    auto *network_rate = add_experiment("network-rate", "network error against m");
    network_rate->add_option("--sweep", sweep_text, "comma-separated m values");
    network_rate->add_option("--N", N, "fixed degree instead of the selection rule");
    auto *paired = add_experiment("paired-mc", "stratified against plain sampling");
    paired->add_option("--m", m)->check(CLI::PositiveNumber);

    auto *identity = app.add_subcommand("verify-identity", "random sweep of the ReLU identity for e^{iz}");
    identity->add_option("--samples", samples)->check(CLI::PositiveNumber);
    identity->add_option("--cmax", cmax)->check(CLI::PositiveNumber);
    identity->add_option("--panels", panels)->check(CLI::Range(2, 1 << 26));
    identity->add_option("--seed", seed_text);
    identity->add_option("--out", out);

    auto *exporter = app.add_subcommand("export-target", "write a target in the plain-text format");
    exporter->add_option("--target", target)->required();
    exporter->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernel->parsed()) {
            emit(dump, kernel_csv(N, r));
        } else if (spectral->parsed()) {
            emit(out, spectral_csv(target, r, L, grid));
        } else if (build->parsed()) {
            const std::uint64_t seed = seeds_or_default(seed_text).front();
            ConstructOptions options;
            options.N_override = build->count("--N") ? N : 0;
            options.plain = plain;
            const Construction c = construct_detailed(resolve_target(target), r, m, seed, options);
            std::ostringstream text;
            write_network(text, c.network);
            emit(out, text.str());
            const AuditReport report = audit(c.network);
            std::cerr << "units=" << c.network.size() << " N=" << c.N << " v=" << format_double(c.density.v)
                      << " strata=" << c.plan.strata.size() << " audit=" << (report.pass ? "pass" : "FAIL")
                      << (c.within_budget ? "" : " over-budget") << '\n';
            if (!report.pass) return 2;
        } else if (jackson_rate->parsed() || network_rate->parsed() || paired->parsed()) {
            RateExperiment exp;
            if (!config.empty()) exp = load_experiment_file(config);
            exp.mode = jackson_rate->parsed()   ? ExperimentMode::JacksonRate
                       : network_rate->parsed() ? ExperimentMode::NetworkRate
                                                : ExperimentMode::PairedMc;
            auto *sub = jackson_rate->parsed() ? jackson_rate : network_rate->parsed() ? network_rate : paired;
            if (sub->count("--target")) exp.target = target;
            if (sub->count("--r")) exp.r = r;
            if (sub->count("--seed")) exp.seeds = parse_seed_list(seed_text);
            if (sub->count("--grid")) exp.grid = grid;
            if (sub->count("--out")) exp.out = out;
            if (sub == paired && sub->count("--m")) exp.m = m;
            if (sub != paired && sub->count("--sweep")) exp.sweep = parse_int_list(sweep_text);
            if (sub == network_rate && sub->count("--N")) exp.N_override = N;
            emit(exp.out, run_experiment_csv(exp));
        } else if (identity->parsed()) {
            double worst = 0.0;
            emit(out, identity_csv(samples, cmax, seeds_or_default(seed_text).front(), panels, worst));
            std::cerr << "max_residual=" << format_double(worst) << '\n';
            if (!(worst < 1e-8)) return 2;
        } else if (exporter->parsed()) {
            std::ostringstream text;
            write_target(text, resolve_target(target));
            emit(out, text.str());
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
