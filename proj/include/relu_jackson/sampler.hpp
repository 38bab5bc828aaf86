#pragma once

#include "relu_jackson/network.hpp"
#include "relu_jackson/targets.hpp"

#include <cstdint>
#include <vector>

namespace relu_jackson {

/// |(e^{iz} - iz - 1) + int_0^c [relu(z-u) e^{iu} + relu(-z-u) e^{-iu}] du|
/// with composite Simpson quadrature split at the kink u = |z|.
double identity_residual(double z, double c, int panels);

/// int_{theta_a}^{theta_b} |cos theta| d theta in closed form.
double abs_cos_integral(double theta_a, double theta_b);

/// One effective mode q != 0. The atoms (z, k) = (1, q) and (-1, -q) produce the
/// same unit sigma(alpha_q . x - t) with the same sign, so they are merged: the
/// direction is alpha_q = q / |pi q|_1 and the phase is omega t + b(q).
struct DensityMode {
    Frequency frequency;
    std::vector<double> direction;
    double modulus = 0.0;   // |J^(q)|
    double phase = 0.0;     // b(q) in (-pi, pi]
    double omega = 0.0;     // |pi q|_1
    double mass_per_sign = 0.0;  // w(1, q) = w(-1, -q)
    double mass = 0.0;           // both signs
};

struct SamplingDensity {
    int dimension = 1;
    std::vector<DensityMode> modes;
    double v = 0.0;
    /// v_{J_N,2} = sum |J^(k)| |k|_1^2 of the source image.
    double variation = 0.0;

    bool degenerate() const { return modes.empty(); }
};

/// Builds the sampling density of a real Jackson image. An image without
/// nonzero modes yields a degenerate (empty) density with v = 0.
SamplingDensity build_density(const FourierTarget &image);

/// A t-interval of one mode on which s = -sgn cos(omega t + b) is constant.
struct Piece {
    int mode = 0;
    double t_begin = 0.0;
    double t_end = 0.0;
    double mass = 0.0;
};

struct Stratum {
    std::vector<int> cell;   // direction cell key
    int t_bin = 0;
    int sign = 1;            // s
    std::vector<Piece> pieces;
    double mass = 0.0;
    double probability = 0.0;  // L_i
    double target_count = 0.0; // m_i = m' L_i
    int samples = 0;           // n_i = ceil(m_i)
};

struct SamplingPlan {
    int m = 0;
    int m_prime = 0;
    double epsilon = 0.0;
    double delta = 0.0;  // epsilon / (d + 1)
    std::vector<Stratum> strata;

    int total_samples() const;
};

/// epsilon = 2 (d+1) pi^{-1+1/d} / ceil(m/4)^{1/d}.
double strata_epsilon(int m, int dimension);

/// Partitions the density by direction cell, t-bin and sign s.
SamplingPlan build_strata(const SamplingDensity &density, int m);

/// Draws n_i atoms per stratum; unit weights v L_i s / n_i. Each stratum uses
/// substream (seed, i), so the result does not depend on the thread count.
std::vector<Unit> stratified_sample(const SamplingPlan &plan, const SamplingDensity &density, std::uint64_t seed);

/// n i.i.d. atoms from the full density with weights s v / n.
std::vector<Unit> plain_sample(const SamplingDensity &density, int n, std::uint64_t seed);

/// A(x) = w . x + c with w = -sum Im(J^(k)) k and c = sum Re(J^(k)), written
/// with at most three units.
std::vector<Unit> affine_units(const FourierTarget &image);

/// Value of the affine part A at x.
double affine_value(const FourierTarget &image, std::span<const double> x);

/// floor(m^{(d+2) / (d max(2r, d+4))}), clamped to at least 1.
int select_degree(int m, int dimension, int r);

struct ConstructOptions {
    int N_override = 0;   // 0: selection rule
    bool plain = false;   // unstratified sampling with the same unit count
};

struct Construction {
    ShallowNetwork network;
    FourierTarget image;
    SamplingDensity density;
    SamplingPlan plan;
    int N = 0;
    bool degenerate = false;
    bool within_budget = true;  // total units <= m
};

Construction construct_detailed(const FourierTarget &target, int r, int m, std::uint64_t seed,
                                const ConstructOptions &options = {});
ShallowNetwork construct(const FourierTarget &target, int r, int m, std::uint64_t seed,
                         const ConstructOptions &options = {});

} // namespace relu_jackson
