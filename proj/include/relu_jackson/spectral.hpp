#pragma once

#include "relu_jackson/targets.hpp"

#include <vector>

namespace relu_jackson {

/// Level operator T_l f: coefficients f^(k) |k|_1^r on |k|_inf <= 2^l.
FourierTarget level_series(const FourierTarget &target, int level, int r);

/// |grid mean of |g|^2 - sum_k |g^(k)|^2| on a resolved torus grid.
double parseval_residual(const FourierTarget &series, const EvaluationGrid &grid);

/// sum_k |c(k)| |k|_1^q over the stored support.
double variation(const FourierTarget &series, double q);

/// S_l = sum over 2^{l-1} < |k|_inf <= 2^l of |f^(k)| |k|_1^r, for l = 0..L.
std::vector<double> shell_sums(const FourierTarget &target, int r, int L);

/// (3/pi + 6)^d d^r.
double c6_constant(int dimension, int r);

struct C6Report {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

/// lhs = grid max |T_l f|, rhs = C6(d,r) * holder_norm(f, r) * (l+1)^d.
C6Report c6_bound_check(const FourierTarget &target, int r, int level, const EvaluationGrid &grid);

/// ceil(log2 N), the number of dyadic levels covering |k|_inf <= N.
int level_count(int N);

struct LevelSummary {
    int level = 0;
    FourierTarget series;
    double sup_norm = 0.0;
    double shell_sum = 0.0;
    double coefficient_l1 = 0.0;
    double parseval_residual = 0.0;
    C6Report c6;
};

struct SpectralLevels {
    int r = 0;
    int L = 0;
    double holder_norm = 0.0;
    std::vector<LevelSummary> levels;
};

/// Level-by-level analysis for l = 0..L on one grid (Holder norm computed once).
SpectralLevels analyze_levels(const FourierTarget &target, int r, int L, const EvaluationGrid &grid);

} // namespace relu_jackson
