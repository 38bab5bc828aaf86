#pragma once

#include "relu_jackson/targets.hpp"

#include <vector>

namespace relu_jackson {

/// Fejer cosine coefficients b_0 = 1/2, b_j = 1 - j/M for 1 <= j < M.
std::vector<double> fejer_coefficients(int M);

/// Univariate Jackson kernel of degree parameter N and order r, stored by its
/// exponential-basis coefficients a~_k on |k| <= r(M-1), M = floor(N/r) + 1.
/// Normalized so that the kernel integrates to one over [-pi, pi].
class JacksonKernel1D {
  public:
    JacksonKernel1D(int N, int r, std::vector<double> coefficients);

    int N() const { return N_; }
    int order() const { return r_; }
    int M() const { return M_; }
    /// r(M-1): largest |k| with a nonzero coefficient.
    int degree() const { return degree_; }
    /// a~_k, zero outside the support.
    double at(int k) const;
    const std::vector<double> &coefficients() const { return coefficients_; }

    /// Kernel value sum_k a~_k e^{ikt}.
    double value(double t) const;

  private:
    int N_, r_, M_, degree_;
    std::vector<double> coefficients_; // index k + degree
};

/// r-fold discrete self-convolution of the Fejer sequence, rescaled once so
/// that a~_0 = 1/(2 pi).
JacksonKernel1D build_kernel(int N, int r);

/// Kernel values at the G torus points -pi + 2 pi j / G.
std::vector<double> kernel_on_grid(const JacksonKernel1D &kernel, int points);

/// Alternating-binomial multiplier a_k = sum_{l=1}^r (-1)^{l-1} C(r,l) a~_{kl},
/// tensorized across d axes: a_k = prod_j a^{[1]}_{k_j}.
class JacksonMultiplier {
  public:
    JacksonMultiplier(int dimension, int N, int r, std::vector<double> axis_coefficients);

    int dimension() const { return dimension_; }
    int N() const { return N_; }
    int order() const { return r_; }
    /// Per-axis a^{[1]}_k, zero for |k| > N.
    double axis_at(int k) const;
    double at(const Frequency &k) const;
    const std::vector<double> &axis_coefficients() const { return axis_; }

  private:
    int dimension_, N_, r_;
    std::vector<double> axis_; // index k + N
};

JacksonMultiplier multiplier_from_kernel(const JacksonKernel1D &kernel, int dimension = 1);

/// Jackson image: J^(k) = (2 pi)^d a_k f^(k), supported in |k|_inf <= min(N, K_max).
FourierTarget apply_jackson(const FourierTarget &target, int N, int r);

/// Grid max of |f - J_{N,r} f| on a resolved torus grid.
double jackson_sup_error(const FourierTarget &target, int N, int r, const EvaluationGrid &grid);

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k);

} // namespace relu_jackson
