#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace relu_jackson {

using Complex = std::complex<double>;

/// Integer frequency vector k in Z^d.
using Frequency = std::vector<int>;

/// Fourier coefficients keyed by frequency. std::map keeps keys in
/// lexicographic order, which fixes the summation order of every series sum.
using CoefficientMap = std::map<Frequency, Complex>;

/// Smoothness sentinel for trigonometric polynomials (members of every W^r).
inline constexpr int kUnboundedSmoothness = std::numeric_limits<int>::max();

int l1_norm(const Frequency &k);
int linf_norm(const Frequency &k);
Frequency negate(const Frequency &k);

/// A real-valued 2*pi-periodic function on R^d given by finitely many Fourier
/// coefficients. Construction enforces Hermitian symmetry and drops exact zeros.
class FourierTarget {
  public:
    FourierTarget() = default;
    FourierTarget(int dimension, CoefficientMap coefficients, int smoothness = kUnboundedSmoothness);

    int dimension() const { return dimension_; }
    const CoefficientMap &coefficients() const { return coefficients_; }
    int smoothness() const { return smoothness_; }
    int support_radius() const { return support_radius_; }
    bool empty() const { return coefficients_.empty(); }
    std::size_t size() const { return coefficients_.size(); }

    /// Coefficient at k, zero when k is outside the stored support.
    Complex coefficient(const Frequency &k) const;

  private:
    int dimension_ = 1;
    CoefficientMap coefficients_;
    int smoothness_ = kUnboundedSmoothness;
    int support_radius_ = 0;
};

enum class Domain { Torus, Cube };

/// Tensor grid with G points per axis. Torus points are -pi + 2*pi*j/G
/// (periodic, right endpoint excluded); cube points are -1 + 2*j/(G-1).
/// Flat indices are row-major with axis 0 most significant.
class EvaluationGrid {
  public:
    EvaluationGrid(int dimension, int points_per_axis, Domain domain);

    int dimension() const { return dimension_; }
    int points_per_axis() const { return points_; }
    Domain domain() const { return domain_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return size_; }

    double coordinate(int index) const;
    std::vector<double> axis() const;
    std::vector<double> point(std::size_t flat_index) const;

  private:
    int dimension_;
    int points_;
    Domain domain_;
    double spacing_;
    std::size_t size_;
};

/// Default points per axis: 4096 (d=1), 512 (d=2), 96 (d>=3).
int default_points_per_axis(int dimension);

/// Smallest default-or-larger G that resolves every mode of `target`.
EvaluationGrid resolved_torus_grid(const FourierTarget &target, int requested_points = 0);

FourierTarget make_trig_poly(int dimension, const CoefficientMap &coefficients, bool auto_symmetrize = false);

/// Coefficients of modulus (1+|k|_1)^{-s} with seeded random phases on the cube
/// |k|_inf <= K_max. The result lies in W^r whenever s > r + d; the declared
/// smoothness is the largest such integer r.
FourierTarget make_decay_target(int dimension, double decay, int max_frequency, std::uint64_t seed);

/// Real part of the coefficient sum at x.
double evaluate(const FourierTarget &target, std::span<const double> x);
Complex evaluate_complex(const FourierTarget &target, std::span<const double> x);

/// Evaluates an arbitrary coefficient map at every grid point by separable
/// contraction one axis at a time.
std::vector<Complex> evaluate_series_on_grid(int dimension, const CoefficientMap &coefficients,
                                             const EvaluationGrid &grid);
std::vector<Complex> evaluate_on_grid(const FourierTarget &target, const EvaluationGrid &grid);

/// Max over grid points of |values|.
double grid_max_abs(std::span<const Complex> values);
double grid_max_abs(std::span<const double> values);

/// Throws unless the torus grid has G > 2 * support_radius.
void require_resolved(const FourierTarget &target, const EvaluationGrid &grid);

/// Discrete W^r_inf norm: max over |alpha|_1 <= r of the grid max of D^alpha f.
double holder_norm(const FourierTarget &target, int r, const EvaluationGrid &grid);

/// All multi-indices alpha in Z_+^d with |alpha|_1 <= r, graded order.
std::vector<std::vector<int>> multi_indices(int dimension, int max_order);

/// Sum of |f^(k)| * |k|_1 over the support; an upper bound for the Lipschitz
/// constant of the target with respect to the l_inf distance.
double lipschitz_bound(const FourierTarget &target);

// Plain-text format: header "d=<d> r=<r|inf>", then one line "k_1 ... k_d re im"
// per stored frequency.
void write_target(std::ostream &out, const FourierTarget &target);
FourierTarget read_target(std::istream &in);
void save_target(const std::string &path, const FourierTarget &target);
FourierTarget load_target(const std::string &path);

struct CorpusEntry {
    std::string name;
    FourierTarget target;
};

/// Fixed test corpus: constants, cos x, sin(x1+x2) and seeded decay targets in
/// d = 1, 2.
std::vector<CorpusEntry> standard_corpus();
FourierTarget corpus_target(const std::string &name);

/// Loads "corpus:<name>" from the built-in corpus, anything else from disk.
FourierTarget resolve_target(const std::string &spec);

} // namespace relu_jackson
