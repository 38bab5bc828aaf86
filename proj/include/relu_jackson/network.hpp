#pragma once

#include "relu_jackson/targets.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace relu_jackson {

enum class Origin { Sampled, Affine };

std::string to_string(Origin origin);
Origin origin_from_string(const std::string &text);

/// One hidden unit beta * max(0, alpha . x - bias).
struct Unit {
    std::vector<double> alpha;
    double beta = 0.0;
    double bias = 0.0;
    Origin origin = Origin::Sampled;
};

struct NetworkMetadata {
    double v = 0.0;          // normalization of the sampling density
    double variation = 0.0;  // v_{J_N,2} of the Jackson image
    int N = 0;
    int r = 0;
    std::uint64_t seed = 0;
    int m_requested = 0;
};

class ShallowNetwork {
  public:
    ShallowNetwork() = default;
    ShallowNetwork(int dimension, std::vector<Unit> units, NetworkMetadata metadata = {});

    int dimension() const { return dimension_; }
    const std::vector<Unit> &units() const { return units_; }
    const NetworkMetadata &metadata() const { return metadata_; }
    std::size_t size() const { return units_.size(); }
    std::size_t count(Origin origin) const;

    double evaluate(std::span<const double> x) const;
    std::vector<double> evaluate_on_grid(const EvaluationGrid &grid) const;

    /// sum_i |beta_i| |alpha_i|_1, a Lipschitz constant in the l_inf distance.
    double lipschitz_bound() const;

  private:
    int dimension_ = 1;
    std::vector<Unit> units_;
    NetworkMetadata metadata_;
};

inline double relu(double u) { return u > 0.0 ? u : 0.0; }

struct SupErrorReport {
    double grid_max = 0.0;
    /// grid_max + (L_target + L_net) * spacing * d / 2: an upper bound for the
    /// true sup over the cube.
    double certified_bound = 0.0;
};

/// Grid max of |target - net| on a cube grid.
SupErrorReport sup_error(const ShallowNetwork &net, const FourierTarget &target, const EvaluationGrid &cube_grid);

struct AuditCheck {
    std::string name;
    double measured = 0.0;
    double limit = 0.0;
    bool pass = true;
};

struct AuditReport {
    double max_sampled_alpha_l1 = 0.0;
    double min_sampled_bias = 0.0;
    double max_sampled_bias = 0.0;
    double max_sampled_beta = 0.0;
    double beta_bound = 0.0;
    std::size_t sampled_units = 0;
    std::size_t affine_units = 0;
    std::vector<AuditCheck> checks;
    bool pass = true;

    const AuditCheck &check(const std::string &name) const;
};

/// Checks the parameter bounds |beta| <= 8 pi^2 v_{J_N,2} / m, |alpha|_1 <= 1,
/// 0 <= bias <= 1 for sampled units; |alpha|_1 <= 1, -1 <= bias <= 1 and at
/// most five affine units; total units <= m for m >= 20.
AuditReport audit(const ShallowNetwork &net);

// CSV: "# schema=network@1", "# m_requested=.. r=.. seed=.. variation=..",
// header "d=<d> m=<units> v=<v> N=<N>", then rows "alpha_1..alpha_d,beta,bias,origin".
void write_network(std::ostream &out, const ShallowNetwork &net);
ShallowNetwork read_network(std::istream &in);
void save_network(const std::string &path, const ShallowNetwork &net);
ShallowNetwork load_network(const std::string &path);

/// Shortest round-trip decimal text for a double (17 significant digits).
std::string format_double(double value);

} // namespace relu_jackson
