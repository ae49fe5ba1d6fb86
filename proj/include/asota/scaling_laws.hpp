#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace asota::scaling {

/// Training compute C = D * P * T (FLOPs). All inputs must be positive.
double training_compute(double dataset, double params, double passes);

/// Yearly compute budget available to one training run holding a share of
/// the capital stock: share * seconds_per_year * capital_flops.
double compute_budget(double share, double seconds_per_year, double capital_flops);

struct PowerSample {
    double compute = 0.0; // C > 0
    double output = 0.0;  // Y > 0
};

struct ScalingFit {
    double alpha_prime = 0.0; // exponent of Y = a * C^alpha'
    double prefactor = 1.0;
    double residual_norm = 0.0; // RMS residual in log space
};

/// Least squares on ln Y = ln a + alpha' ln C. Needs at least two samples
/// with distinct compute values; throws NumericError on rank deficiency.
ScalingFit fit_power_law(const std::vector<PowerSample>& samples);

struct JointSample {
    double dataset = 0.0; // D > 0
    double params = 0.0;  // P > 0
    double loss = 0.0;    // L > 0
};

struct JointLossFit {
    double l_min = 0.0;
    double b = 0.0;
    double beta = 0.0;
    double g = 0.0;
    double gamma = 0.0;
    double residual_norm = 0.0; // RMS residual
    bool converged = false;
};

struct JointFitOptions {
    std::size_t exponent_grid = 14;  // grid points per exponent in [0.02, 2]
    std::size_t floor_grid = 8;      // candidate floors below min(L)
    std::size_t refine_iterations = 400;
    double tolerance = 1e-14;        // relative SSE improvement stop
};

/// Fits L = L_min + B/D^beta + G/P^gamma by a multi-start exponent/floor
/// grid (B and G enter linearly and are solved in closed form at each grid
/// node) followed by damped Gauss-Newton refinement of all five
/// parameters. Returns best-so-far with converged=false when the budget
/// runs out before the tolerance is met.
JointLossFit fit_joint_loss(const std::vector<JointSample>& samples,
                            const JointFitOptions& options = {});

struct Allocation {
    double dataset = 0.0; // D*
    double params = 0.0;  // P*
};

/// Loss-minimizing split of fixed compute C between dataset and model size
/// under D*P = C/T, from the first-order condition
/// beta*B*D^-beta = gamma*G*P^-gamma.
Allocation optimal_allocation(const JointLossFit& fit, double flops, double passes);

/// beta/2, valid when beta and gamma agree within rel_tol; otherwise
/// throws NumericError directing callers to the numeric allocation.
double effective_alpha(const JointLossFit& fit, double rel_tol = 0.05);

} // namespace asota::scaling
