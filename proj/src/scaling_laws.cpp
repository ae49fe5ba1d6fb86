#include "asota/scaling_laws.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "asota/errors.hpp"

namespace asota::scaling {

double training_compute(double dataset, double params, double passes) {
    if (!(dataset > 0.0) || !(params > 0.0) || !(passes > 0.0)) {
        throw DataError("training compute needs positive dataset, parameter and pass counts");
    }
    return dataset * params * passes;
}

double compute_budget(double share, double seconds_per_year, double capital_flops) {
    if (!(share > 0.0) || share > 1.0) throw DataError("compute share must lie in (0,1]");
    if (!(seconds_per_year > 0.0) || !(capital_flops > 0.0)) {
        throw DataError("seconds per year and capital stock must be positive");
    }
    return share * seconds_per_year * capital_flops;
}

ScalingFit fit_power_law(const std::vector<PowerSample>& samples) {
    if (samples.size() < 2) throw DataError("power-law fit needs at least two samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(samples.size());
    for (const auto& s : samples) {
        if (!(s.compute > 0.0) || !(s.output > 0.0)) {
            throw DataError("power-law samples must be positive");
        }
        const double x = std::log(s.compute);
        const double y = std::log(s.output);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (det <= 0.0) {
        throw NumericError("power-law fit is rank deficient: all compute values coincide");
    }
    ScalingFit fit;
    fit.alpha_prime = (n * sxy - sx * sy) / det;
    const double intercept = (sy - fit.alpha_prime * sx) / n;
    fit.prefactor = std::exp(intercept);

    double sse = 0.0;
    for (const auto& s : samples) {
        const double e = std::log(s.output) - intercept - fit.alpha_prime * std::log(s.compute);
        sse += e * e;
    }
    fit.residual_norm = std::sqrt(sse / n);
    return fit;
}

namespace {

struct JointData {
    std::vector<double> log_d, log_p, loss;
};

double joint_sse(const JointData& d, double l_min, double b, double beta, double g, double gamma) {
    double sse = 0.0;
    for (std::size_t i = 0; i < d.loss.size(); ++i) {
        const double model =
            l_min + b * std::exp(-beta * d.log_d[i]) + g * std::exp(-gamma * d.log_p[i]);
        const double e = d.loss[i] - model;
        sse += e * e;
    }
    return sse;
}

// Non-negative least squares for r ~ B*u + G*v via the unconstrained 2x2
// solve with fallback to the single-term boundary solutions.
void solve_linear_pair(const std::vector<double>& u, const std::vector<double>& v,
                       const std::vector<double>& r, double& b_out, double& g_out) {
    double suu = 0.0, svv = 0.0, suv = 0.0, sur = 0.0, svr = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        suu += u[i] * u[i];
        svv += v[i] * v[i];
        suv += u[i] * v[i];
        sur += u[i] * r[i];
        svr += v[i] * r[i];
    }
    const double det = suu * svv - suv * suv;
    double b = 0.0, g = 0.0;
    if (det > 1e-300) {
        b = (svv * sur - suv * svr) / det;
        g = (suu * svr - suv * sur) / det;
    }
    if (b < 0.0 || g < 0.0 || det <= 1e-300) {
        const double b_only = suu > 0.0 ? std::max(0.0, sur / suu) : 0.0;
        const double g_only = svv > 0.0 ? std::max(0.0, svr / svv) : 0.0;
        // SSE difference against zero fit: -2*c*s + c^2*ss
        const double b_gain = 2.0 * b_only * sur - b_only * b_only * suu;
        const double g_gain = 2.0 * g_only * svr - g_only * g_only * svv;
        if (b_gain >= g_gain) {
            b = b_only;
            g = 0.0;
        } else {
            b = 0.0;
            g = g_only;
        }
    }
    b_out = b;
    g_out = g;
}

// Gaussian elimination with partial pivoting; false when singular.
bool solve5(std::array<std::array<double, 5>, 5> a, std::array<double, 5>& x) {
    for (int col = 0; col < 5; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 5; ++row) {
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        }
        if (std::fabs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[pivot], a[col]);
        std::swap(x[pivot], x[col]);
        for (int row = col + 1; row < 5; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < 5; ++k) a[row][k] -= f * a[col][k];
            x[row] -= f * x[col];
        }
    }
    for (int col = 4; col >= 0; --col) {
        for (int row = 0; row < col; ++row) {
            x[row] -= a[row][col] / a[col][col] * x[col];
            a[row][col] = 0.0;
        }
        x[col] /= a[col][col];
    }
    return true;
}

struct Params {
    double l_min, b, beta, g, gamma;

    void clamp(double max_l_min) {
        l_min = std::min(std::max(l_min, 0.0), max_l_min);
        b = std::max(b, 0.0);
        g = std::max(g, 0.0);
        beta = std::min(std::max(beta, 1e-4), 10.0);
        gamma = std::min(std::max(gamma, 1e-4), 10.0);
    }
};

} // namespace

JointLossFit fit_joint_loss(const std::vector<JointSample>& samples, const JointFitOptions& options) {
    if (samples.size() < 5) throw DataError("joint loss fit needs at least five samples");
    JointData data;
    std::set<double> distinct_d, distinct_p;
    double min_loss = samples.front().loss;
    for (const auto& s : samples) {
        if (!(s.dataset > 0.0) || !(s.params > 0.0) || !(s.loss > 0.0)) {
            throw DataError("joint loss samples must be positive");
        }
        data.log_d.push_back(std::log(s.dataset));
        data.log_p.push_back(std::log(s.params));
        data.loss.push_back(s.loss);
        distinct_d.insert(s.dataset);
        distinct_p.insert(s.params);
        min_loss = std::min(min_loss, s.loss);
    }
    if (distinct_d.size() < 2 || distinct_p.size() < 2) {
        throw DataError("joint loss fit needs at least two distinct dataset and parameter sizes");
    }
    const std::size_t n = samples.size();

    // Stage 1: exponent/floor grid with the linear (B, G) inner solve.
    std::vector<double> exponents;
    for (std::size_t i = 0; i < options.exponent_grid; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(options.exponent_grid - 1);
        exponents.push_back(0.02 * std::pow(2.0 / 0.02, t)); // log-spaced [0.02, 2]
    }
    std::vector<double> floors;
    for (std::size_t i = 0; i < options.floor_grid; ++i) {
        floors.push_back(min_loss * static_cast<double>(i) / static_cast<double>(options.floor_grid));
    }
    floors.push_back(min_loss);

    Params best{0.0, 0.0, exponents.front(), 0.0, exponents.front()};
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> u(n), v(n), r(n);
    for (double l_min : floors) {
        for (std::size_t i = 0; i < n; ++i) r[i] = data.loss[i] - l_min;
        for (double beta : exponents) {
            for (std::size_t i = 0; i < n; ++i) u[i] = std::exp(-beta * data.log_d[i]);
            for (double gamma : exponents) {
                for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-gamma * data.log_p[i]);
                double b = 0.0, g = 0.0;
                solve_linear_pair(u, v, r, b, g);
                const double sse = joint_sse(data, l_min, b, beta, g, gamma);
                if (sse < best_sse) {
                    best_sse = sse;
                    best = {l_min, b, beta, g, gamma};
                }
            }
        }
    }

    // Stage 2: damped Gauss-Newton on all five parameters.
    Params p = best;
    double sse = best_sse;
    double lambda = 1e-3;
    bool converged = sse <= options.tolerance;
    for (std::size_t iter = 0; iter < options.refine_iterations && !converged; ++iter) {
        std::array<std::array<double, 5>, 5> jtj{};
        std::array<double, 5> jte{};
        for (std::size_t i = 0; i < n; ++i) {
            const double du = std::exp(-p.beta * data.log_d[i]);
            const double dv = std::exp(-p.gamma * data.log_p[i]);
            const double model = p.l_min + p.b * du + p.g * dv;
            const double e = data.loss[i] - model;
            const std::array<double, 5> j = {1.0, du, -p.b * data.log_d[i] * du, dv,
                                             -p.g * data.log_p[i] * dv};
            for (int a = 0; a < 5; ++a) {
                jte[a] += j[a] * e;
                for (int c = 0; c < 5; ++c) jtj[a][c] += j[a] * j[c];
            }
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
            auto damped = jtj;
            for (int a = 0; a < 5; ++a) damped[a][a] += lambda * (jtj[a][a] + 1e-12);
            std::array<double, 5> step = jte;
            if (!solve5(damped, step)) {
                lambda *= 8.0;
                continue;
            }
            Params trial{p.l_min + step[0], p.b + step[1], p.beta + step[2], p.g + step[3],
                         p.gamma + step[4]};
            trial.clamp(min_loss);
            const double trial_sse =
                joint_sse(data, trial.l_min, trial.b, trial.beta, trial.g, trial.gamma);
            if (trial_sse <= sse) {
                const double gain = sse - trial_sse;
                p = trial;
                sse = trial_sse;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (gain <= options.tolerance * std::max(sse, 1e-30)) converged = true;
            } else {
                lambda *= 8.0;
            }
        }
        if (!stepped) {
            converged = true; // no descent direction left at any damping
        }
        if (sse <= 1e-28) converged = true;
    }

    JointLossFit fit;
    fit.l_min = p.l_min;
    fit.b = p.b;
    fit.beta = p.beta;
    fit.g = p.g;
    fit.gamma = p.gamma;
    fit.residual_norm = std::sqrt(sse / static_cast<double>(n));
    fit.converged = converged;
    return fit;
}

Allocation optimal_allocation(const JointLossFit& fit, double flops, double passes) {
    if (!(flops > 0.0) || !(passes > 0.0)) throw DataError("compute and pass count must be positive");
    if (!(fit.b > 0.0) || !(fit.g > 0.0) || !(fit.beta > 0.0) || !(fit.gamma > 0.0)) {
        throw NumericError("optimal allocation needs positive B, G and exponents");
    }
    // Minimize B*e^{-beta d} + G*e^{-gamma p} with d + p = ln(C/T):
    // first-order condition beta*B*e^{-beta d} = gamma*G*e^{-gamma p}.
    const double q = std::log(flops / passes);
    const double d =
        (std::log(fit.beta * fit.b / (fit.gamma * fit.g)) + fit.gamma * q) / (fit.beta + fit.gamma);
    return {std::exp(d), std::exp(q - d)};
}

double effective_alpha(const JointLossFit& fit, double rel_tol) {
    if (!(fit.beta > 0.0) || !(fit.gamma > 0.0)) {
        throw NumericError("effective exponent needs positive beta and gamma");
    }
    const double spread = std::fabs(fit.beta - fit.gamma) / std::max(fit.beta, fit.gamma);
    if (spread > rel_tol) {
        throw NumericError("beta and gamma differ by " + std::to_string(spread * 100.0) +
                           "%; use the numeric allocation instead of beta/2");
    }
    return fit.beta / 2.0;
}

} // namespace asota::scaling
