#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dq/rng.hpp"
#include "dq/schedule.hpp"

namespace dq {

// Finite Gaussian mixture used as the analytic data distribution. Points are
// stored as matrix columns throughout.
struct GaussianMixture {
    std::vector<double> weights;
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covs;

    int components() const { return static_cast<int>(weights.size()); }
    int dim() const;
    void validate() const;  // throws std::invalid_argument

    Eigen::VectorXd mean() const;
    Eigen::MatrixXd covariance() const;
    Eigen::MatrixXd second_moment() const;  // E[x x^T]
};

Eigen::MatrixXd mixture_sample(const GaussianMixture& gm, int n, RngStream& rng);
Eigen::MatrixXd mixture_sample(const GaussianMixture& gm, int n, std::uint64_t seed);

// Forward-diffused mixture at signal level alpha_bar: component means scale by
// sqrt(alpha_bar), covariances become alpha_bar*Sigma + (1-alpha_bar)*I.
GaussianMixture diffused_mixture(const GaussianMixture& gm, double alpha_bar);

double mixture_log_density(const GaussianMixture& gm, const Eigen::VectorXd& x);

// Posterior component responsibilities (sum to 1), log-sum-exp stabilized.
Eigen::VectorXd mixture_responsibilities(const GaussianMixture& gm, const Eigen::VectorXd& x);

// Exact noise prediction consistent with the diffused mixture's score:
// eps*(x, t) = -sqrt(1 - abar_t) * grad_x log p_t(x).
Eigen::VectorXd analytic_epsilon(const GaussianMixture& gm, const Eigen::VectorXd& x, int t,
                                 const NoiseSchedule& sched);

}  // namespace dq
