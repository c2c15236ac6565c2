#include "dq/mixture.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace dq {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// log N(x; mu, Sigma) via Cholesky; throws on non-PD covariance.
double log_gaussian(const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                    const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("mixture: covariance not positive definite");
    }
    const Eigen::VectorXd d = x - mu;
    const Eigen::VectorXd y = llt.matrixL().solve(d);
    double log_det = 0.0;
    for (int i = 0; i < cov.rows(); ++i) {
        log_det += std::log(llt.matrixL()(i, i));
    }
    return -0.5 * (cov.rows() * kLog2Pi + y.squaredNorm()) - log_det;
}

}  // namespace

int GaussianMixture::dim() const {
    return means.empty() ? 0 : static_cast<int>(means.front().size());
}

void GaussianMixture::validate() const {
    if (weights.empty() || weights.size() != means.size() || weights.size() != covs.size()) {
        throw std::invalid_argument("mixture: component lists must be non-empty and equal-sized");
    }
    const int d = dim();
    double wsum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0)) {
            throw std::invalid_argument("mixture: weights must be positive");
        }
        wsum += weights[i];
        if (means[i].size() != d || covs[i].rows() != d || covs[i].cols() != d) {
            throw std::invalid_argument("mixture: inconsistent component dimensions");
        }
        if (!covs[i].isApprox(covs[i].transpose(), 1e-10)) {
            throw std::invalid_argument("mixture: covariance not symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covs[i]);
        if (es.eigenvalues().minCoeff() <= 0.0) {
            throw std::invalid_argument("mixture: covariance not positive definite");
        }
    }
    if (std::abs(wsum - 1.0) > 1e-12) {
        throw std::invalid_argument("mixture: weights must sum to 1");
    }
}

Eigen::VectorXd GaussianMixture::mean() const {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(dim());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        m += weights[i] * means[i];
    }
    return m;
}

Eigen::MatrixXd GaussianMixture::second_moment() const {
    Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(dim(), dim());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        m2 += weights[i] * (covs[i] + means[i] * means[i].transpose());
    }
    return m2;
}

Eigen::MatrixXd GaussianMixture::covariance() const {
    const Eigen::VectorXd m = mean();
    return second_moment() - m * m.transpose();
}

Eigen::MatrixXd mixture_sample(const GaussianMixture& gm, int n, RngStream& rng) {
    if (n < 1) {
        throw std::invalid_argument("mixture_sample: n must be >= 1");
    }
    gm.validate();
    const int d = gm.dim();
    std::vector<Eigen::MatrixXd> chol;
    chol.reserve(gm.covs.size());
    for (const auto& cov : gm.covs) {
        chol.push_back(Eigen::LLT<Eigen::MatrixXd>(cov).matrixL());
    }
    std::vector<double> cum(gm.weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < gm.weights.size(); ++i) {
        acc += gm.weights[i];
        cum[i] = acc;
    }
    Eigen::MatrixXd out(d, n);
    for (int j = 0; j < n; ++j) {
        const double u = rng.uniform();
        std::size_t c = 0;
        while (c + 1 < cum.size() && u >= cum[c]) {
            ++c;
        }
        out.col(j) = gm.means[c] + chol[c] * rng.normal_vector(d);
    }
    return out;
}

Eigen::MatrixXd mixture_sample(const GaussianMixture& gm, int n, std::uint64_t seed) {
    RngStream rng(seed);
    return mixture_sample(gm, n, rng);
}

GaussianMixture diffused_mixture(const GaussianMixture& gm, double alpha_bar) {
    if (!(alpha_bar > 0.0 && alpha_bar <= 1.0)) {
        throw std::invalid_argument("diffused_mixture: alpha_bar must lie in (0, 1]");
    }
    const double a = std::sqrt(alpha_bar);
    const int d = gm.dim();
    GaussianMixture out = gm;
    for (std::size_t i = 0; i < gm.means.size(); ++i) {
        out.means[i] = a * gm.means[i];
        out.covs[i] = alpha_bar * gm.covs[i] +
                      (1.0 - alpha_bar) * Eigen::MatrixXd::Identity(d, d);
    }
    return out;
}

double mixture_log_density(const GaussianMixture& gm, const Eigen::VectorXd& x) {
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(gm.weights.size());
    for (std::size_t i = 0; i < gm.weights.size(); ++i) {
        terms[i] = std::log(gm.weights[i]) + log_gaussian(x, gm.means[i], gm.covs[i]);
        max_term = std::max(max_term, terms[i]);
    }
    double s = 0.0;
    for (double t : terms) {
        s += std::exp(t - max_term);
    }
    return max_term + std::log(s);
}

Eigen::VectorXd mixture_responsibilities(const GaussianMixture& gm, const Eigen::VectorXd& x) {
    Eigen::VectorXd logs(gm.components());
    for (int i = 0; i < gm.components(); ++i) {
        logs[i] = std::log(gm.weights[static_cast<std::size_t>(i)]) +
                  log_gaussian(x, gm.means[static_cast<std::size_t>(i)],
                               gm.covs[static_cast<std::size_t>(i)]);
    }
    const double m = logs.maxCoeff();
    Eigen::VectorXd r = (logs.array() - m).exp();
    return r / r.sum();
}

Eigen::VectorXd analytic_epsilon(const GaussianMixture& gm, const Eigen::VectorXd& x, int t,
                                 const NoiseSchedule& sched) {
    if (!x.allFinite()) {
        throw std::invalid_argument("analytic_epsilon: non-finite input point");
    }
    const double ab = sched.alpha_bar(t);
    const GaussianMixture dm = diffused_mixture(gm, ab);
    const Eigen::VectorXd r = mixture_responsibilities(dm, x);
    Eigen::VectorXd score = Eigen::VectorXd::Zero(gm.dim());
    for (int i = 0; i < dm.components(); ++i) {
        const auto& cov = dm.covs[static_cast<std::size_t>(i)];
        score += r[i] * Eigen::LLT<Eigen::MatrixXd>(cov).solve(
                            dm.means[static_cast<std::size_t>(i)] - x);
    }
    return -std::sqrt(1.0 - ab) * score;
}

}  // namespace dq
