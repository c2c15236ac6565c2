#pragma once

#include <Eigen/Core>

#include "dq/mixture.hpp"
#include "dq/rng.hpp"
#include "dq/schedule.hpp"

namespace dq {

// A noise predictor the samplers can query. Implementations must be
// thread-safe for concurrent eps() calls; any randomness has to come from the
// caller-supplied stream so trajectories stay independent and reproducible.
struct EpsilonSource {
    virtual ~EpsilonSource() = default;
    virtual int dim() const = 0;
    virtual Eigen::VectorXd eps(const Eigen::VectorXd& x, int t, RngStream& rng) const = 0;
};

// Exact score-based predictor for a Gaussian-mixture target.
class AnalyticSource : public EpsilonSource {
  public:
    AnalyticSource(GaussianMixture gm, const NoiseSchedule& sched)
        : gm_(std::move(gm)), sched_(&sched) {
        gm_.validate();
    }

    int dim() const override { return gm_.dim(); }

    Eigen::VectorXd eps(const Eigen::VectorXd& x, int t, RngStream&) const override {
        return analytic_epsilon(gm_, x, t, *sched_);
    }

    const GaussianMixture& mixture() const { return gm_; }

  private:
    GaussianMixture gm_;
    const NoiseSchedule* sched_;
};

}  // namespace dq
