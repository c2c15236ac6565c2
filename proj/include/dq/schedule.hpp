#pragma once

#include <utility>
#include <vector>

namespace dq {

// Discrete variance-preserving diffusion schedule. Timesteps are 1-based;
// alpha_bar(0) == 1 by convention so the final jump t -> 0 is well defined.
// Immutable after construction and safe to share across threads.
class NoiseSchedule {
  public:
    explicit NoiseSchedule(std::vector<double> betas);

    int total_steps() const { return static_cast<int>(betas_.size()); }
    double beta(int t) const;       // t in [1, T]
    double alpha_bar(int t) const;  // t in [0, T]

    const std::vector<double>& betas() const { return betas_; }
    const std::vector<double>& alpha_bars() const { return alpha_bars_; }

  private:
    std::vector<double> betas_;
    std::vector<double> alpha_bars_;
};

// Linear beta ramp from beta_start to beta_end inclusive (constant for T == 1).
NoiseSchedule build_linear_schedule(int T, double beta_start, double beta_end);

// Coefficients (sqrt(abar_t), sqrt(1 - abar_t)) of x0 and eps in the forward
// marginal x_t = a * x0 + b * eps. Squares sum to 1.
std::pair<double, double> marginal_coeffs(const NoiseSchedule& sched, int t);

// Per-step noise scale sigma_t of the stochastic DDIM update for the jump
// t -> t_prev. eta = 0 yields exactly 0; eta = 1 recovers the ancestral
// (DDPM-like) variance.
double ddim_sigma(const NoiseSchedule& sched, int t, int t_prev, double eta);
double ddim_sigma_raw(double alpha_bar_t, double alpha_bar_prev, double eta);

// Sampling plan: strictly decreasing timesteps plus the stochasticity knob.
struct StepPlan {
    std::vector<int> timesteps;  // strictly decreasing, last element >= 1
    double eta = 0.0;

    void validate(int total_steps) const;  // throws std::invalid_argument
};

// Evenly spaced timesteps 1 + floor(j*T/n), j = 0..n-1, in descending order.
StepPlan make_even_plan(const NoiseSchedule& sched, int n_steps, double eta);

}  // namespace dq
