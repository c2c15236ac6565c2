#include "dq/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dq {

NoiseSchedule::NoiseSchedule(std::vector<double> betas) : betas_(std::move(betas)) {
    if (betas_.empty()) {
        throw std::invalid_argument("schedule: need at least one step");
    }
    alpha_bars_.reserve(betas_.size());
    double prod = 1.0;
    for (double b : betas_) {
        if (!(b > 0.0 && b < 1.0)) {
            throw std::invalid_argument("schedule: betas must lie in (0, 1)");
        }
        prod *= 1.0 - b;
        alpha_bars_.push_back(prod);
    }
}

double NoiseSchedule::beta(int t) const {
    if (t < 1 || t > total_steps()) {
        throw std::out_of_range("schedule: timestep out of range");
    }
    return betas_[static_cast<std::size_t>(t - 1)];
}

double NoiseSchedule::alpha_bar(int t) const {
    if (t == 0) {
        return 1.0;
    }
    if (t < 0 || t > total_steps()) {
        throw std::out_of_range("schedule: timestep out of range");
    }
    return alpha_bars_[static_cast<std::size_t>(t - 1)];
}

NoiseSchedule build_linear_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) {
        throw std::invalid_argument("schedule: T must be >= 1");
    }
    if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
        throw std::invalid_argument("schedule: need 0 < beta_start <= beta_end < 1");
    }
    std::vector<double> betas(static_cast<std::size_t>(T));
    if (T == 1) {
        betas[0] = beta_start;
    } else {
        const double step = (beta_end - beta_start) / static_cast<double>(T - 1);
        for (int i = 0; i < T; ++i) {
            betas[static_cast<std::size_t>(i)] = beta_start + step * i;
        }
    }
    return NoiseSchedule(std::move(betas));
}

std::pair<double, double> marginal_coeffs(const NoiseSchedule& sched, int t) {
    const double ab = sched.alpha_bar(t);
    return {std::sqrt(ab), std::sqrt(1.0 - ab)};
}

double ddim_sigma_raw(double alpha_bar_t, double alpha_bar_prev, double eta) {
    if (eta == 0.0) {
        return 0.0;
    }
    const double ratio = (1.0 - alpha_bar_prev) / (1.0 - alpha_bar_t);
    const double leak = 1.0 - alpha_bar_t / alpha_bar_prev;
    return eta * std::sqrt(ratio) * std::sqrt(std::max(leak, 0.0));
}

double ddim_sigma(const NoiseSchedule& sched, int t, int t_prev, double eta) {
    if (t_prev >= t) {
        throw std::invalid_argument("ddim_sigma: t_prev must be < t");
    }
    return ddim_sigma_raw(sched.alpha_bar(t), sched.alpha_bar(t_prev), eta);
}

void StepPlan::validate(int total_steps) const {
    if (timesteps.empty()) {
        throw std::invalid_argument("plan: empty timestep list");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("plan: eta must lie in [0, 1]");
    }
    int prev = total_steps + 1;
    for (int t : timesteps) {
        if (t < 1 || t > total_steps) {
            throw std::invalid_argument("plan: timestep outside schedule");
        }
        if (t >= prev) {
            throw std::invalid_argument("plan: timesteps must be strictly decreasing");
        }
        prev = t;
    }
}

StepPlan make_even_plan(const NoiseSchedule& sched, int n_steps, double eta) {
    const int T = sched.total_steps();
    if (n_steps < 1 || n_steps > T) {
        throw std::invalid_argument("plan: step count must lie in [1, T]");
    }
    StepPlan plan;
    plan.eta = eta;
    plan.timesteps.reserve(static_cast<std::size_t>(n_steps));
    for (int j = n_steps - 1; j >= 0; --j) {
        const int t = 1 + static_cast<int>((static_cast<long long>(j) * T) / n_steps);
        if (plan.timesteps.empty() || plan.timesteps.back() > t) {
            plan.timesteps.push_back(t);
        }
    }
    plan.validate(T);
    return plan;
}

}  // namespace dq
