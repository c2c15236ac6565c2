#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace dq {

// splitmix64 finalizer; derives independent child seeds from (seed, salt).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream salts. Every consumer of randomness derives its own stream so that
// concurrent execution cannot reorder draws.
namespace salt {
inline constexpr std::uint64_t traj_init = 0x01;  // x_T draw
inline constexpr std::uint64_t traj_step = 0x02;  // per-step diffusion noise
inline constexpr std::uint64_t traj_corr = 0x03;  // correction draws (sd2)
inline constexpr std::uint64_t traj_src = 0x04;   // stochastic eps sources
inline constexpr std::uint64_t traj_aux = 0x05;   // secondary model evals
inline constexpr std::uint64_t truth = 0x10;
inline constexpr std::uint64_t mode_base = 0x20;
inline constexpr std::uint64_t collect = 0x30;
inline constexpr std::uint64_t calib = 0x40;
inline constexpr std::uint64_t inject = 0x50;
inline constexpr std::uint64_t train = 0x60;
}  // namespace salt

// mt19937_64 with hand-rolled transforms. The engine is bit-exact by the
// standard; std::normal_distribution is not, so Box-Muller is done here.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // [0, n)
    int uniform_int(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

    Eigen::VectorXd normal_vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) {
            v[i] = normal();
        }
        return v;
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline RngStream derive_stream(std::uint64_t seed, std::uint64_t salt_value) {
    return RngStream(mix_seed(seed, salt_value));
}

}  // namespace dq
