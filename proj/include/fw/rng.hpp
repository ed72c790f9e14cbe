#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fw {

/// Deterministic random source used by every generator in this library.
///
/// Stream definition (fixed; reimplementations must match it bit for bit):
///  - engine: std::mt19937_64 seeded with the 64-bit seed,
///  - uniform(): (engine() >> 11) * 2^-53, i.e. a double in [0, 1),
///  - gaussian(): Box-Muller on successive uniforms u1, u2:
///        rho = sqrt(-2 ln(1 - u1)),  z0 = rho cos(2 pi u2),  z1 = rho sin(2 pi u2),
///    returning z0 then the cached z1.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double rho = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double two_pi_u2 = 2.0 * 3.14159265358979323846 * u2;
        spare_ = rho * std::sin(two_pi_u2);
        have_spare_ = true;
        return rho * std::cos(two_pi_u2);
    }

    /// Uniform integer in {lo, ..., hi}.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace fw
