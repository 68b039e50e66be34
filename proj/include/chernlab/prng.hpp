#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace chernlab {

/// Seeded generator with fixed bit-level derivations, so streams are
/// reproducible across standard library implementations (std::
/// distributions are not).
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1p-53;
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1p-53; // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Complex gaussian with unit expected square modulus.
    std::complex<double> gaussian() {
        double re = normal();
        double im = normal();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace chernlab
