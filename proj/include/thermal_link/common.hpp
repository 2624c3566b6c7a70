// common.hpp — shared matrix aliases, error types, and hashing helpers

#pragma once

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace thermal_link {

inline constexpr int kDim = 6;

// Bare-basis indices (single excitation plus the shared ground state).
inline constexpr int kAtom1 = 0;    // |eg000>
inline constexpr int kCavity1 = 1;  // |gg100>
inline constexpr int kFiber = 2;    // |gg001>
inline constexpr int kCavity2 = 3;  // |gg010>
inline constexpr int kAtom2 = 4;    // |ge000>
inline constexpr int kGround = 5;   // |gg000>

using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using CMat6 = Eigen::Matrix<std::complex<double>, 6, 6>;

inline constexpr const char* kToolVersion = "0.1.0";

// Exit-code carriers for the CLI layer.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FNV-1a over raw double bits; stable across runs for identical inputs.
struct Fnv1a {
    std::uint64_t state = 1469598103934665603ull;

    void feed(std::uint64_t bits) {
        for (int i = 0; i < 8; ++i) {
            state ^= (bits >> (8 * i)) & 0xffull;
            state *= 1099511628211ull;
        }
    }
    void feed(double x) { feed(std::bit_cast<std::uint64_t>(x)); }

    template <typename Iter>
    void feed_range(Iter first, Iter last) {
        for (; first != last; ++first) feed(*first);
    }
};

}  // namespace thermal_link
