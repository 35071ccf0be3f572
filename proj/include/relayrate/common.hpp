#ifndef RELAYRATE_COMMON_HPP
#define RELAYRATE_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace relayrate {

// Unit of every entropy / mutual-information value produced by the library.
enum class LogBase { two, e };

inline double log_in_base(double x, LogBase base) {
    return base == LogBase::two ? std::log2(x) : std::log(x);
}

// Converts a value measured in `base` units to bits.
inline double to_bits(double value, LogBase base) {
    return base == LogBase::two ? value : value / std::log(2.0);
}

inline double to_nats(double value, LogBase base) {
    return base == LogBase::e ? value : value * std::log(2.0);
}

inline constexpr double kProbTol = 1e-9;       // pmf normalization tolerance
inline constexpr double kMiClampTol = 1e-9;    // negative-MI clamp threshold
inline constexpr double kEigTol = 1e-12;       // relative eigenvalue cutoff
inline constexpr std::size_t kMaxTableEntries = 10'000'000;
inline constexpr int kPermutationGuard = 6;

// Malformed shapes: unknown/duplicate variables, overlapping sets,
// inconsistent alphabets, missing permutations.
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Semantically invalid data: unnormalized pmfs, violated power constraints,
// non-PSD covariances.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Blown resource guards (table size, permutation count).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Results that contradict exact identities by more than rounding allows.
class NumericalConsistencyError : public std::runtime_error {
public:
    explicit NumericalConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace relayrate

#endif  // RELAYRATE_COMMON_HPP
