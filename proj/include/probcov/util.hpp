#ifndef PROBCOV_UTIL_HPP
#define PROBCOV_UTIL_HPP

#include <cstdio>
#include <string>

namespace probcov {

// Reserved label for the internal action; traces and goals may not use it.
inline constexpr const char* kTauAction = "tau";

// Tolerance for probability-sum checks.
inline constexpr double kProbSumTol = 1e-9;

// Fixed 12 decimal digits, dot separator regardless of locale.
inline std::string format_prob(double p) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12f", p);
    return buf;
}

// 12 significant digits, used by canonical serializers.
inline std::string format_sig12(double p) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", p);
    return buf;
}

} // namespace probcov

#endif
