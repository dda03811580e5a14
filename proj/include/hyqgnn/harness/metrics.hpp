#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hyqgnn/errors.hpp"

namespace hyqgnn::harness {

struct ParityPair {
    double truth = 0.0;      // eV
    double predicted = 0.0;  // eV
};

namespace detail {

struct PairStats {
    double mean_t = 0.0, mean_p = 0.0;
    double var_t = 0.0, var_p = 0.0;  // sums of squared deviations
    double cov = 0.0;
};

inline PairStats pair_stats(const std::vector<ParityPair>& pairs) {
    PairStats s;
    const double n = static_cast<double>(pairs.size());
    for (const auto& pr : pairs) {
        s.mean_t += pr.truth;
        s.mean_p += pr.predicted;
    }
    s.mean_t /= n;
    s.mean_p /= n;
    for (const auto& pr : pairs) {
        const double dt = pr.truth - s.mean_t;
        const double dp = pr.predicted - s.mean_p;
        s.var_t += dt * dt;
        s.var_p += dp * dp;
        s.cov += dt * dp;
    }
    return s;
}

inline void check_pairs(const std::vector<ParityPair>& pairs) {
    if (pairs.size() < 3) {
        throw InsufficientData("R^2 needs at least 3 pairs, got " + std::to_string(pairs.size()));
    }
    const PairStats s = pair_stats(pairs);
    if (s.var_t == 0.0) throw ConstantTarget("true values are all equal; R^2 undefined");
    if (s.var_p == 0.0) throw DegeneratePrediction("predictions are all equal; fit R^2 undefined");
}

}  // namespace detail

/// Figure of merit: R^2 of the ordinary-least-squares line through
/// (true, predicted) — equal to the squared Pearson correlation. An affine
/// miscalibration of the predictions does not lower it.
inline double evaluate_r2(const std::vector<ParityPair>& pairs) {
    detail::check_pairs(pairs);
    const detail::PairStats s = detail::pair_stats(pairs);
    return (s.cov * s.cov) / (s.var_t * s.var_p);
}

/// Identity-line R^2 = 1 - SS_res/SS_tot; penalizes affine miscalibration.
/// Reported alongside the fit-based value for transparency.
inline double evaluate_r2_identity(const std::vector<ParityPair>& pairs) {
    detail::check_pairs(pairs);
    const detail::PairStats s = detail::pair_stats(pairs);
    double ss_res = 0.0;
    for (const auto& pr : pairs) {
        const double d = pr.truth - pr.predicted;
        ss_res += d * d;
    }
    return 1.0 - ss_res / s.var_t;
}

inline double mean_squared_error(const std::vector<ParityPair>& pairs) {
    if (pairs.empty()) throw InsufficientData("MSE needs at least one pair");
    double acc = 0.0;
    for (const auto& pr : pairs) {
        const double d = pr.truth - pr.predicted;
        acc += d * d;
    }
    return acc / static_cast<double>(pairs.size());
}

}  // namespace hyqgnn::harness
