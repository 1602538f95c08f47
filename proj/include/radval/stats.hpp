#pragma once

#include <span>

#include "radval/error.hpp"

namespace radval::stats {

/// Fewer than kMinNormalitySamples observations.
class InsufficientSampleError : public Error {
public:
    using Error::Error;
};

/// All observations are equal.
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

inline constexpr std::size_t kMinNormalitySamples = 20;

struct NormalityResult {
    double skew_z = 0.0;      // D'Agostino (1970) transformed skewness
    double kurtosis_z = 0.0;  // Anscombe-Glynn (1983) transformed kurtosis
    double statistic = 0.0;   // K^2 = skew_z^2 + kurtosis_z^2
    double pvalue = 0.0;      // chi-square(2) survival: exp(-K^2 / 2)
};

/**
 * D'Agostino-Pearson omnibus normality test.
 *
 * Moments are the biased (population) ones: g1 = m3 / m2^1.5 and b2 = m4 / m2^2.
 * A p-value above 0.05 is conventionally read as "consistent with normal".
 *
 * Throws InsufficientSampleError for n < 20 and DegenerateSampleError for zero variance.
 */
[[nodiscard]] NormalityResult dagostino_pearson(std::span<const double> samples);

[[nodiscard]] inline double dagostino_pearson_pvalue(std::span<const double> samples) {
    return dagostino_pearson(samples).pvalue;
}

[[nodiscard]] double mean(std::span<const double> values);

}  // namespace radval::stats
