#include "radval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace radval::stats {

double mean(std::span<const double> values) {
    if (values.empty()) throw Error("mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

NormalityResult dagostino_pearson(std::span<const double> samples) {
    const std::size_t count = samples.size();
    if (count < kMinNormalitySamples) {
        throw InsufficientSampleError("normality test needs at least " + std::to_string(kMinNormalitySamples) +
                                      " samples, got " + std::to_string(count));
    }
    const double n = static_cast<double>(count);
    const double mu = mean(samples);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : samples) {
        const double d = v - mu;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    // Equal values leave rounding noise in m2, so compare against the data scale.
    double scale = 0.0;
    for (double v : samples) scale = std::max(scale, std::abs(v));
    if (!(m2 > 1e-24 * scale * scale) || m2 <= 1e-300) throw DegenerateSampleError("normality test on a zero-variance sample");

    NormalityResult r;

    // Skewness.
    const double g1 = m3 / std::pow(m2, 1.5);
    const double y = g1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
    const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                         ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    r.skew_z = delta * std::asinh(y / alpha);

    // Kurtosis.
    const double b2 = m4 / (m2 * m2);
    const double expected = 3.0 * (n - 1.0) / (n + 1.0);
    const double variance = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
    const double x = (b2 - expected) / std::sqrt(variance);
    const double root_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                              std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
    const double a = 6.0 + 8.0 / root_beta1 * (2.0 / root_beta1 + std::sqrt(1.0 + 4.0 / (root_beta1 * root_beta1)));
    const double denom = 1.0 + x * std::sqrt(2.0 / (a - 4.0));
    // Signed cube root keeps the transform defined for denom < 0.
    const double cube = std::cbrt((1.0 - 2.0 / a) / denom);
    r.kurtosis_z = (1.0 - 2.0 / (9.0 * a) - cube) / std::sqrt(2.0 / (9.0 * a));

    r.statistic = r.skew_z * r.skew_z + r.kurtosis_z * r.kurtosis_z;
    r.pvalue = std::exp(-r.statistic / 2.0);
    return r;
}

}  // namespace radval::stats
