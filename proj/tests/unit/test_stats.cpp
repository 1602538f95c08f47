#include <doctest.h>

#include <vector>

#include "../data/normaltest_reference.hpp"
#include "radval/stats.hpp"

using namespace radval;

TEST_CASE("normality p-values match the reference implementation") {
    for (const auto& c : testdata::normaltest_cases()) {
        CAPTURE(c.name);
        const stats::NormalityResult r = stats::dagostino_pearson(c.samples);
        CHECK(r.statistic == doctest::Approx(c.statistic).epsilon(1e-9));
        CHECK(std::abs(r.pvalue - c.pvalue) <= 1e-6);
        CHECK(r.statistic == doctest::Approx(r.skew_z * r.skew_z + r.kurtosis_z * r.kurtosis_z));
    }
}

TEST_CASE("normality test preconditions") {
    std::vector<double> nineteen(19);
    for (std::size_t i = 0; i < nineteen.size(); ++i) nineteen[i] = static_cast<double>(i);
    CHECK_THROWS_AS((void)stats::dagostino_pearson(nineteen), stats::InsufficientSampleError);
    nineteen.push_back(3.0);
    CHECK_NOTHROW((void)stats::dagostino_pearson(nineteen));
    const std::vector<double> flat(50, 0.02);
    CHECK_THROWS_AS((void)stats::dagostino_pearson(flat), stats::DegenerateSampleError);
}

TEST_CASE("mean") {
    const std::vector<double> v{1, 2, 3, 6};
    CHECK(stats::mean(v) == 3.0);
    CHECK_THROWS_AS((void)stats::mean(std::vector<double>{}), Error);
}
