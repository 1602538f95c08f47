#include "radval/radius.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "radval/error.hpp"

namespace radval {

void SearchParams::validate() const {
    if (!(up > 0.0) || !(tolerance > 0.0) || !(tolerance < up)) {
        throw Error("search parameters need 0 < tolerance < up");
    }
}

std::size_t SearchParams::iterations() const {
    validate();
    // The guard keeps exact powers of two (0.256 / 0.001 = 256) from rounding up.
    const double steps = std::ceil(std::log2(up / tolerance) - 1e-9);
    return static_cast<std::size_t>(std::max(1.0, steps));
}

bool RadiusResult::monotone_trace() const {
    double lowest_unknown = std::numeric_limits<double>::infinity();
    for (const auto& p : probes) {
        if (!p.robust) lowest_unknown = std::min(lowest_unknown, p.delta);
    }
    return std::none_of(probes.begin(), probes.end(),
                        [&](const Probe& p) { return p.robust && p.delta > lowest_unknown; });
}

CachedVerifier::CachedVerifier(const Network& net, Tensor x, Domain domain)
    : net_(&net), x_(std::move(x)), domain_(domain) {}

bool CachedVerifier::robust_at(double delta) {
    if (const auto it = cache_.find(delta); it != cache_.end()) return it->second;
    ++calls_;
    const bool robust = is_robust(*net_, x_, delta, domain_).robust;
    cache_.emplace(delta, robust);
    return robust;
}

RadiusResult approximate_radius(const RobustnessOracle& oracle, const SearchParams& params) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t steps = params.iterations();
    RadiusResult result;
    double low = 0.0;
    double up = params.up;
    bool saw_unknown = false;
    for (std::size_t i = 0; i < steps; ++i) {
        const double mid = (up + low) / 2.0;
        const bool robust = oracle(mid);
        result.probes.push_back({mid, robust});
        if (robust) {
            low = mid;
        } else {
            up = mid;
            saw_unknown = true;
        }
    }
    result.radius = low;
    result.iterations = steps;
    result.saturated = !saw_unknown;
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

RadiusResult approximate_radius(CachedVerifier& verifier, const SearchParams& params) {
    return approximate_radius([&](double delta) { return verifier.robust_at(delta); }, params);
}

RadiusResult approximate_radius(const Network& net, const Tensor& x, const SearchParams& params) {
    CachedVerifier verifier(net, x, params.domain);
    return approximate_radius(verifier, params);
}

std::vector<BatchItem> batch_radii(const Network& net, const std::vector<Tensor>& inputs, const SearchParams& params,
                                   std::size_t jobs) {
    params.validate();
    std::vector<BatchItem> out(inputs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();) {
            try {
                out[i].result = approximate_radius(net, inputs[i], params);
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, std::max<std::size_t>(1, inputs.size()));
    if (jobs <= 1) {
        work();
        return out;
    }
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < jobs; ++t) workers.emplace_back(work);
    }
    return out;
}

}  // namespace radval
