#include "radval/attacks.hpp"

#include <algorithm>
#include <random>

#include "radval/error.hpp"

namespace radval {

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

AttackResult finish(const Network& net, const Tensor& x, std::size_t label, double epsilon, Tensor adv) {
    AttackResult r;
    r.adversarial_label = forward(net, adv).label;
    r.success = r.adversarial_label != label;
    r.perturbation_linf = linf_distance(x.data(), adv.data());
    r.original = x;
    r.adversarial = std::move(adv);
    r.original_label = label;
    r.epsilon = epsilon;
    return r;
}

// One signed step followed by projection onto the epsilon box around x and [0, 1].
void signed_step(const Network& net, const Tensor& x, std::size_t label, double epsilon, double step, Tensor& cur) {
    const Tensor g = input_gradient(net, cur, label);
    for (std::size_t i = 0; i < cur.size(); ++i) {
        const double moved = cur[i] + step * sign(g[i]);
        cur[i] = std::clamp(std::clamp(moved, x[i] - epsilon, x[i] + epsilon), 0.0, 1.0);
    }
}

}  // namespace

AttackResult fgsm(const Network& net, const Tensor& x, std::size_t label, double epsilon) {
    if (!(epsilon > 0.0)) throw Error("fgsm needs a positive epsilon");
    Tensor adv = x;
    signed_step(net, x, label, epsilon, epsilon, adv);
    return finish(net, x, label, epsilon, std::move(adv));
}

AttackResult pgd(const Network& net, const Tensor& x, std::size_t label, double epsilon, const PgdOptions& options) {
    if (!(epsilon > 0.0)) throw Error("pgd needs a positive epsilon");
    if (options.steps < 1) throw Error("pgd needs at least one step");
    const double step = options.step_size > 0.0 ? options.step_size
                                                : 2.5 * epsilon / static_cast<double>(options.steps);
    Tensor cur = x;
    std::size_t first = 0;
    if (options.random_start) {
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> u(-epsilon, epsilon);
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = std::clamp(x[i] + u(rng), 0.0, 1.0);
    } else {
        signed_step(net, x, label, epsilon, epsilon, cur);
        first = 1;
    }
    if (forward(net, cur).label != label) return finish(net, x, label, epsilon, std::move(cur));
    for (std::size_t s = first; s < options.steps; ++s) {
        signed_step(net, x, label, epsilon, step, cur);
        if (forward(net, cur).label != label) break;
    }
    return finish(net, x, label, epsilon, std::move(cur));
}

AttackResult min_pgd(const Network& net, const Tensor& x, std::size_t label, const std::vector<double>& epsilon_grid,
                     const PgdOptions& options) {
    if (epsilon_grid.empty()) throw Error("min_pgd needs a non-empty budget grid");
    if (!std::is_sorted(epsilon_grid.begin(), epsilon_grid.end())) throw Error("min_pgd budget grid must ascend");
    AttackResult last;
    for (double eps : epsilon_grid) {
        last = pgd(net, x, label, eps, options);
        if (last.success) return last;
    }
    return last;
}

std::vector<double> default_epsilon_grid() {
    std::vector<double> grid(25);
    // Interpolating from both ends keeps the endpoints exact.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = static_cast<double>(i) / 24.0;
        grid[i] = (1.0 - t) * 0.002 + t * 0.1;
    }
    return grid;
}

std::optional<Tensor> falsify(const Network& net, const Tensor& x, double delta, std::size_t trials,
                              std::uint64_t seed) {
    if (trials < 1) throw Error("falsify needs at least one trial");
    const std::size_t label = forward(net, x).label;
    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> dims;
    dims.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        dims.emplace_back(std::max(0.0, x[i] - delta), std::min(1.0, x[i] + delta));
    }
    Tensor y = x;
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = dims[i](rng);
        if (argmax(forward_trace(net, y.data()).activations.back()) != label) return y;
    }
    return std::nullopt;
}

}  // namespace radval
