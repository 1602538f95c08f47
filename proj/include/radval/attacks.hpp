#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "radval/network.hpp"
#include "radval/tensor.hpp"

namespace radval {

struct AttackResult {
    Tensor original;
    Tensor adversarial;
    std::size_t original_label = 0;     // ground-truth label the attack moves away from
    std::size_t adversarial_label = 0;  // network label of `adversarial`
    bool success = false;
    double epsilon = 0.0;  // budget that produced `adversarial`
    double perturbation_linf = 0.0;
};

/// Single gradient-sign step of size epsilon, clipped to [0, 1]. sign(0) = 0.
[[nodiscard]] AttackResult fgsm(const Network& net, const Tensor& x, std::size_t label, double epsilon);

struct PgdOptions {
    std::size_t steps = 20;
    double step_size = 0.0;  // 0 selects 2.5 * epsilon / steps
    bool random_start = false;
    std::uint64_t seed = 0;
};

/**
 * Projected gradient-sign iterations inside the epsilon box and [0, 1].
 * Without a random start the first iterate is exactly the FGSM point, and the
 * attack stops at the first iterate that changes the label.
 */
[[nodiscard]] AttackResult pgd(const Network& net, const Tensor& x, std::size_t label, double epsilon,
                               const PgdOptions& options = {});

/// Smallest budget in an ascending grid for which PGD succeeds.
[[nodiscard]] AttackResult min_pgd(const Network& net, const Tensor& x, std::size_t label,
                                   const std::vector<double>& epsilon_grid, const PgdOptions& options = {});

/// 25 evenly spaced budgets from 0.002 to 0.1.
[[nodiscard]] std::vector<double> default_epsilon_grid();

/// Uniform random search in the clipped delta box for a point whose label differs from x's.
[[nodiscard]] std::optional<Tensor> falsify(const Network& net, const Tensor& x, double delta, std::size_t trials,
                                            std::uint64_t seed);

}  // namespace radval
