#include <doctest.h>

#include <random>

#include "../test_support.hpp"
#include "radval/attacks.hpp"
#include "radval/error.hpp"
#include "radval/verify.hpp"

using namespace radval;

TEST_CASE("fgsm with a zero gradient leaves the input alone") {
    const Network net(Shape{3}, {Dense{3, 2, {0, 0, 0, 0, 0, 0}, {1, 0}}}, 2);
    const Tensor x = Tensor::vector({0.2, 0.5, 0.8});
    const AttackResult r = fgsm(net, x, 0, 0.1);
    CHECK(r.adversarial == x);
    CHECK(r.perturbation_linf == 0.0);
    CHECK_FALSE(r.success);
}

TEST_CASE("fgsm on a linear two-class model") {
    // score0 - score1 = w . x + b; the sign step moves each coordinate by -eps * sign(w_i).
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> wdist(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 6;
        std::vector<double> w(n), weights(2 * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = wdist(rng);
            weights[i] = w[i];
        }
        const Tensor x(Shape{n}, testing::uniform_values(rng, n, 0.2, 0.8));
        double wx = 0.0, l1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            wx += w[i] * x[i];
            l1 += std::abs(w[i]);
        }
        const double b = wdist(rng) * 0.1 - wx + 0.05;  // margin 0.05 + noise
        const Network net(Shape{n}, {Dense{n, 2, weights, {b, 0}}}, 2);
        const double margin = wx + b;
        if (margin <= 0) continue;
        for (double eps : {0.01, 0.1, 0.19}) {
            const AttackResult r = fgsm(net, x, 0, eps);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(r.adversarial[i] == doctest::Approx(x[i] - eps * (w[i] > 0 ? 1 : -1)));
            }
            CHECK(r.success == (margin - eps * l1 < 0));
            CHECK(r.perturbation_linf == doctest::Approx(eps));
        }
    }
}

TEST_CASE("pgd and min_pgd") {
    std::mt19937_64 rng(21);
    std::size_t fgsm_successes = 0, pgd_successes = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Network net = testing::random_mlp(rng, 10, {16}, 3, ActivationKind::ReLU);
        const Tensor x = testing::random_input(rng, net.input_shape());
        const std::size_t label = forward(net, x).label;
        const AttackResult f = fgsm(net, x, label, 0.05);
        const AttackResult p = pgd(net, x, label, 0.05);
        fgsm_successes += f.success;
        pgd_successes += p.success;
        if (f.success) CHECK(p.success);
        CHECK(p.perturbation_linf <= 0.05 + 1e-12);
        for (double v : p.adversarial.values()) CHECK((v >= 0.0 && v <= 1.0));

        const AttackResult m = min_pgd(net, x, label, default_epsilon_grid());
        if (m.success) {
            CHECK(m.adversarial_label != label);
            CHECK(m.perturbation_linf <= m.epsilon + 1e-12);
            CHECK_FALSE(is_robust(net, x, m.perturbation_linf, Domain::Zonotope).robust);
            CHECK_FALSE(is_robust(net, x, m.epsilon, Domain::Interval).robust);
        }
    }
    CHECK(pgd_successes >= fgsm_successes);
    CHECK_THROWS_AS((void)min_pgd(testing::random_mlp(rng, 2, {2}, 2, ActivationKind::ReLU),
                                  Tensor::vector({0.5, 0.5}), 0, {0.1, 0.05}),
                    Error);
}

TEST_CASE("default epsilon grid") {
    const auto grid = default_epsilon_grid();
    REQUIRE(grid.size() == 25);
    CHECK(grid.front() == doctest::Approx(0.002));
    CHECK(grid.back() == doctest::Approx(0.1));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("falsification is seeded and stays inside the box") {
    const Network net(Shape{1}, {Dense{1, 2, {1, -1}, {0, 1}}}, 2);
    const Tensor x = Tensor::vector({0.55});
    const auto a = falsify(net, x, 0.3, 200, 5);
    const auto b = falsify(net, x, 0.3, 200, 5);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
    CHECK(std::abs((*a)[0] - 0.55) <= 0.3);
    CHECK((*a)[0] < 0.5);
    CHECK_FALSE(falsify(net, Tensor::vector({0.9}), 0.3, 500, 5));
}
