#include <doctest.h>

#include <random>

#include "../test_support.hpp"
#include "radval/attacks.hpp"
#include "radval/radius.hpp"
#include "radval/error.hpp"
#include "radval/verify.hpp"

using namespace radval;

namespace {

// scores (x, 1 - x) on a scalar input
Network line_net() { return Network(Shape{1}, {Dense{1, 2, {1, -1}, {0, 1}}}, 2); }

}  // namespace

TEST_CASE("is_robust on a one-dimensional classifier") {
    const Network net = line_net();
    for (Domain d : {Domain::Interval, Domain::Zonotope}) {
        CAPTURE(to_string(d));
        const Verdict far = is_robust(net, Tensor::vector({0.9}), 0.3, d);
        CHECK(far.robust);
        CHECK(far.label == 0);
        CHECK(far.margins[1] == doctest::Approx(0.2));
        CHECK_FALSE(is_robust(net, Tensor::vector({0.55}), 0.3, d).robust);
        CHECK(is_robust(net, Tensor::vector({0.55}), 0.0, d).robust);
    }
}

TEST_CASE("domain names") {
    CHECK(parse_domain("zonotope") == Domain::Zonotope);
    CHECK(parse_domain("deepzono") == Domain::Zonotope);
    CHECK(parse_domain("interval") == Domain::Interval);
    CHECK(parse_domain("box") == Domain::Interval);
    CHECK_THROWS_AS((void)parse_domain("polyhedra"), Error);
    CHECK(parse_domain(to_string(Domain::Zonotope)) == Domain::Zonotope);
}

TEST_CASE("a robust verdict is never contradicted by sampling") {
    std::mt19937_64 rng(71);
    std::size_t robust_seen = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const Network net = testing::random_mlp(rng, 6, {10}, 3,
                                                trial % 2 ? ActivationKind::Tanh : ActivationKind::ReLU);
        const Tensor x = testing::random_input(rng, net.input_shape());
        for (double delta : {0.005, 0.02, 0.08}) {
            for (Domain d : {Domain::Interval, Domain::Zonotope}) {
                if (!is_robust(net, x, delta, d).robust) continue;
                ++robust_seen;
                CHECK_FALSE(falsify(net, x, delta, 300, trial).has_value());
            }
        }
    }
    CHECK(robust_seen > 0);
}

TEST_CASE("zonotope is at least as precise as intervals on affine networks") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Network net(Shape{5}, {testing::random_dense(rng, 5, 8), testing::random_dense(rng, 8, 3)}, 3);
        const Tensor x = testing::random_input(rng, net.input_shape());
        const Verdict a = is_robust(net, x, 0.05, Domain::Interval);
        const Verdict b = is_robust(net, x, 0.05, Domain::Zonotope);
        for (std::size_t k = 0; k < 3; ++k) CHECK(b.margins[k] >= a.margins[k] - 1e-9);
        if (a.robust) CHECK(b.robust);
    }
}

TEST_CASE("bisection against a step oracle") {
    SearchParams params;  // up 0.256, tolerance 0.001
    CHECK(params.iterations() == 8);
    std::size_t calls = 0;
    const RadiusResult r = approximate_radius(
        [&](double d) {
            ++calls;
            return d <= 0.1;
        },
        params);
    CHECK(calls == 8);
    CHECK(r.probes.size() == 8);
    CHECK(r.radius >= 0.099);
    CHECK(r.radius <= 0.1);
    CHECK_FALSE(r.saturated);
    CHECK(r.monotone_trace());
}

TEST_CASE("bisection edge cases") {
    const SearchParams params;
    const RadiusResult never = approximate_radius([](double) { return false; }, params);
    CHECK(never.radius == 0.0);
    CHECK_FALSE(never.saturated);
    const RadiusResult always = approximate_radius([](double) { return true; }, params);
    CHECK(always.saturated);
    CHECK(always.radius >= params.up - params.tolerance);
    CHECK(always.radius <= params.up);

    CHECK_THROWS_AS(SearchParams({0.1, 0.0, Domain::Zonotope}).validate(), Error);
    CHECK_THROWS_AS(SearchParams({0.1, 0.2, Domain::Zonotope}).validate(), Error);
}

TEST_CASE("bisection error is within tolerance for any step position") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> where(0.0, 0.3);
    for (double tol : {0.001, 0.004, 0.01}) {
        const SearchParams params{0.256, tol, Domain::Zonotope};
        for (int trial = 0; trial < 200; ++trial) {
            const double t = where(rng);
            const RadiusResult r = approximate_radius([t](double d) { return d <= t; }, params);
            if (t >= params.up) {
                CHECK(r.saturated);
                continue;
            }
            CHECK(r.radius <= t);
            CHECK(t - r.radius <= tol);
        }
    }
}

TEST_CASE("radius search on networks") {
    std::mt19937_64 rng(44);
    const Network net = testing::random_mlp(rng, 8, {12, 12}, 3, ActivationKind::ReLU, 0.5);
    std::vector<Tensor> inputs;
    for (int i = 0; i < 12; ++i) inputs.push_back(testing::random_input(rng, net.input_shape()));
    const SearchParams params;

    SUBCASE("deterministic and certified") {
        for (const Tensor& x : inputs) {
            const RadiusResult a = approximate_radius(net, x, params);
            const RadiusResult b = approximate_radius(net, x, params);
            CHECK(a.radius == b.radius);
            CHECK(a.monotone_trace());
            CHECK(is_robust(net, x, a.radius, params.domain).robust);
        }
    }
    SUBCASE("parallel batch matches sequential") {
        const auto seq = batch_radii(net, inputs, params, 1);
        const auto par = batch_radii(net, inputs, params, 4);
        REQUIRE(seq.size() == inputs.size());
        REQUIRE(par.size() == inputs.size());
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            REQUIRE(seq[i].result);
            REQUIRE(par[i].result);
            CHECK(seq[i].result->radius == par[i].result->radius);
            CHECK(seq[i].result->radius == approximate_radius(net, inputs[i], params).radius);
        }
    }
    SUBCASE("a bad input is reported without stopping the batch") {
        std::vector<Tensor> mixed = inputs;
        mixed[3] = Tensor::vector({0.5});
        const auto out = batch_radii(net, mixed, params, 2);
        CHECK_FALSE(out[3].result);
        CHECK_FALSE(out[3].error.empty());
        CHECK(out[4].result);
    }
    SUBCASE("verdict cache") {
        CachedVerifier v(net, inputs[0], params.domain);
        const bool first = v.robust_at(0.01);
        CHECK(v.robust_at(0.01) == first);
        CHECK(v.verifier_calls() == 1);
        const RadiusResult r = approximate_radius(v, params);
        CHECK(v.verifier_calls() <= 1 + r.probes.size());
    }
}
