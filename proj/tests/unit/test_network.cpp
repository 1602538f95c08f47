#include <doctest.h>

#include <random>

#include "../test_support.hpp"
#include "radval/error.hpp"
#include "radval/network.hpp"
#include "radval/train.hpp"

using namespace radval;

TEST_CASE("identity dense layer passes the input through") {
    Dense d{2, 2, {1, 0, 0, 1}, {0, 0}};
    Network net(Shape{2}, {d}, 2);
    const auto p = forward(net, Tensor::vector({0.2, 0.8}));
    CHECK(p.scores[0] == doctest::Approx(0.2));
    CHECK(p.scores[1] == doctest::Approx(0.8));
    CHECK(p.label == 1);
}

TEST_CASE("2-2-2 relu network evaluated by hand") {
    Dense w1{2, 2, {1, -1, -1, 1}, {0, 0}};
    Dense w2{2, 2, {1, 0, 0, 1}, {0, 0}};
    Network net(Shape{2}, {w1, Activation{ActivationKind::ReLU}, w2}, 2);
    const auto trace = forward_trace(net, std::vector<double>{1, 0});
    CHECK(trace.activations[2] == std::vector<double>{1, 0});
    const auto p = forward(net, Tensor::vector({1, 0}));
    CHECK(p.scores.values() == std::vector<double>{1, 0});
    CHECK(p.label == 0);
}

TEST_CASE("argmax breaks ties toward the lowest index") {
    CHECK(argmax(std::vector<double>{3, 3, 1}) == 0);
    CHECK(argmax(std::vector<double>{1, 3, 3, 3}) == 1);
    // Permuting the later equal scores never moves the label away from index 0.
    std::vector<double> v{5, 5, 2, 5};
    std::sort(v.begin() + 1, v.end());
    do {
        CHECK(argmax(v) == 0);
    } while (std::next_permutation(v.begin() + 1, v.end()));
}

TEST_CASE("forward rejects mismatched and non-finite inputs") {
    Dense d{2, 2, {1, 0, 0, 1}, {0, 0}};
    Network net(Shape{2}, {d}, 2);
    CHECK_THROWS_AS((void)forward(net, Tensor::vector({0.1, 0.2, 0.3})), ShapeError);
    CHECK_THROWS_AS((void)forward(net, Tensor::vector({0.1, std::nan("")})), ShapeError);
}

TEST_CASE("network construction validates shapes") {
    Dense d{3, 2, std::vector<double>(6, 0.0), {0, 0}};
    CHECK_THROWS_AS(Network(Shape{2}, {d}, 2), ShapeError);
    CHECK_THROWS_AS(Network(Shape{3}, {d}, 3), ShapeError);
    CHECK_THROWS_AS(Network(Shape{1, 5, 5}, {MaxPool2D{2, 2}, Dense{4, 2, std::vector<double>(8), {0, 0}}}, 2),
                    ShapeError);
}

TEST_CASE("conv2d output matches a direct evaluation") {
    // One 2x2 filter on a 3x3 input with padding 1 and stride 2.
    Conv2D c;
    c.in_channels = 1;
    c.out_channels = 1;
    c.kernel_h = c.kernel_w = 2;
    c.padding = 1;
    c.stride = 2;
    c.weights = {1, 2, 3, 4};
    c.bias = {0.5};
    const Shape in_shape{1, 3, 3};
    CHECK(layers::output_shape(c, in_shape) == Shape{1, 2, 2});
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<double> y(4);
    layers::conv_apply(c, in_shape, x, y, true);
    // Padded input rows: [0 0 0 0 0], [0 1 2 3 0], [0 4 5 6 0], [0 7 8 9 0], [0 0 0 0 0].
    // Output (0,0) covers padded (0..1, 0..1): 4*1 = 4; (0,1) covers cols 2..3: 3*2 + 4*3 = 18;
    // (1,0) covers rows 2..3 cols 0..1: 2*4 + 4*7 = 36; (1,1): 5 + 2*6 + 3*8 + 4*9 = 77.
    CHECK(y == std::vector<double>{4.5, 18.5, 36.5, 77.5});
}

TEST_CASE("constant network has a zero input gradient") {
    Dense d{3, 2, std::vector<double>(6, 0.0), {0.1, -0.1}};
    Network net(Shape{3}, {d}, 2);
    const Tensor g = input_gradient(net, Tensor::vector({0.3, 0.5, 0.7}), 0);
    for (double v : g.values()) CHECK(v == 0.0);
}

TEST_CASE("max pool gradient routes to the argmax cell") {
    // Identity dense on the single pooled value, paired with a constant zero score.
    Dense d{1, 2, {1, 0}, {0, 0}};
    Network net(Shape{1, 2, 2}, {MaxPool2D{2, 2}, d}, 2);
    const Tensor x(Shape{1, 2, 2}, {1, 2, 3, 4});
    const Tensor g = input_gradient(net, x, 0);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
    CHECK(g[2] == 0.0);
    CHECK(g[3] != 0.0);
}

TEST_CASE("input gradient matches central finite differences") {
    std::mt19937_64 rng(7);
    SUBCASE("2-4-2 relu") {
        const Network net = testing::random_mlp(rng, 2, {4}, 2, ActivationKind::ReLU);
        const Tensor x = testing::random_input(rng, net.input_shape());
        const Tensor g = input_gradient(net, x, 1);
        CHECK(testing::worst_relative_error(g.values(), testing::finite_difference_gradient(net, x, 1)) <= 1e-4);
    }
    for (ActivationKind act : {ActivationKind::ReLU, ActivationKind::Sigmoid, ActivationKind::Tanh}) {
        CAPTURE(to_string(act));
        const Network mlp = testing::random_mlp(rng, 6, {8, 5}, 3, act);
        const Tensor x = testing::random_input(rng, mlp.input_shape());
        CHECK(testing::worst_relative_error(input_gradient(mlp, x, 2).values(),
                                            testing::finite_difference_gradient(mlp, x, 2)) <= 1e-4);

        const Network cnn = testing::random_cnn(rng, 2, 6, 3, 8, 4, act);
        const Tensor xc = testing::random_input(rng, cnn.input_shape());
        CHECK(testing::worst_relative_error(input_gradient(cnn, xc, 1).values(),
                                            testing::finite_difference_gradient(cnn, xc, 1)) <= 1e-4);
    }
}

TEST_CASE("forward pass is bit-for-bit deterministic") {
    std::mt19937_64 rng(3);
    const Network net = testing::random_cnn(rng, 1, 8, 4, 10, 3, ActivationKind::Tanh);
    const Tensor x = testing::random_input(rng, net.input_shape());
    CHECK(forward(net, x).scores == forward(net, x).scores);
}

TEST_CASE("architecture strings") {
    const Architecture fnn = parse_architecture("3\xC3\x97" "30,10");
    CHECK(fnn.layer_count() == 5);
    CHECK(fnn.hidden.size() == 3);
    CHECK(fnn.outputs == 10);
    CHECK(parse_architecture("3x30,10").layer_count() == 5);

    const Architecture cnn = parse_architecture("6^(3,3),16^(3,3),128,10");
    REQUIRE(cnn.hidden.size() == 3);
    CHECK(cnn.hidden[0].kind == Architecture::Entry::Kind::Conv);
    CHECK(cnn.hidden[1].units == 16);
    CHECK(cnn.hidden[2].kind == Architecture::Entry::Kind::Dense);
    CHECK(to_string(cnn) == "6^(3,3),16^(3,3),128,10");

    const Network net = build_network(cnn, Shape{1, 28, 28}, ActivationKind::ReLU, 1);
    CHECK(net.shape_out(net.layers().size() - 1) == Shape{10});

    CHECK_THROWS_AS((void)parse_architecture("3x30"), Error);
    CHECK_THROWS_AS((void)parse_architecture("abc,10"), Error);
}
