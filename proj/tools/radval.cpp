// radval: command-line front end for training, attacking, certifying and validating networks.
//
// Exit codes: 0 success or Robust, 1 Unknown or Reject, 2 usage error, 3 data error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radval/attacks.hpp"
#include "radval/dataset.hpp"
#include "radval/error.hpp"
#include "radval/evaluation.hpp"
#include "radval/model_io.hpp"
#include "radval/radius.hpp"
#include "radval/train.hpp"
#include "radval/validators.hpp"
#include "radval/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace radval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct UsageError : Error {
    using Error::Error;
};

struct Options {
    // inputs
    std::string network;
    std::string dataset;
    std::string format = "csv";
    std::string labels;
    std::optional<std::size_t> index;
    std::size_t count = 0;  // 0 = every sample

    // attacks
    std::string attack = "fgsm";
    double attack_epsilon = 0.1;
    std::vector<double> epsilon{0.1, 0.05};  // FGSM budgets for evaluate
    std::size_t pgd_steps = 20;
    bool random_selection = false;

    // search and verification
    double up = 0.256;
    double tol = 0.001;
    std::string domain = "zonotope";
    double delta = 0.0;

    // validators
    std::string mode = "window";
    double threshold = 0.01;
    std::size_t window_size = 50;
    double sigma0 = 0.014;
    double sigma1 = 0.001;
    std::string bootstrap;

    // training and data generation
    std::string arch = "3x30,10";
    std::string activation = "relu";
    std::size_t epochs = 30;
    double lr = 0.05;
    double momentum = 0.9;
    std::size_t batch_size = 16;
    double test_fraction = 0.0;
    std::size_t classes = 4;
    std::size_t dims = 16;
    std::size_t per_class = 1000;
    double spread = 0.13;

    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::string out;
};

SearchParams search_params(const Options& o) {
    SearchParams p{o.up, o.tol, parse_domain(o.domain)};
    p.validate();
    return p;
}

json search_json(const Options& o) {
    return {{"up", o.up}, {"tol", o.tol}, {"domain", o.domain}, {"iterations", search_params(o).iterations()}};
}

/// Echoes the fully materialized configuration and stores it next to the outputs.
void echo_config(const std::string& command, const json& settings, const Options& o) {
    json config = settings;
    config["command"] = command;
    config["seed"] = o.seed;
    const std::string text = config.dump(2);
    std::cerr << text << '\n';
    if (!o.out.empty()) {
        fs::create_directories(o.out);
        std::ofstream(fs::path(o.out) / "config.json") << text << '\n';
    }
}

Network load_net(const Options& o) {
    if (o.network.empty()) throw UsageError("--network is required");
    return load_network(o.network);
}

Dataset load_data(const Options& o, const Network* net) {
    if (o.dataset.empty()) throw UsageError("--dataset is required");
    std::optional<Shape> shape;
    std::optional<std::size_t> label_count;
    if (net) {
        shape = net->input_shape();
        label_count = net->label_count();
    }
    const DatasetFormat format = parse_dataset_format(o.format);
    if (format == DatasetFormat::Idx && !o.labels.empty()) {
        Dataset data = load_idx(o.dataset, o.labels, label_count);
        if (shape) {
            for (auto& s : data.samples) s.input = s.input.reshaped(*shape);
        }
        return data;
    }
    return load_dataset(o.dataset, format, shape, label_count);
}

/// Indices selected by --index / --count.
std::vector<std::size_t> selection(const Options& o, const Dataset& data) {
    if (o.index) {
        if (*o.index >= data.size()) {
            throw DataError("--index " + std::to_string(*o.index) + " is out of range for " +
                            std::to_string(data.size()) + " samples");
        }
        return {*o.index};
    }
    const std::size_t n = o.count == 0 ? data.size() : std::min(o.count, data.size());
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
}

json number_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

// ---------------------------------------------------------------------------

int cmd_gen_data(const Options& o) {
    if (o.out.empty()) throw UsageError("--out is required");
    if (!(o.test_fraction >= 0.0 && o.test_fraction < 1.0)) throw UsageError("--test-fraction must be in [0, 1)");
    echo_config("gen-data",
                {{"classes", o.classes}, {"dims", o.dims}, {"per_class", o.per_class}, {"spread", o.spread},
                 {"test_fraction", o.test_fraction}, {"out", o.out}},
                o);
    const Dataset data = gen_synthetic(o.classes, o.dims, o.per_class, o.spread, o.seed);
    const fs::path dir(o.out);
    if (o.test_fraction > 0.0) {
        const auto [train, test] = split(data, o.test_fraction, o.seed);
        save_csv(train, dir / "train.csv");
        save_csv(test, dir / "test.csv");
        std::cout << "wrote " << train.size() << " training and " << test.size() << " test samples to " << o.out
                  << '\n';
    } else {
        save_csv(data, dir / "data.csv");
        std::cout << "wrote " << data.size() << " samples to " << (dir / "data.csv").string() << '\n';
    }
    return kExitOk;
}

int cmd_train(const Options& o) {
    if (o.out.empty()) throw UsageError("--out is required");
    const Architecture arch = parse_architecture(o.arch);
    const ActivationKind act = parse_activation(o.activation);
    const TrainConfig config{o.epochs, o.lr, o.momentum, o.batch_size, o.seed};
    echo_config("train",
                {{"dataset", o.dataset}, {"format", o.format}, {"arch", to_string(arch)}, {"activation", o.activation},
                 {"epochs", o.epochs}, {"lr", o.lr}, {"momentum", o.momentum}, {"batch_size", o.batch_size},
                 {"test_fraction", o.test_fraction}, {"out", o.out}},
                o);

    Dataset data = load_data(o, nullptr);
    std::optional<Dataset> test;
    if (o.test_fraction > 0.0) {
        auto parts = split(data, o.test_fraction, o.seed);
        data = std::move(parts.first);
        test = std::move(parts.second);
    }
    const TrainResult result = train_sgd(data, arch, act, config, test ? &*test : nullptr);
    const fs::path path = fs::path(o.out) / "network.json";
    save_network(result.net, path);

    json summary{{"network", path.string()},
                 {"final_loss", result.final_loss},
                 {"train_accuracy", result.train_accuracy},
                 {"test_accuracy", number_or_null(result.test_accuracy)}};
    std::cout << summary.dump() << '\n';
    return kExitOk;
}

int cmd_attack(const Options& o) {
    const double eps = o.attack_epsilon;
    const Network net = load_net(o);
    const Dataset data = load_data(o, &net);
    echo_config("attack",
                {{"network", o.network}, {"dataset", o.dataset}, {"format", o.format}, {"attack", o.attack},
                 {"epsilon", eps}, {"pgd_steps", o.pgd_steps}, {"count", o.count},
                 {"index", o.index ? json(*o.index) : json(nullptr)}, {"out", o.out}},
                o);

    const std::vector<double> grid = [&] {
        auto g = default_epsilon_grid();
        std::erase_if(g, [eps](double e) { return e > eps + 1e-12; });
        return g;
    }();
    Dataset adversarial;
    std::size_t successes = 0;
    for (std::size_t idx : selection(o, data)) {
        const Sample& s = data.samples[idx];
        PgdOptions pgd_options{o.pgd_steps, 0.0, false, o.seed};
        AttackResult r;
        if (o.attack == "fgsm") {
            r = fgsm(net, s.input, s.label, eps);
        } else if (o.attack == "pgd") {
            r = pgd(net, s.input, s.label, eps, pgd_options);
        } else if (o.attack == "min-pgd") {
            if (grid.empty()) throw UsageError("--epsilon is below the smallest grid budget 0.002");
            r = min_pgd(net, s.input, s.label, grid, pgd_options);
        } else {
            throw UsageError("unknown attack '" + o.attack + "' (expected fgsm, pgd or min-pgd)");
        }
        successes += r.success;
        if (r.success) adversarial.samples.push_back({r.adversarial, s.label});
        std::cout << json{{"index", idx},
                          {"label", s.label},
                          {"success", r.success},
                          {"adversarial_label", r.adversarial_label},
                          {"epsilon", r.epsilon},
                          {"perturbation_linf", r.perturbation_linf}}
                         .dump()
                  << std::endl;
    }
    if (!o.out.empty()) save_csv(adversarial, fs::path(o.out) / "adversarial.csv");
    return successes > 0 ? kExitOk : kExitNegative;
}

json radius_json(std::size_t idx, const RadiusResult& r) {
    json probes = json::array();
    for (const Probe& p : r.probes) probes.push_back({{"delta", p.delta}, {"robust", p.robust}});
    return {{"index", idx},          {"radius", r.radius},       {"iterations", r.iterations},
            {"saturated", r.saturated}, {"wall_time_s", r.wall_time}, {"probes", probes}};
}

int cmd_radius(const Options& o) {
    const SearchParams params = search_params(o);
    const Network net = load_net(o);
    const Dataset data = load_data(o, &net);
    echo_config("radius",
                {{"network", o.network}, {"dataset", o.dataset}, {"format", o.format}, {"search", search_json(o)},
                 {"count", o.count}, {"index", o.index ? json(*o.index) : json(nullptr)}, {"jobs", o.jobs},
                 {"out", o.out}},
                o);

    const auto indices = selection(o, data);
    std::vector<Tensor> inputs;
    for (std::size_t idx : indices) inputs.push_back(data.samples[idx].input);
    const auto results = batch_radii(net, inputs, params, o.jobs);

    std::ofstream csv;
    if (!o.out.empty()) {
        csv.open(fs::path(o.out) / "radii.csv");
        csv << "index,label,radius,probes,saturated\n";
    }
    bool failed = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].result) {
            failed = true;
            std::cout << json{{"index", indices[i]}, {"error", results[i].error}}.dump() << '\n';
            continue;
        }
        const RadiusResult& r = *results[i].result;
        std::cout << radius_json(indices[i], r).dump() << '\n';
        if (csv.is_open()) {
            csv << indices[i] << ',' << data.samples[indices[i]].label << ',' << r.radius << ',' << r.iterations << ','
                << (r.saturated ? 1 : 0) << '\n';
        }
    }
    return failed ? kExitData : kExitOk;
}

int cmd_certify(const Options& o) {
    if (!(o.delta >= 0.0)) throw UsageError("--delta must be non-negative");
    const Domain domain = parse_domain(o.domain);
    const Network net = load_net(o);
    const Dataset data = load_data(o, &net);
    if (!o.index) throw UsageError("certify needs --index");
    echo_config("certify",
                {{"network", o.network}, {"dataset", o.dataset}, {"format", o.format}, {"index", *o.index},
                 {"delta", o.delta}, {"domain", o.domain}, {"out", o.out}},
                o);
    const std::size_t idx = selection(o, data).front();
    const Verdict v = is_robust(net, data.samples[idx].input, o.delta, domain);
    std::cout << json{{"index", idx},
                      {"delta", o.delta},
                      {"verdict", v.robust ? "robust" : "unknown"},
                      {"label", v.label},
                      {"margins", v.margins}}
                     .dump()
              << '\n';
    return v.robust ? kExitOk : kExitNegative;
}

/// One flattened input per line: either n values, or a label followed by n values.
std::optional<Tensor> parse_stream_line(const std::string& line, const Network& net, std::size_t line_no) {
    std::vector<double> values;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(cell, &used));
            if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw DataError("line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
        }
    }
    if (values.empty()) return std::nullopt;
    const std::size_t n = net.input_size();
    if (values.size() == n + 1) values.erase(values.begin());
    if (values.size() != n) {
        throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) + " values, got " +
                        std::to_string(values.size()));
    }
    for (double& v : values) {
        if (v > 1.0) v /= 255.0;
    }
    return Tensor(net.input_shape(), std::move(values));
}

int cmd_validate(const Options& o) {
    const SearchParams params = search_params(o);
    const Network net = load_net(o);
    const bool window = o.mode == "window";
    if (!window && o.mode != "threshold") throw UsageError("--mode must be threshold or window");
    const ThresholdPolicy policy{o.threshold, params.domain};
    const WindowParams wparams{o.window_size, o.sigma0, o.sigma1};
    if (window) wparams.validate();
    if (window && o.bootstrap.empty()) throw UsageError("window mode needs --bootstrap with known-valid inputs");

    echo_config("validate",
                {{"network", o.network}, {"mode", o.mode}, {"threshold", o.threshold}, {"window_size", o.window_size},
                 {"sigma0", o.sigma0}, {"sigma1", o.sigma1}, {"bootstrap", o.bootstrap}, {"format", o.format},
                 {"search", search_json(o)}, {"out", o.out}},
                o);

    std::optional<WindowState> state;
    if (window) {
        Options boot = o;
        boot.dataset = o.bootstrap;
        const Dataset valid = load_data(boot, &net);
        std::vector<Tensor> inputs;
        for (const auto& s : valid.samples) inputs.push_back(s.input);
        std::vector<double> radii;
        for (const auto& item : batch_radii(net, inputs, params, o.jobs)) {
            if (!item.result) throw DataError("bootstrap input failed: " + item.error);
            radii.push_back(item.result->radius);
        }
        state = bootstrap_window(radii, wparams);
    }

    bool rejected_any = false;
    std::size_t line_no = 0;
    for (std::string line; std::getline(std::cin, line);) {
        ++line_no;
        const auto x = parse_stream_line(line, net, line_no);
        if (!x) continue;
        CachedVerifier verifier(net, *x, params.domain);
        json record{{"line", line_no}, {"label", forward(net, *x).label}};
        Decision d;
        if (window) {
            const RadiusResult r = approximate_radius(verifier, params);
            auto [decision, next] = window_step(*state, r.radius);
            d = std::move(decision);
            state = std::move(next);
            record["radius"] = r.radius;
            record["probes"] = r.iterations;
        } else {
            d = threshold_validate(verifier, policy);
            record["radius"] = nullptr;
            record["probes"] = verifier.verifier_calls();
        }
        record["decision"] = d.accept ? "accept" : "reject";
        record["reason"] = to_string(d.reason);
        record["p_before"] = number_or_null(d.p_before);
        record["p_after"] = number_or_null(d.p_after);
        if (!d.diagnostic.empty()) record["diagnostic"] = d.diagnostic;
        rejected_any = rejected_any || !d.accept;
        std::cout << record.dump() << std::endl;  // flush per decision
    }
    return rejected_any ? kExitNegative : kExitOk;
}

int cmd_evaluate(const Options& o) {
    if (o.out.empty()) throw UsageError("--out is required");
    if (o.epsilon.size() != 2) throw UsageError("evaluate takes two budgets: --epsilon LARGE,SMALL");
    EvaluationConfig config;
    config.attacks.fgsm_large = o.epsilon[0];
    config.attacks.fgsm_small = o.epsilon[1];
    config.attacks.pgd.steps = o.pgd_steps;
    config.attacks.random_selection = o.random_selection;
    config.attacks.seed = o.seed;
    config.per_category = o.count == 0 ? 100 : o.count;
    config.search = search_params(o);
    config.theta = o.threshold;
    config.jobs = o.jobs;

    const Network net = load_net(o);
    const Dataset data = load_data(o, &net);
    echo_config("evaluate",
                {{"network", o.network}, {"dataset", o.dataset}, {"format", o.format},
                 {"epsilon", {config.attacks.fgsm_large, config.attacks.fgsm_small}},
                 {"epsilon_grid", config.attacks.epsilon_grid}, {"pgd_steps", o.pgd_steps},
                 {"random_selection", o.random_selection}, {"per_category", config.per_category},
                 {"search", search_json(o)}, {"threshold", o.threshold}, {"jobs", o.jobs}, {"out", o.out}},
                o);

    const EvaluationReport report = evaluate(net, data, config);
    write_report(report, config, o.out);
    for (Category c : kAllCategories) {
        const auto& radii = report.radii.at(c);
        std::cout << to_string(c) << ": " << radii.size() << " inputs";
        if (!radii.empty()) std::cout << ", mean radius " << report.means.means.at(c);
        std::cout << '\n';
    }
    if (report.means.separation_ratio) {
        std::cout << "separation ratio " << *report.means.separation_ratio
                  << (report.means.separation_validated ? " (meets" : " (below") << " the bar of " << kSeparationBar
                  << ")\n";
    }
    std::cout << "report written to " << o.out << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robustness-radius verification and runtime input validation for neural networks"};
    app.require_subcommand(1);
    Options o;

    auto add_network = [&](CLI::App* c) { c->add_option("--network", o.network, "Network JSON file")->required(); };
    auto add_dataset = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--dataset", o.dataset, "Dataset file (csv, or idx3 images)");
        if (required) opt->required();
        c->add_option("--format", o.format, "Dataset format: csv or idx")->capture_default_str();
        c->add_option("--labels", o.labels, "idx1 label file (default: derived from the image file name)");
    };
    auto add_selection = [&](CLI::App* c) {
        c->add_option("--index", o.index, "Single sample index");
        c->add_option("--count", o.count, "Number of leading samples (0 = all)")->capture_default_str();
    };
    auto add_search = [&](CLI::App* c) {
        c->add_option("--up", o.up, "Upper end of the radius search")->capture_default_str();
        c->add_option("--tol", o.tol, "Radius search tolerance")->capture_default_str();
        c->add_option("--domain", o.domain, "Abstract domain: zonotope or interval")->capture_default_str();
    };
    auto add_common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "Random seed")->capture_default_str();
        c->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)")->capture_default_str();
        c->add_option("--out", o.out, "Output directory");
    };

    auto* gen = app.add_subcommand("gen-data", "Generate a synthetic Gaussian-cluster dataset");
    gen->add_option("--classes", o.classes)->capture_default_str();
    gen->add_option("--dims", o.dims)->capture_default_str();
    gen->add_option("--per-class", o.per_class)->capture_default_str();
    gen->add_option("--spread", o.spread, "Standard deviation around each class center")->capture_default_str();
    gen->add_option("--test-fraction", o.test_fraction, "Write train.csv/test.csv with this held-out share")
        ->capture_default_str();
    add_common(gen);

    auto* train = app.add_subcommand("train", "Train a network with mini-batch SGD and save it as JSON");
    add_dataset(train, true);
    train->add_option("--arch", o.arch, "Layer sizes, e.g. 3x30,10 or 6@3x3,16@3x3,128,10")->capture_default_str();
    train->add_option("--activation", o.activation, "relu, sigmoid or tanh")->capture_default_str();
    train->add_option("--epochs", o.epochs)->capture_default_str();
    train->add_option("--lr", o.lr)->capture_default_str();
    train->add_option("--momentum", o.momentum)->capture_default_str();
    train->add_option("--batch-size", o.batch_size)->capture_default_str();
    train->add_option("--test-fraction", o.test_fraction, "Hold out this share to report test accuracy")
        ->capture_default_str();
    add_common(train);

    auto* attack = app.add_subcommand("attack", "Run FGSM, PGD or minimal-budget PGD on dataset samples");
    add_network(attack);
    add_dataset(attack, true);
    add_selection(attack);
    attack->add_option("--attack", o.attack, "fgsm, pgd or min-pgd")->capture_default_str();
    attack->add_option("--epsilon", o.attack_epsilon, "Attack budget (min-pgd: largest grid budget)")
        ->capture_default_str();
    attack->add_option("--pgd-steps", o.pgd_steps, "PGD iterations")->capture_default_str();
    add_common(attack);

    auto* radius = app.add_subcommand("radius", "Approximate the robustness radius of each input");
    add_network(radius);
    add_dataset(radius, true);
    add_selection(radius);
    add_search(radius);
    add_common(radius);

    auto* certify = app.add_subcommand("certify", "Answer one robustness query (exit 0 robust, 1 unknown)");
    add_network(certify);
    add_dataset(certify, true);
    certify->add_option("--index", o.index, "Sample index")->required();
    certify->add_option("--delta", o.delta, "L-infinity radius")->required();
    certify->add_option("--domain", o.domain, "Abstract domain: zonotope or interval")->capture_default_str();
    add_common(certify);

    auto* validate = app.add_subcommand("validate", "Accept or reject a stream of inputs read from stdin");
    add_network(validate);
    add_search(validate);
    validate->add_option("--mode", o.mode, "threshold or window")->capture_default_str();
    validate->add_option("--threshold", o.threshold, "Threshold policy radius")->capture_default_str();
    validate->add_option("--window-size", o.window_size, "Window length")->capture_default_str();
    validate->add_option("--sigma0", o.sigma0, "Accept any radius at or above this value")->capture_default_str();
    validate->add_option("--sigma1", o.sigma1, "Largest allowed p-value drop")->capture_default_str();
    validate->add_option("--bootstrap", o.bootstrap, "Dataset of known-valid inputs that seeds the window");
    validate->add_option("--format", o.format, "Format of the bootstrap dataset")->capture_default_str();
    add_common(validate);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Categorize inputs, compute radii and write all reports");
    add_network(evaluate_cmd);
    add_dataset(evaluate_cmd, true);
    evaluate_cmd->add_option("--epsilon", o.epsilon, "FGSM budgets LARGE,SMALL")->delimiter(',')->expected(2)
        ->capture_default_str();
    evaluate_cmd->add_option("--count", o.count, "Inputs per category (default 100)");
    evaluate_cmd->add_option("--pgd-steps", o.pgd_steps, "PGD iterations")->capture_default_str();
    evaluate_cmd->add_flag("--random-selection", o.random_selection, "Seeded random instead of first-n selection");
    evaluate_cmd->add_option("--threshold", o.threshold, "Threshold policy radius")->capture_default_str();
    add_search(evaluate_cmd);
    add_common(evaluate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) return cmd_gen_data(o);
        if (*train) return cmd_train(o);
        if (*attack) return cmd_attack(o);
        if (*radius) return cmd_radius(o);
        if (*certify) return cmd_certify(o);
        if (*validate) return cmd_validate(o);
        if (*evaluate_cmd) return cmd_evaluate(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const TrainingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const Error& e) {
        // Remaining library errors come from invalid parameter values.
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
