#include "radval/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "radval/error.hpp"
#include "radval/stats.hpp"
#include "radval/validators.hpp"

namespace radval {

std::string to_string(Category category) {
    switch (category) {
        case Category::Valid: return "valid";
        case Category::Misclassified: return "misclassified";
        case Category::Fgsm01: return "fgsm_0.1";
        case Category::Fgsm005: return "fgsm_0.05";
        case Category::StrongMin: return "strong_min";
        case Category::RandomStrong: return "random_strong";
    }
    return "unknown";
}

CategorySets categorize(const Network& net, const Dataset& data, const AttackConfig& config,
                        std::size_t per_category) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (config.random_selection) {
        std::mt19937_64 rng(config.seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    CategorySets sets;
    for (Category c : kAllCategories) sets.inputs[c];
    auto& valid = sets.inputs[Category::Valid];
    auto& wrong = sets.inputs[Category::Misclassified];
    auto full = [&](Category c) { return sets.inputs[c].size() >= per_category; };
    auto push = [&](Category c, std::size_t idx, Tensor input, double eps) {
        auto& list = sets.inputs[c];
        list.push_back({to_string(c) + "/" + std::to_string(idx), idx, std::move(input), data.samples[idx].label, eps});
    };

    std::vector<std::size_t> correct;
    for (std::size_t idx : order) {
        const Sample& s = data.samples[idx];
        if (forward(net, s.input).label == s.label) {
            correct.push_back(idx);
            if (valid.size() < per_category) push(Category::Valid, idx, s.input, 0.0);
        } else if (wrong.size() < per_category) {
            push(Category::Misclassified, idx, s.input, 0.0);
        }
    }

    for (std::size_t idx : correct) {
        if (full(Category::Fgsm01) && full(Category::Fgsm005) && full(Category::StrongMin) &&
            full(Category::RandomStrong)) {
            break;
        }
        const Sample& s = data.samples[idx];
        if (!full(Category::Fgsm01)) {
            auto r = fgsm(net, s.input, s.label, config.fgsm_large);
            if (r.success) push(Category::Fgsm01, idx, std::move(r.adversarial), r.epsilon);
        }
        if (!full(Category::Fgsm005)) {
            auto r = fgsm(net, s.input, s.label, config.fgsm_small);
            if (r.success) push(Category::Fgsm005, idx, std::move(r.adversarial), r.epsilon);
        }
        if (!full(Category::StrongMin)) {
            auto r = min_pgd(net, s.input, s.label, config.epsilon_grid, config.pgd);
            if (r.success) push(Category::StrongMin, idx, std::move(r.adversarial), r.epsilon);
        }
        if (!full(Category::RandomStrong)) {
            PgdOptions opts = config.pgd;
            opts.random_start = true;
            opts.seed = config.seed * 1000003ULL + idx;
            auto r = min_pgd(net, s.input, s.label, config.epsilon_grid, opts);
            if (r.success) push(Category::RandomStrong, idx, std::move(r.adversarial), r.epsilon);
        }
    }

    for (Category c : kAllCategories) {
        if (sets.inputs[c].size() < per_category) sets.shortfall[c] = per_category - sets.inputs[c].size();
    }
    return sets;
}

std::vector<SurvivalPoint> survival_curve(std::span<const double> radii, std::span<const double> grid) {
    std::vector<double> sorted(radii.begin(), radii.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<SurvivalPoint> curve;
    curve.reserve(grid.size());
    for (double t : grid) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        curve.push_back({t, static_cast<std::size_t>(above)});
    }
    return curve;
}

std::vector<RocPoint> roc_curve(std::span<const double> valid_radii, std::span<const double> invalid_radii) {
    if (valid_radii.empty() || invalid_radii.empty()) return {};
    std::vector<double> valid(valid_radii.begin(), valid_radii.end());
    std::vector<double> invalid(invalid_radii.begin(), invalid_radii.end());
    std::sort(valid.begin(), valid.end());
    std::sort(invalid.begin(), invalid.end());

    std::vector<double> thresholds(valid);
    thresholds.insert(thresholds.end(), invalid.begin(), invalid.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    thresholds.push_back(std::nextafter(thresholds.back(), std::numeric_limits<double>::infinity()));

    auto rate = [](const std::vector<double>& sorted, double t) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
        return static_cast<double>(below) / static_cast<double>(sorted.size());
    };
    std::vector<RocPoint> curve;
    curve.reserve(thresholds.size());
    for (double t : thresholds) curve.push_back({t, rate(valid, t), rate(invalid, t)});
    return curve;
}

double roc_auc(const std::vector<RocPoint>& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        area += (curve[i].false_alarm - curve[i - 1].false_alarm) * (curve[i].true_alarm + curve[i - 1].true_alarm) / 2.0;
    }
    return area;
}

std::vector<double> default_rejection_thresholds() {
    std::vector<double> t;
    for (int i = 1; i <= 8; ++i) t.push_back(0.002 * i);
    return t;
}

RejectionTable rejection_table(const CategoryRadii& radii, std::span<const double> thresholds) {
    RejectionTable table;
    table.thresholds.assign(thresholds.begin(), thresholds.end());
    for (const auto& [category, list] : radii) table.categories.push_back(category);
    for (double t : thresholds) {
        std::vector<double> row;
        for (Category c : table.categories) {
            const auto& list = radii.at(c);
            if (list.empty()) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            const auto below = std::count_if(list.begin(), list.end(), [t](double r) { return r < t; });
            row.push_back(100.0 * static_cast<double>(below) / static_cast<double>(list.size()));
        }
        table.percent.push_back(std::move(row));
    }
    return table;
}

MeanReport mean_report(const CategoryRadii& radii) {
    MeanReport report;
    std::vector<double> invalid;
    for (const auto& [category, list] : radii) {
        if (list.empty()) continue;
        report.means[category] = stats::mean(list);
        if (category != Category::Valid) invalid.insert(invalid.end(), list.begin(), list.end());
    }

    const auto valid_it = radii.find(Category::Valid);
    if (valid_it != radii.end()) {
        try {
            report.valid_pvalue = stats::dagostino_pearson_pvalue(valid_it->second);
        } catch (const Error& e) {
            report.pvalue_note = e.what();
        }
    } else {
        report.pvalue_note = "no valid inputs";
    }

    if (report.means.count(Category::Valid) && !invalid.empty()) {
        const double invalid_mean = stats::mean(invalid);
        const double valid_mean = report.means.at(Category::Valid);
        report.separation_ratio = invalid_mean > 0.0 ? valid_mean / invalid_mean
                                                     : (valid_mean > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        report.separation_validated = *report.separation_ratio >= kSeparationBar;
    }
    return report;
}

EvaluationReport evaluate(const Network& net, const Dataset& data, const EvaluationConfig& config) {
    config.search.validate();
    const CategorySets sets = categorize(net, data, config.attacks, config.per_category);

    EvaluationReport report;
    report.shortfall = sets.shortfall;
    std::vector<Tensor> inputs;
    for (Category c : kAllCategories) {
        for (const auto& in : sets.inputs.at(c)) {
            report.records.push_back({in, c, std::nullopt, {}});
            inputs.push_back(in.input);
        }
    }

    const auto results = batch_radii(net, inputs, config.search, config.jobs);
    double total_time = 0.0;
    std::size_t total_calls = 0;
    for (Category c : kAllCategories) report.radii[c];
    for (std::size_t i = 0; i < results.size(); ++i) {
        auto& rec = report.records[i];
        rec.radius = results[i].result;
        rec.error = results[i].error;
        if (!rec.radius) continue;
        report.radii[rec.category].push_back(rec.radius->radius);
        total_time += rec.radius->wall_time;
        total_calls += rec.radius->iterations;
        report.max_probe_time = std::max(report.max_probe_time,
                                         rec.radius->wall_time / static_cast<double>(rec.radius->iterations));
    }
    report.mean_probe_time = total_calls ? total_time / static_cast<double>(total_calls) : 0.0;

    const auto steps = static_cast<std::size_t>(std::llround(config.search.up / config.search.tolerance));
    for (std::size_t i = 0; i <= steps; ++i) {
        report.survival_grid.push_back(config.search.tolerance * static_cast<double>(i));
    }
    for (const auto& [c, list] : report.radii) {
        report.survival[c] = survival_curve(list, report.survival_grid);
        if (c == Category::Valid) continue;
        report.roc[c] = roc_curve(report.radii.at(Category::Valid), list);
        if (!report.roc[c].empty()) report.auc[c] = roc_auc(report.roc[c]);
    }
    report.rejection = rejection_table(report.radii, default_rejection_thresholds());
    report.means = mean_report(report.radii);
    return report;
}

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream out;
    out << std::setprecision(10) << v;
    return out.str();
}

nlohmann::json json_num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

void write_report(const EvaluationReport& report, const EvaluationConfig& config, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const ThresholdPolicy policy{config.theta, config.search.domain};

    {
        auto out = open_out(dir / "results.csv");
        out << "id,category,source_index,label,epsilon,radius,probes,saturated,threshold_decision,error\n";
        for (const auto& r : report.records) {
            out << r.input.id << ',' << to_string(r.category) << ',' << r.input.source_index << ',' << r.input.label
                << ',' << num(r.input.epsilon) << ',';
            if (r.radius) {
                out << num(r.radius->radius) << ',' << r.radius->iterations << ',' << (r.radius->saturated ? 1 : 0)
                    << ',' << (threshold_validate(r.radius->radius, policy).accept ? "accept" : "reject") << ',';
            } else {
                out << ",,,,";
            }
            out << '"' << r.error << "\"\n";
        }
    }
    {
        // Wall-clock data is kept apart so every other file is reproducible byte for byte.
        auto out = open_out(dir / "timing.csv");
        out << "id,category,wall_time_s,verifier_calls\n";
        for (const auto& r : report.records) {
            if (!r.radius) continue;
            out << r.input.id << ',' << to_string(r.category) << ',' << num(r.radius->wall_time) << ','
                << r.radius->iterations << '\n';
        }
        out << "# mean_probe_time_s," << num(report.mean_probe_time) << "\n# max_probe_time_s,"
            << num(report.max_probe_time) << '\n';
    }
    {
        auto out = open_out(dir / "survival.csv");
        out << "threshold";
        for (const auto& [c, curve] : report.survival) out << ',' << to_string(c);
        out << '\n';
        for (std::size_t i = 0; i < report.survival_grid.size(); ++i) {
            out << num(report.survival_grid[i]);
            for (const auto& [c, curve] : report.survival) out << ',' << curve[i].count;
            out << '\n';
        }
    }
    for (const auto& [c, curve] : report.roc) {
        auto out = open_out(dir / ("roc_" + to_string(c) + ".csv"));
        out << "threshold,false_alarm_rate,true_alarm_rate\n";
        for (const auto& p : curve) out << num(p.threshold) << ',' << num(p.false_alarm) << ',' << num(p.true_alarm) << '\n';
    }
    {
        auto csv = open_out(dir / "rejection_table.csv");
        auto txt = open_out(dir / "rejection_table.txt");
        csv << "threshold";
        txt << "Rejection rate (%) by threshold; inputs with radius below the threshold are rejected\n";
        txt << std::setw(8) << "th.";
        for (Category c : report.rejection.categories) {
            csv << ',' << to_string(c);
            txt << std::setw(15) << to_string(c);
        }
        csv << '\n';
        txt << '\n';
        for (std::size_t t = 0; t < report.rejection.thresholds.size(); ++t) {
            csv << num(report.rejection.thresholds[t]);
            txt << std::setw(8) << std::fixed << std::setprecision(3) << report.rejection.thresholds[t];
            for (double p : report.rejection.percent[t]) {
                csv << ',' << num(p);
                if (std::isnan(p)) {
                    txt << std::setw(15) << "-";
                } else {
                    txt << std::setw(15) << std::setprecision(1) << p;
                }
            }
            csv << '\n';
            txt << '\n';
        }
    }
    {
        auto csv = open_out(dir / "means.csv");
        auto txt = open_out(dir / "means.txt");
        csv << "category,count,mean_radius\n";
        txt << std::left << std::setw(16) << "category" << std::right << std::setw(8) << "count" << std::setw(14)
            << "mean radius" << '\n';
        for (const auto& [c, list] : report.radii) {
            const auto it = report.means.means.find(c);
            csv << to_string(c) << ',' << list.size() << ',' << (it == report.means.means.end() ? "" : num(it->second))
                << '\n';
            txt << std::left << std::setw(16) << to_string(c) << std::right << std::setw(8) << list.size()
                << std::setw(14);
            if (it == report.means.means.end()) {
                txt << "-";
            } else {
                txt << std::fixed << std::setprecision(6) << it->second;
            }
            txt << '\n';
        }
        txt << "\nvalid normality p-value: "
            << (report.means.valid_pvalue ? num(*report.means.valid_pvalue) : "n/a (" + report.means.pvalue_note + ")")
            << (report.means.valid_pvalue && *report.means.valid_pvalue > 0.05 ? "  (consistent with normal)" : "")
            << '\n';
        txt << "separation ratio mean(valid)/mean(invalid): "
            << (report.means.separation_ratio ? num(*report.means.separation_ratio) : "n/a")
            << (report.means.separation_validated ? "  (>= 2, separated)" : "  (< 2, not separated)") << '\n';
        txt << "note: the >= 2 bar is an operational reading of 'much larger', not a published constant\n";
    }
    {
        nlohmann::json doc;
        for (const auto& [c, list] : report.radii) {
            nlohmann::json cat;
            cat["count"] = list.size();
            cat["radii"] = list;
            const auto it = report.means.means.find(c);
            cat["mean_radius"] = it == report.means.means.end() ? nlohmann::json(nullptr) : json_num(it->second);
            const auto sf = report.shortfall.find(c);
            cat["shortfall"] = sf == report.shortfall.end() ? 0 : sf->second;
            if (const auto a = report.auc.find(c); a != report.auc.end()) cat["auc_vs_valid"] = a->second;
            doc["categories"][to_string(c)] = cat;
        }
        doc["valid_pvalue"] = report.means.valid_pvalue ? json_num(*report.means.valid_pvalue) : nlohmann::json(nullptr);
        doc["separation_ratio"] =
            report.means.separation_ratio ? json_num(*report.means.separation_ratio) : nlohmann::json(nullptr);
        doc["separation_validated"] = report.means.separation_validated;
        doc["separation_bar"] = kSeparationBar;
        nlohmann::json table;
        table["thresholds"] = report.rejection.thresholds;
        for (std::size_t ci = 0; ci < report.rejection.categories.size(); ++ci) {
            std::vector<nlohmann::json> column;
            for (const auto& row : report.rejection.percent) column.push_back(json_num(row[ci]));
            table["percent"][to_string(report.rejection.categories[ci])] = column;
        }
        doc["rejection_table"] = table;
        auto out = open_out(dir / "report.json");
        out << doc.dump(2) << '\n';
    }
}

}  // namespace radval
