#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radval/attacks.hpp"
#include "radval/dataset.hpp"
#include "radval/network.hpp"
#include "radval/radius.hpp"

namespace radval {

enum class Category { Valid, Misclassified, Fgsm01, Fgsm005, StrongMin, RandomStrong };

inline constexpr std::array<Category, 6> kAllCategories{Category::Valid,   Category::Misclassified,
                                                        Category::Fgsm01,  Category::Fgsm005,
                                                        Category::StrongMin, Category::RandomStrong};

[[nodiscard]] std::string to_string(Category category);

/// One input of a category; for attack categories `input` is the adversarial point.
struct LabeledInput {
    std::string id;
    std::size_t source_index = 0;  // index into the dataset
    Tensor input;
    std::size_t label = 0;  // ground truth of the source sample
    double epsilon = 0.0;   // attack budget, 0 for non-attack categories
};

struct AttackConfig {
    double fgsm_large = 0.1;
    double fgsm_small = 0.05;
    std::vector<double> epsilon_grid = default_epsilon_grid();
    PgdOptions pgd;
    bool random_selection = false;  // seeded shuffle instead of dataset order
    std::uint64_t seed = 0;
};

struct CategorySets {
    std::map<Category, std::vector<LabeledInput>> inputs;
    std::map<Category, std::size_t> shortfall;  // requested minus found, only when positive
};

/// First n inputs of each category; adversarial categories attack correctly classified samples.
[[nodiscard]] CategorySets categorize(const Network& net, const Dataset& data, const AttackConfig& config,
                                      std::size_t per_category);

struct SurvivalPoint {
    double threshold = 0.0;
    std::size_t count = 0;  // radii strictly above threshold
};

[[nodiscard]] std::vector<SurvivalPoint> survival_curve(std::span<const double> radii, std::span<const double> grid);

struct RocPoint {
    double threshold = 0.0;  // inputs with radius < threshold are rejected
    double false_alarm = 0.0;
    double true_alarm = 0.0;
};

/// Sweeps every distinct radius plus a sentinel above the maximum; starts at (0,0) and ends at (1,1).
[[nodiscard]] std::vector<RocPoint> roc_curve(std::span<const double> valid_radii, std::span<const double> invalid_radii);
[[nodiscard]] double roc_auc(const std::vector<RocPoint>& curve);

using CategoryRadii = std::map<Category, std::vector<double>>;

struct RejectionTable {
    std::vector<double> thresholds;
    std::vector<Category> categories;
    std::vector<std::vector<double>> percent;  // [threshold][category]: % with radius < threshold
};

/// 0.002, 0.004, ..., 0.016.
[[nodiscard]] std::vector<double> default_rejection_thresholds();
[[nodiscard]] RejectionTable rejection_table(const CategoryRadii& radii, std::span<const double> thresholds);

/// Mean valid radius must be at least this multiple of the mean invalid radius.
inline constexpr double kSeparationBar = 2.0;

struct MeanReport {
    std::map<Category, double> means;  // only non-empty categories
    std::optional<double> valid_pvalue;
    std::string pvalue_note;  // why valid_pvalue is missing
    std::optional<double> separation_ratio;
    bool separation_validated = false;
};

[[nodiscard]] MeanReport mean_report(const CategoryRadii& radii);

struct InputRecord {
    LabeledInput input;
    Category category = Category::Valid;
    std::optional<RadiusResult> radius;
    std::string error;
};

struct EvaluationConfig {
    AttackConfig attacks;
    std::size_t per_category = 100;
    SearchParams search;
    double theta = 0.01;
    std::size_t jobs = 1;
};

struct EvaluationReport {
    std::vector<InputRecord> records;
    std::map<Category, std::size_t> shortfall;
    CategoryRadii radii;
    std::vector<double> survival_grid;
    std::map<Category, std::vector<SurvivalPoint>> survival;
    std::map<Category, std::vector<RocPoint>> roc;  // valid versus each invalid category
    std::map<Category, double> auc;
    RejectionTable rejection;
    MeanReport means;
    double mean_probe_time = 0.0;  // seconds per verifier call
    double max_probe_time = 0.0;
};

[[nodiscard]] EvaluationReport evaluate(const Network& net, const Dataset& data, const EvaluationConfig& config);

/// Writes results.csv, timing.csv, survival.csv, roc_*.csv, rejection_table.{csv,txt}, means.{csv,txt} and report.json.
void write_report(const EvaluationReport& report, const EvaluationConfig& config, const std::filesystem::path& dir);

}  // namespace radval
