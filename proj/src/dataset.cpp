#include "radval/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "radval/error.hpp"

namespace radval {

DatasetFormat parse_dataset_format(const std::string& name) {
    if (name == "csv") return DatasetFormat::Csv;
    if (name == "idx") return DatasetFormat::Idx;
    throw DataError("unknown dataset format '" + name + "' (expected csv or idx)");
}

namespace {

double parse_double(std::string_view text, std::size_t line) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw DataError("line " + std::to_string(line) + ": cannot parse '" + std::string(text) + "'");
    }
    return v;
}

void check_label(std::size_t label, std::optional<std::size_t> label_count, std::size_t where) {
    if (label_count && label >= *label_count) {
        throw DataError("sample " + std::to_string(where) + ": label " + std::to_string(label) + " out of range");
    }
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t be32(const std::vector<unsigned char>& bytes, std::size_t offset, const std::filesystem::path& path) {
    if (offset + 4 > bytes.size()) throw DataError("truncated idx header in " + path.string());
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, std::optional<Shape> input_shape,
                 std::optional<std::size_t> label_count) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::vector<std::size_t> labels;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    double peak = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> fields;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(parse_double(rest.substr(0, comma), line_no));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() < 2) throw DataError("line " + std::to_string(line_no) + ": no pixel values");
        const double label = fields.front();
        if (label < 0 || label != static_cast<double>(static_cast<std::size_t>(label))) {
            throw DataError("line " + std::to_string(line_no) + ": label must be a non-negative integer");
        }
        if (!rows.empty() && fields.size() - 1 != rows.front().size()) {
            throw DataError("line " + std::to_string(line_no) + ": inconsistent sample length");
        }
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (!(fields[i] >= 0.0 && fields[i] <= 255.0)) {
                throw DataError("line " + std::to_string(line_no) + ": value outside [0, 255]");
            }
            peak = std::max(peak, fields[i]);
        }
        labels.push_back(static_cast<std::size_t>(label));
        rows.emplace_back(fields.begin() + 1, fields.end());
    }

    Dataset data;
    const double scale = peak > 1.0 ? 1.0 / 255.0 : 1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        check_label(labels[i], label_count, i);
        for (double& v : rows[i]) v *= scale;
        Shape shape = input_shape ? *input_shape : Shape{rows[i].size()};
        if (element_count(shape) != rows[i].size()) {
            throw DataError("sample " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                            " values, expected shape " + to_string(shape));
        }
        data.samples.push_back({Tensor(std::move(shape), std::move(rows[i])), labels[i]});
    }
    return data;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out.precision(17);
    for (const auto& s : data.samples) {
        out << s.label;
        for (double v : s.input.values()) out << ',' << v;
        out << '\n';
    }
}

std::filesystem::path idx_labels_path(const std::filesystem::path& images) {
    std::string name = images.filename().string();
    const auto pos = name.find("images-idx3");
    if (pos == std::string::npos) throw DataError("cannot derive idx label file from " + images.string());
    name.replace(pos, 11, "labels-idx1");
    return images.parent_path() / name;
}

Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::optional<std::size_t> label_count) {
    const auto img = read_bytes(images);
    const auto lab = read_bytes(labels);
    if (be32(img, 0, images) != 0x00000803) throw DataError("bad idx3 magic number in " + images.string());
    if (be32(lab, 0, labels) != 0x00000801) throw DataError("bad idx1 magic number in " + labels.string());
    const std::size_t count = be32(img, 4, images);
    const std::size_t rows = be32(img, 8, images);
    const std::size_t cols = be32(img, 12, images);
    if (be32(lab, 4, labels) != count) throw DataError("idx image and label counts differ");
    const std::size_t pixels = rows * cols;
    if (img.size() < 16 + count * pixels) throw DataError("truncated idx image data in " + images.string());
    if (lab.size() < 8 + count) throw DataError("truncated idx label data in " + labels.string());

    Dataset data;
    data.samples.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        std::vector<double> values(pixels);
        for (std::size_t p = 0; p < pixels; ++p) values[p] = img[16 + n * pixels + p] / 255.0;
        const std::size_t label = lab[8 + n];
        check_label(label, label_count, n);
        data.samples.push_back({Tensor(Shape{1, rows, cols}, std::move(values)), label});
    }
    return data;
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format, std::optional<Shape> input_shape,
                     std::optional<std::size_t> label_count) {
    if (format == DatasetFormat::Csv) return load_csv(path, std::move(input_shape), label_count);
    Dataset data = load_idx(path, idx_labels_path(path), label_count);
    if (input_shape) {
        for (auto& s : data.samples) {
            if (element_count(*input_shape) != s.input.size()) throw DataError("idx images do not match input shape");
            s.input = s.input.reshaped(*input_shape);
        }
    }
    return data;
}

Dataset gen_synthetic(std::size_t classes, std::size_t dims, std::size_t per_class, double spread,
                      std::uint64_t seed) {
    if (classes < 2 || dims < 2 || !(spread > 0.0)) {
        throw DataError("gen_synthetic needs classes >= 2, dims >= 2 and spread > 0");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center_dist(0.2, 0.8);
    std::normal_distribution<double> noise(0.0, spread);

    std::vector<std::vector<double>> centers(classes, std::vector<double>(dims));
    for (auto& c : centers) {
        for (double& v : c) v = center_dist(rng);
    }
    Dataset data;
    data.samples.reserve(classes * per_class);
    // Classes are interleaved so any prefix is roughly balanced.
    for (std::size_t i = 0; i < per_class; ++i) {
        for (std::size_t k = 0; k < classes; ++k) {
            std::vector<double> x(dims);
            for (std::size_t d = 0; d < dims; ++d) x[d] = std::clamp(centers[k][d] + noise(rng), 0.0, 1.0);
            data.samples.push_back({Tensor(Shape{dims}, std::move(x)), k});
        }
    }
    return data;
}

std::pair<Dataset, Dataset> split(const Dataset& data, double test_fraction, std::uint64_t seed) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_test = static_cast<std::size_t>(test_fraction * static_cast<double>(data.size()));
    std::pair<Dataset, Dataset> out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_test ? out.second : out.first).samples.push_back(data.samples[order[i]]);
    }
    return out;
}

}  // namespace radval
