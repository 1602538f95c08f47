#include "radval/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "radval/error.hpp"

namespace radval {

using nlohmann::json;

namespace {

constexpr const char* kFormatName = "radval-network";

template <class T>
T field(const json& obj, const char* key, long layer) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", layer);
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("field '") + key + "' has the wrong type", layer);
    }
}

std::size_t positive(const json& obj, const char* key, long layer) {
    const auto v = field<long long>(obj, key, layer);
    if (v <= 0) throw ParseError(std::string("field '") + key + "' must be positive", layer);
    return static_cast<std::size_t>(v);
}

std::vector<double> numbers(const json& obj, const char* key, std::size_t expected, long layer) {
    auto values = field<std::vector<double>>(obj, key, layer);
    if (values.size() != expected) {
        throw ParseError(std::string("field '") + key + "' has " + std::to_string(values.size()) +
                             " values, expected " + std::to_string(expected),
                         layer);
    }
    return values;
}

std::pair<std::size_t, std::size_t> pair_field(const json& obj, const char* key, long layer) {
    const auto v = field<std::vector<long long>>(obj, key, layer);
    if (v.size() != 2 || v[0] <= 0 || v[1] <= 0) {
        throw ParseError(std::string("field '") + key + "' must be two positive integers", layer);
    }
    return {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
}

void parse_layer(const json& rec, long index, std::vector<Layer>& out) {
    if (!rec.is_object()) throw ParseError("layer record is not an object", index);
    const auto kind = field<std::string>(rec, "kind", index);
    if (kind == "dense") {
        Dense d;
        d.in = positive(rec, "in", index);
        d.out = positive(rec, "out", index);
        d.weights = numbers(rec, "weights", d.in * d.out, index);
        d.bias = numbers(rec, "bias", d.out, index);
        out.emplace_back(std::move(d));
    } else if (kind == "conv2d") {
        Conv2D c;
        c.in_channels = positive(rec, "in_channels", index);
        c.out_channels = positive(rec, "out_channels", index);
        std::tie(c.kernel_h, c.kernel_w) = pair_field(rec, "kernel", index);
        c.stride = rec.contains("stride") ? positive(rec, "stride", index) : 1;
        c.padding = rec.contains("padding") ? static_cast<std::size_t>(field<unsigned long long>(rec, "padding", index))
                                            : 0;
        c.weights = numbers(rec, "weights", c.out_channels * c.in_channels * c.kernel_h * c.kernel_w, index);
        c.bias = numbers(rec, "bias", c.out_channels, index);
        out.emplace_back(std::move(c));
    } else if (kind == "maxpool2d") {
        MaxPool2D p;
        std::tie(p.window_h, p.window_w) = pair_field(rec, "window", index);
        out.emplace_back(p);
    } else if (kind == "activation") {
        try {
            out.emplace_back(Activation{parse_activation(field<std::string>(rec, "activation", index))});
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), index);
        }
        return;
    } else {
        throw ParseError("unknown layer kind '" + kind + "'", index);
    }
    // Dense and conv records may carry a fused activation.
    if (rec.contains("activation") && !rec["activation"].is_null()) {
        try {
            out.emplace_back(Activation{parse_activation(field<std::string>(rec, "activation", index))});
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), index);
        }
    }
}

json layer_to_json(const Layer& layer) {
    json rec;
    rec["kind"] = layer_kind(layer);
    if (const auto* d = std::get_if<Dense>(&layer)) {
        rec["in"] = d->in;
        rec["out"] = d->out;
        rec["weights"] = d->weights;
        rec["bias"] = d->bias;
    } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
        rec["in_channels"] = c->in_channels;
        rec["out_channels"] = c->out_channels;
        rec["kernel"] = {c->kernel_h, c->kernel_w};
        rec["stride"] = c->stride;
        rec["padding"] = c->padding;
        rec["weights"] = c->weights;
        rec["bias"] = c->bias;
    } else if (const auto* p = std::get_if<MaxPool2D>(&layer)) {
        rec["window"] = {p->window_h, p->window_w};
    } else {
        rec["activation"] = to_string(std::get<Activation>(layer).function);
    }
    return rec;
}

}  // namespace

Network network_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed weight file: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("weight file is not a JSON object");
    if (field<std::string>(doc, "format", -1) != kFormatName) throw ParseError("not a radval-network document");
    const int version = field<int>(doc, "version", -1);
    if (version != kWeightFormatVersion) throw ParseError("unsupported weight format version " + std::to_string(version));

    Shape input_shape;
    for (long long d : field<std::vector<long long>>(doc, "input_shape", -1)) {
        if (d <= 0) throw ParseError("input_shape entries must be positive");
        input_shape.push_back(static_cast<std::size_t>(d));
    }
    const auto label_count = field<long long>(doc, "label_count", -1);
    if (label_count < 2) throw ParseError("label_count must be at least 2");

    const auto it = doc.find("layers");
    if (it == doc.end() || !it->is_array()) throw ParseError("missing layer array");
    std::vector<Layer> layers;
    for (std::size_t i = 0; i < it->size(); ++i) parse_layer((*it)[i], static_cast<long>(i), layers);

    Shape shape = input_shape;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        try {
            shape = layers::output_shape(layers[i], shape);
        } catch (const ShapeError& e) {
            throw ParseError(std::string("inconsistent shapes: ") + e.what(), static_cast<long>(i));
        }
    }
    if (element_count(shape) != static_cast<std::size_t>(label_count)) {
        throw ParseError("final layer produces " + std::to_string(element_count(shape)) + " scores, label_count is " +
                             std::to_string(label_count),
                         layers.empty() ? -1 : static_cast<long>(layers.size() - 1));
    }
    return Network(std::move(input_shape), std::move(layers), static_cast<std::size_t>(label_count));
}

std::string network_to_json(const Network& net) {
    json doc;
    doc["format"] = kFormatName;
    doc["version"] = kWeightFormatVersion;
    doc["input_shape"] = net.input_shape();
    doc["label_count"] = net.label_count();
    doc["layers"] = json::array();
    for (const auto& layer : net.layers()) doc["layers"].push_back(layer_to_json(layer));
    return doc.dump();
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open weight file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return network_from_json(buf.str());
}

void save_network(const Network& net, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write weight file " + path.string());
    out << network_to_json(net) << '\n';
}

}  // namespace radval
