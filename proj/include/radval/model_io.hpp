#pragma once

#include <filesystem>
#include <string>

#include "radval/network.hpp"

namespace radval {

/// Current weight-format version; documented in docs/formats.md.
inline constexpr int kWeightFormatVersion = 1;

[[nodiscard]] Network load_network(const std::filesystem::path& path);
void save_network(const Network& net, const std::filesystem::path& path);

[[nodiscard]] Network network_from_json(const std::string& text);
[[nodiscard]] std::string network_to_json(const Network& net);

}  // namespace radval
