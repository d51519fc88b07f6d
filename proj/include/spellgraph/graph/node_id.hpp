#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>

namespace spellgraph {

/// Six-character lowercase alphanumeric node identifier, e.g. "wgtt0s".
class NodeId {
 public:
  static constexpr std::size_t kLength = 6;

  /// Throws std::invalid_argument unless `text` matches [a-z0-9]{6}.
  static NodeId parse(std::string_view text);
  static bool is_valid(std::string_view text) noexcept;

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;

 private:
  explicit NodeId(std::string value) : value_(std::move(value)) {}

  std::string value_;
};

/// Draws random ids; callers retry on collision.
class NodeIdGenerator {
 public:
  NodeIdGenerator();
  explicit NodeIdGenerator(std::uint64_t seed) : rng_(seed) {}

  NodeId next();

 private:
  std::mt19937_64 rng_;
};

}  // namespace spellgraph

template <>
struct std::hash<spellgraph::NodeId> {
  std::size_t operator()(const spellgraph::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
