#include "spellgraph/graph/node_id.hpp"

#include <algorithm>
#include <stdexcept>

namespace spellgraph {

namespace {

constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";

bool is_id_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace

bool NodeId::is_valid(std::string_view text) noexcept {
  return text.size() == kLength && std::all_of(text.begin(), text.end(), is_id_char);
}

NodeId NodeId::parse(std::string_view text) {
  if (!is_valid(text)) {
    throw std::invalid_argument("invalid node id '" + std::string(text) +
                                "' (expected 6 characters from [a-z0-9])");
  }
  return NodeId(std::string(text));
}

NodeIdGenerator::NodeIdGenerator() : rng_(std::random_device{}()) {}

NodeId NodeIdGenerator::next() {
  std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
  std::string value(NodeId::kLength, '\0');
  for (char& c : value) c = kAlphabet[pick(rng_)];
  return NodeId::parse(value);
}

}  // namespace spellgraph
