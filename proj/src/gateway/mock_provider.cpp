#include <fstream>
#include <sstream>

#include "spellgraph/gateway/gateway.hpp"

namespace spellgraph::gateway {

namespace fs = std::filesystem;

namespace {

bool is_hex_digest(std::string_view s) {
  return s.size() == 64 && s.find_first_not_of("0123456789abcdef") == std::string_view::npos;
}

}  // namespace

std::string MockProvider::complete(const prompts::PromptBundle& bundle, const CompletionParams&) {
  const std::string digest = message_digest(bundle);
  std::lock_guard lock(mutex_);
  ++calls_;
  const auto it = fixtures_.find({bundle.route, digest});
  if (it == fixtures_.end()) {
    throw GatewayError(GatewayErrc::no_fixture, std::string(prompts::to_string(bundle.route)) +
                                                    " bundle " + digest.substr(0, 12) +
                                                    " has no fixture");
  }
  return it->second;
}

void MockProvider::register_fixture(prompts::Route route, std::string digest,
                                    std::string response_text) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = fixtures_.try_emplace({route, digest}, std::move(response_text));
  if (!inserted) {
    throw GatewayError(GatewayErrc::duplicate_fixture,
                       std::string(prompts::to_string(route)) + " " + digest + " already registered");
  }
}

void MockProvider::register_response(const prompts::PromptBundle& bundle,
                                     std::string response_text) {
  register_fixture(bundle.route, message_digest(bundle), std::move(response_text));
}

bool MockProvider::has_fixture(prompts::Route route, const std::string& digest) const {
  std::lock_guard lock(mutex_);
  return fixtures_.contains({route, digest});
}

std::size_t MockProvider::load_fixture_dir(const fs::path& dir) {
  std::size_t loaded = 0;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    const std::string stem = entry.path().stem().string();
    const auto dot = stem.find('.');
    if (dot == std::string::npos) continue;
    const auto route = prompts::parse_route(std::string_view(stem).substr(0, dot));
    const std::string digest = stem.substr(dot + 1);
    if (!route || !is_hex_digest(digest)) continue;

    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    register_fixture(*route, digest, body.str());
    ++loaded;
  }
  return loaded;
}

void MockProvider::write_fixture_dir(const fs::path& dir) const {
  fs::create_directories(dir);
  std::lock_guard lock(mutex_);
  for (const auto& [key, text] : fixtures_) {
    const fs::path file =
        dir / (std::string(prompts::to_string(key.first)) + "." + key.second + ".txt");
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + file.string());
  }
}

std::size_t MockProvider::fixture_count() const {
  std::lock_guard lock(mutex_);
  return fixtures_.size();
}

std::size_t MockProvider::call_count() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

}  // namespace spellgraph::gateway
