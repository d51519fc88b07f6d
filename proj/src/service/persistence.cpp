#include "spellgraph/service/persistence.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "spellgraph/graph/graph_json.hpp"

namespace spellgraph::service {

namespace fs = std::filesystem;

bool valid_graph_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64) return false;
  return id.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_-") == std::string_view::npos;
}

fs::path graph_path(const fs::path& data_dir, std::string_view graph_id) {
  return data_dir / "graphs" / (std::string(graph_id) + ".json");
}

void persist(const fs::path& data_dir, const ExplorationGraph& graph) {
  if (!valid_graph_id(graph.graph_id())) throw IoError("invalid graph id '" + graph.graph_id() + "'");
  const fs::path target = graph_path(data_dir, graph.graph_id());
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());

  thread_local std::mt19937_64 rng{std::random_device{}()};
  fs::path temp = target;
  temp += ".tmp" + std::to_string(rng());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << serialize(graph) << '\n';
    out.flush();
    if (!out) {
      fs::remove(temp, ec);
      throw IoError("cannot write " + temp.string());
    }
  }
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot replace " + target.string() + ": " + ec.message());
  }
}

ExplorationGraph load(const fs::path& data_dir, const std::string& graph_id) {
  if (!valid_graph_id(graph_id)) throw IoError("invalid graph id '" + graph_id + "'");
  const fs::path file = graph_path(data_dir, graph_id);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return deserialize(text.str(), graph_id);
}

std::vector<std::string> stored_graph_ids(const fs::path& data_dir) {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const fs::directory_entry& e : fs::directory_iterator(data_dir / "graphs", ec)) {
    if (e.path().extension() == ".json" && valid_graph_id(e.path().stem().string())) {
      ids.push_back(e.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace spellgraph::service
