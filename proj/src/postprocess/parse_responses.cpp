#include <algorithm>
#include <cctype>
#include <set>

#include <json.hpp>

#include "spellgraph/postprocess/postprocess.hpp"

namespace spellgraph::postprocess {

namespace {

using nlohmann::json;

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Every balanced-looking JSON value starting with `open` in the text, in order
// of its opening character. The first closing candidate that parses wins.
template <typename Accept>
std::optional<json> first_json(std::string_view raw, char open, char close, Accept accept) {
  for (std::size_t begin = raw.find(open); begin != std::string_view::npos;
       begin = raw.find(open, begin + 1)) {
    for (std::size_t end = raw.find(close, begin + 1); end != std::string_view::npos;
         end = raw.find(close, end + 1)) {
      json doc = json::parse(raw.substr(begin, end - begin + 1), nullptr, false);
      if (doc.is_discarded()) continue;
      if (accept(doc)) return doc;
      break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> parse_suggestions(std::string_view raw) {
  const auto doc = first_json(raw, '[', ']', [](const json& j) {
    return j.is_array() &&
           std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_string(); });
  });
  std::vector<std::string> out;
  if (doc) {
    for (const json& e : *doc) {
      std::string s = trimmed(e.get_ref<const std::string&>());
      if (s.empty()) continue;
      out.push_back(std::move(s));
      if (out.size() == 3) break;
    }
  }
  if (out.empty()) throw PostprocessError(PostprocessErrc::no_suggestions, "no suggestion list in reply");
  return out;
}

SemanticMap parse_semantic_map(std::string_view raw, std::string_view code) {
  if (trimmed(raw).empty()) throw PostprocessError(PostprocessErrc::no_usable_map, "empty reply");
  const auto doc = first_json(raw, '{', '}', [](const json& j) {
    return j.is_object() && j.contains("phrases") && j["phrases"].is_array();
  });
  if (!doc) throw PostprocessError(PostprocessErrc::no_usable_map, "no phrase map in reply");

  std::set<std::string, std::less<>> declared;
  for (const GlobalVariable& g : extract_globals(code)) declared.insert(g.name);

  SemanticMap map;
  for (const json& item : (*doc)["phrases"]) {
    if (!item.is_object()) continue;
    const auto text = item.find("text");
    const auto vars = item.find("variables");
    if (text == item.end() || !text->is_string() || vars == item.end() || !vars->is_array()) {
      map.warnings.emplace_back("skipped a malformed phrase entry");
      continue;
    }
    SemanticMapEntry entry{trimmed(text->get_ref<const std::string&>()), {}};
    if (entry.phrase.empty()) {
      map.warnings.emplace_back("skipped a phrase entry with empty text");
      continue;
    }
    for (const json& v : *vars) {
      if (!v.is_string()) continue;
      const std::string& name = v.get_ref<const std::string&>();
      if (declared.contains(name)) {
        if (std::find(entry.variables.begin(), entry.variables.end(), name) == entry.variables.end())
          entry.variables.push_back(name);
      } else {
        map.warnings.push_back("'" + entry.phrase + "': variable '" + name +
                               "' is not a global of the sketch");
      }
    }
    if (entry.variables.empty()) {
      map.warnings.push_back("'" + entry.phrase + "': no usable variables, dropped");
      continue;
    }
    map.entries.push_back(std::move(entry));
  }
  if (map.entries.empty()) {
    throw PostprocessError(PostprocessErrc::no_usable_map,
                           "no phrase maps onto a global declared in the sketch");
  }
  return map;
}

}  // namespace spellgraph::postprocess
