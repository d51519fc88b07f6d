#include "spellgraph/prompts/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace spellgraph::prompts {

namespace {

using enum TransformCategory;

TaxonomyEntry entry(std::string property, std::set<TransformCategory> categories) {
  const bool dual = categories.size() >= 2;
  return TaxonomyEntry{std::move(property), std::move(categories), dual};
}

const std::vector<TaxonomyEntry>& table() {
  static const std::vector<TaxonomyEntry> entries = {
      entry("color", {objects_primitives_marks}),
      entry("shape", {objects_primitives_marks}),
      entry("form", {objects_primitives_marks}),
      entry("texture", {objects_primitives_marks}),
      entry("thickness", {objects_primitives_marks}),
      entry("waviness", {objects_primitives_marks}),
      entry("curviness", {objects_primitives_marks}),
      entry("randomness", {objects_primitives_marks, plane_canvas, between_objects}),
      entry("size", {plane_canvas}),
      entry("direction/orientation", {plane_canvas, between_objects}),
      entry("alignment", {plane_canvas, between_objects}),
      entry("white space", {plane_canvas, between_objects}),
      entry("movement", {plane_canvas}),
      entry("noisiness", {plane_canvas}),
      entry("symmetry", {plane_canvas, between_objects}),
      entry("scale/proportion", {plane_canvas, between_objects}),
      entry("hierarchy", {plane_canvas, between_objects}),
      entry("nesting", {between_objects}),
      entry("repetition/pattern", {between_objects}),
      entry("proximity/spacing", {between_objects}),
      entry("contrast/emphasis", {between_objects}),
      entry("variety", {between_objects}),
      entry("balance", {between_objects}),
      entry("unity", {between_objects}),
      entry("depths/layers", {between_objects}),
  };
  return entries;
}

std::string lower_trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool matches(const std::string& property, const std::string& wanted) {
  if (property == wanted) return true;
  std::string_view rest = property;
  while (!rest.empty()) {
    const auto slash = rest.find('/');
    if (rest.substr(0, slash) == wanted) return true;
    if (slash == std::string_view::npos) break;
    rest.remove_prefix(slash + 1);
  }
  return false;
}

}  // namespace

std::string_view to_string(TransformCategory category) noexcept {
  switch (category) {
    case objects_primitives_marks: return "objects_primitives_marks";
    case plane_canvas: return "plane_canvas";
    case between_objects: return "between_objects";
  }
  return "unknown";
}

std::span<const TaxonomyEntry> taxonomy() { return table(); }

const TaxonomyEntry& taxonomy_lookup(std::string_view property) {
  const std::string wanted = lower_trimmed(property);
  for (const TaxonomyEntry& e : table()) {
    if (!wanted.empty() && matches(e.property, wanted)) return e;
  }
  throw UnknownProperty("UnknownProperty: '" + std::string(property) + "'");
}

}  // namespace spellgraph::prompts
