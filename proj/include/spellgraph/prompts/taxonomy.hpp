#pragma once

#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spellgraph::prompts {

/// Where a creative-coding transformation applies.
enum class TransformCategory { objects_primitives_marks, plane_canvas, between_objects };

std::string_view to_string(TransformCategory category) noexcept;

struct TaxonomyEntry {
  std::string property;
  std::set<TransformCategory> categories;
  /// Listed under more than one category.
  bool dual = false;
};

class UnknownProperty : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Every property of the three-category transformation taxonomy.
std::span<const TaxonomyEntry> taxonomy();

/// Case-insensitive. Slash-joined names also match either half, so
/// "orientation" finds "direction/orientation".
const TaxonomyEntry& taxonomy_lookup(std::string_view property);

}  // namespace spellgraph::prompts
