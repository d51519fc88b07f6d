#include "spellgraph/service/config.hpp"

namespace spellgraph::service {

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) {
    throw std::invalid_argument("port must be in [1, 65535] (0 picks a free port)");
  }
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  prompts::check_delimiters(delimiters);
}

}  // namespace spellgraph::service
