#include "sgk/error.hpp"

#include <algorithm>

namespace sgk {

bool ValidationReport::has(const std::string& clause) const {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const Finding& f) { return f.clause == clause; });
}

Error::Error(std::string kind, const std::string& message,
             std::vector<Finding> findings)
    : std::runtime_error(kind + ": " + message),
      kind_(std::move(kind)),
      findings_(std::move(findings)) {}

}  // namespace sgk
