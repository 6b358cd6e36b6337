#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sgk {

// A single structured finding produced by a validator or carried by an error.
struct Finding {
  std::string clause;   // short machine-readable tag, e.g. "dangling-endpoint"
  std::string message;  // human-readable detail

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool valid() const { return findings.empty(); }
  void add(std::string clause, std::string message) {
    findings.push_back({std::move(clause), std::move(message)});
  }
  bool has(const std::string& clause) const;
};

// Domain error raised by engine operations whose preconditions fail.
// `kind` names the failure class (NonTotalPresentation, NotRegular, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message,
        std::vector<Finding> findings = {});

  const std::string& kind() const noexcept { return kind_; }
  const std::vector<Finding>& findings() const noexcept { return findings_; }

 private:
  std::string kind_;
  std::vector<Finding> findings_;
};

}  // namespace sgk
