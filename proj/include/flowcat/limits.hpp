#pragma once

#include <atomic>
#include <cstdint>
#include <string>

namespace flowcat {

/// Search-node cap from FLOWCAT_MAX_NODES (default 1000000).
std::uint64_t max_nodes_from_env();

/// Shared counter for bounded searches. Safe to charge from several threads.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t cap = max_nodes_from_env()) : cap_(cap) {}

  /// Throws CapExceeded once the total passes the cap.
  void charge(std::uint64_t n = 1);
  bool exhausted() const { return used_.load() > cap_; }
  std::uint64_t used() const { return used_.load(); }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
  std::atomic<std::uint64_t> used_{0};
};

}  // namespace flowcat
