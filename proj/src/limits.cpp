#include "flowcat/limits.hpp"

#include <cstdlib>

#include "flowcat/error.hpp"

namespace flowcat {

std::uint64_t max_nodes_from_env() {
  const char* s = std::getenv("FLOWCAT_MAX_NODES");
  if (!s || !*s) return 1000000;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0' || v == 0)
    throw Error(ErrorKind::InvalidArgument, std::string("bad FLOWCAT_MAX_NODES: ") + s);
  return v;
}

void NodeBudget::charge(std::uint64_t n) {
  if (used_.fetch_add(n) + n > cap_)
    throw Error(ErrorKind::CapExceeded,
                "search node cap of " + std::to_string(cap_) + " exceeded");
}

}  // namespace flowcat
