#include "mixdom/util.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace mixdom {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::size_t cap_from_env(std::size_t fallback) {
  const char* raw = std::getenv("MIXDOM_DENSE_CAP");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) return fallback;
  return static_cast<std::size_t>(value);
}

}  // namespace

std::size_t dense_cap() {
  static const std::size_t cap = cap_from_env(8192);
  return cap;
}

std::size_t quadratic_cap() {
  static const std::size_t cap = cap_from_env(8192);
  return cap;
}

}  // namespace mixdom
