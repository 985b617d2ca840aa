#pragma once

// Seeded property suites behind `conflox verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "conflox/io.hpp"

namespace conflox {

struct VerifyCheck {
  std::string suite;
  std::string name;
  std::string anchor;  // the identity or statement being checked
  double tolerance = 0.0;
  double observed = 0.0;
  std::size_t samples = 0;
  bool passed = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool passed() const;
  json to_json() const;
};

const std::vector<std::string>& verify_suite_names();  // transforms, tractor, flat-model, invariance

// suite is one of verify_suite_names() or "all". Throws ConfigError otherwise.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace conflox
