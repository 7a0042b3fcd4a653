#pragma once

#include <iostream>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace fkit_test {

// FKIT_SEED overrides the default; the seed in use is printed and recorded in the XML report.
inline std::mt19937_64 seeded_rng(const std::string& what) {
  auto seed = seed_from_env();
  std::cout << "[seed] " << what << " = " << seed << "\n";
  ::testing::Test::RecordProperty("seed", std::to_string(seed));
  return std::mt19937_64(seed);
}

}  // namespace fkit_test
