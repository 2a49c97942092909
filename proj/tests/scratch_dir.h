#pragma once

#include <filesystem>
#include <string>

#include "gtest/gtest.h"

namespace eqfair::testing {

// A fresh scratch directory for the running test, removed up front so
// reruns start clean.
inline std::filesystem::path ScratchDir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  auto dir = std::filesystem::temp_directory_path() / "eqfair_tests" /
             (std::string(info->test_suite_name()) + "." + info->name());
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace eqfair::testing
