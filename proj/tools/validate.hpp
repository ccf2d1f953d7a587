#pragma once

#include <string>
#include <vector>

namespace erlang_spectral::cli {

struct CheckResult {
  std::string check;
  double value{};
  double expected{};
  double tol{};
  bool pass{};
};

enum class Suite { Quick, Full };

std::vector<CheckResult> run_suite(Suite suite);

}  // namespace erlang_spectral::cli
