#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hypertrace/bessel.hpp"

namespace hypertrace::cli {

enum ExitCode { kPass = 0, kCheckFailure = 1, kUsageError = 2 };

struct RunConfig {
  int d = 3;
  int n = 2;
  std::vector<double> mu_list;  // empty: per-command default
  Complex nu;
  std::string generators_path;
  int max_word_length = 8;
  std::map<std::string, double> tolerances;
  std::string output_path;  // empty: stdout
  std::string format = "csv";
  int workers = 1;
  std::vector<double> u;  // empty: zero vector in R^{n-1}
  std::string mode = "left";
  int gamma0_radius = 4;
  std::uint64_t seed = 1;
};

/// Defaults for every recognised --tol name.
std::map<std::string, double> default_tolerances();

/// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypertrace::cli
