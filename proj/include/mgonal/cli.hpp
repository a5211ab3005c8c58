#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mgonal/core_forms.hpp"

namespace mgonal::cli {

enum class Format { Json, Csv, Text };

struct RunConfig {
  std::string command;
  i64 m = 0;
  i64 x = 0;
  i64 N = 0;
  i64 p = 0;
  std::vector<i64> coeffs;
  i64 bound = 0;
  Domain domain = Domain::NonNeg;
  int depth = 0;
  i64 C = 0;
  i64 k_max = 0;
  i64 m_lo = 5, m_hi = 20;
  i64 escalate_cap = 0;
  i64 max_bound = i64{1} << 27;
  int jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> output;  ///< empty means stdout
  std::optional<std::filesystem::path> write_file, read_file;
  Format format = Format::Text;
  bool stamp = false;
  bool check_local = false;
};

/// "1,1,2" -> {1,1,2}; throws std::invalid_argument on anything else.
std::vector<i64> parse_coeffs(const std::string& s);

/// Parses argv (argv[0] is the program name) and runs the command.
/// Returns 0 on success, 2 on usage errors, 3 on resource or cache errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Dispatches an already-validated config; exceptions propagate.
void execute(const RunConfig& cfg, std::ostream& out);

}  // namespace mgonal::cli
