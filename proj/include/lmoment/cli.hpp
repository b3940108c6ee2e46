#ifndef LMOMENT_CLI_HPP
#define LMOMENT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lmoment::cli {

/// Everything needed to reproduce one invocation.
struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  int thread_count = 1;
  std::string versions;
  std::string timestamp;
  std::vector<std::string> outputs;
  std::int64_t table_cap = 0;
  std::int64_t modulus_cap = 0;
  std::int64_t enumeration_cap = 0;
};

std::string to_json(const RunManifest& manifest);

/// Parses `args` (args[0] is the program name) and runs the subcommand.
/// Returns 0 on success, 2 on usage errors, 1 on computational errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lmoment::cli

#endif  // LMOMENT_CLI_HPP
