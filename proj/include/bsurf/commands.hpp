#ifndef BSURF_COMMANDS_HPP
#define BSURF_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bsurf/errors.hpp"

namespace bsurf {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct CommandOptions {
  std::uint64_t seed = kDefaultSeed;
  std::int64_t cap = 1000000;
  int threads = 1;
};

struct CommandResult {
  std::string text;  // human-readable report
  std::string json;  // machine payload, schema version 1
};

/// Dispatch one named command on a JSON scenario document.  Throws
/// SchemaError / PreconditionError / TheoremFalsified; the caller maps these
/// onto status codes.
CommandResult run_command(const std::string& command, const std::string& scenario_json,
                          const CommandOptions& opts);

const std::vector<std::string>& command_names();

}  // namespace bsurf

#endif
