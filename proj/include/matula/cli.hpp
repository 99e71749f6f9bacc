#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace matula::cli {

enum class OutputFormat { plain, json, csv };

struct CliConfig {
  std::uint64_t sieve_limit = std::uint64_t{1} << 24;
  std::uint64_t hard_ceiling = std::uint64_t{1} << 32;
  OutputFormat format = OutputFormat::plain;
  bool strict = true;
  std::uint64_t seed = 0x9E3779B97F4A7C15ull;
  std::uint64_t limit = 10000;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitIndexOverflow = 3;
inline constexpr int kExitFactorization = 4;
inline constexpr int kExitCapacity = 5;

/// Name of the environment variable holding a config file path.
inline constexpr const char* kConfigEnv = "MATULA_CONFIG";

/// Reads `key = value` lines (keys mirror the long flags; '#' starts a
/// comment) over `base`. Throws std::invalid_argument on unknown keys or
/// bad values.
CliConfig load_config(const std::string& path, CliConfig base = {});

/// Entry point shared by the binary and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& config_path = std::nullopt);

}  // namespace matula::cli
