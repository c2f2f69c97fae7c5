#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tamlab {

inline constexpr const char* kReportVersion = "tamlab-report/1";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int engine_error = 2;
inline constexpr int pump_violation = 3;
inline constexpr int search_exceeded = 4;
inline constexpr int conflict = 5;
inline constexpr int inconclusive = 6;
inline constexpr int usage = 64;
}  // namespace exit_code

struct CommandOutput {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs `tamlab <args...>` in process. Nothing is written to `err` on success.
CommandOutput run_cli(const std::vector<std::string>& args);

/// 64-bit FNV-1a, as lowercase hex.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace tamlab
