#pragma once

#include <stdexcept>
#include <string>

namespace scrut {

// Exit code mapping used by the CLI: 0 success, 1 usage, 2 input format,
// 3 internal invariant violation.
enum class ExitCode : int {
  ok = 0,
  usage = 1,
  input_format = 2,
  internal = 3,
};

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unparseable or contract-violating inputs: corrupt traces, bad profiles,
// invalid manifests, non-normalized tracker entries, platform mismatches.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A violated internal invariant; indicates a bug, not bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace scrut
