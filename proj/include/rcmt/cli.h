//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RCMT_CLI_H_
#define RCMT_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rcmt/codec.h"

namespace rcmt::cli {

/// Process exit codes. Stable: scripts depend on them.
enum class ExitStatus : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kVerification = 3,
};

/// Test seams that are not reachable from the command line.
struct Hooks {
  /// Replaces the decoder used by `roundtrip`.
  Decoder roundtrip_decoder;
  /// Overrides the RCMT_DELTA environment variable when set.
  std::optional<std::string> delta;
};

/// Runs `rcmt <subcommand> ...`; args excludes the program name. Data goes
/// to `out`, diagnostics to `err`.
ExitStatus run(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err, const Hooks &hooks = {});

}  // namespace rcmt::cli

#endif  // RCMT_CLI_H_
