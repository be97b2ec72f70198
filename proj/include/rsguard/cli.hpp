#pragma once

// Command-line front end: embed, extract, analyze, harden, metrics.
// Reports go to `out` as JSON, diagnostics to `err`.

#include <iosfwd>
#include <span>
#include <string>

namespace rsguard::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,             // bad flags or parameter values
  kCapacityExceeded = 2,  // message does not fit the cover
  kIoError = 3,           // unreadable / unwritable file, bad PPM, size mismatch
  kCorruptHeader = 4,     // wrong key or no message
  kFlagged = 5,           // analyze: at least one channel over the threshold
  kBadMask = 6,           // unparsable mask spec or mask/group length mismatch
  kMessageLost = 7,       // harden: extraction check failed after hardening
};

/// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rsguard::cli
