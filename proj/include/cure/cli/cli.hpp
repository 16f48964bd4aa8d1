#pragma once

namespace cure::cli {

// Full command dispatch; returns the process exit code. Errors are reported
// on stderr as one JSON line {"error": {"category": ..., "message": ...}}.
int run(int argc, const char* const* argv);

}  // namespace cure::cli
