#pragma once

namespace tailmix {

// Entry point behind the command-line tool, exposed so tests can drive it
// in-process. Returns the process exit code: 0 success, 2 usage or config
// error, 3 numeric failure (divergent integral, sampler init failure).
int cli_main(int argc, const char* const* argv);

}  // namespace tailmix
