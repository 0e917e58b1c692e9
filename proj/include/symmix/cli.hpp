#pragma once

namespace symmix {

// Full command-line front end; returns the process exit code
// (0 ok, 1 domain error, 2 usage error).
int run_cli(int argc, char** argv);

} // namespace symmix
