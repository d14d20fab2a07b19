#pragma once

namespace tunnelkit {

// Entry point of the command line tool (kept in the library so tests can run
// it in-process). Returns 0 on success, 2 on usage/config errors, 3 on
// numerical failures.
int cli_main(int argc, const char* const* argv);

}  // namespace tunnelkit
