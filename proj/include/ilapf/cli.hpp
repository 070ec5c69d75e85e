#pragma once

namespace ilapf {

/// Entry point of the `ilapf` command-line tool. Returns 0 on success, 2 on
/// usage or parameter errors, 1 on other failures.
int cli_main(int argc, const char* const* argv);

}  // namespace ilapf
