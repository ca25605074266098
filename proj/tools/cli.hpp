#pragma once

// Entry point for the psih command-line tool, split out from main() so the
// argument handling is linkable from tests.

namespace psih {

int run_cli(int argc, const char* const* argv);

}  // namespace psih
