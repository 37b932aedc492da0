#pragma once

namespace wavestrata {

// Entry point of the wavestrata command line.  Exit codes: 0 success,
// 2 invalid input, 3 numerical failure.
int run(int argc, char** argv);

}  // namespace wavestrata
