#pragma once

namespace lablet {

// Entry point behind the `lablet` tool; exposed for the test harness.
int cli_main(int argc, const char* const* argv);

}  // namespace lablet
