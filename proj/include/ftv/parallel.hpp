#pragma once

namespace ftv {

// Kernel execution policy: Serial is the reference implementation the tests
// compare against; Parallel uses OpenMP when compiled in and falls back to
// the serial path otherwise.
enum class Exec { Serial, Parallel };

int hardware_threads();

}  // namespace ftv
