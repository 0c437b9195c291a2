#pragma once

namespace cavegen {

// Kernels with both a serial reference and an OpenMP path take this switch.
// Both paths must produce identical output; tests compare them directly.
enum class ExecMode { Serial, Parallel };

} // namespace cavegen
