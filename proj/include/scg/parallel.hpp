#pragma once

namespace scg {

/// Selects between the OpenMP kernel and its serial reference. Both produce identical results.
enum class Execution { Serial, Parallel };

/// Caps the OpenMP worker count for subsequent parallel kernels; 0 keeps the runtime default.
void set_worker_threads(int threads);
int worker_threads();

}  // namespace scg
