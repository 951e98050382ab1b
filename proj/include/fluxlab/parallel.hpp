#pragma once

#include <cstddef>
#include <functional>

namespace fluxlab {

// Global thread budget shared by all modules. 0 means "use hardware
// concurrency". Set once by the CLI (or FLUXLAB_THREADS); module-level
// determinism contracts hold for any value.
void set_thread_budget(int n);
int thread_budget();

// Runs f(i) for i in [0, n). Work items are distributed dynamically, so f
// must write only to per-index state; reductions happen afterwards in index
// order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

} // namespace fluxlab
