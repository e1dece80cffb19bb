#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace catkit {

/// Worker count used by parallel_for. Defaults to CATKIT_THREADS, falling back
/// to the hardware concurrency.
int thread_count();

/// Overrides the worker count; values < 1 restore the default.
void set_thread_count(int n);

/// Runs body(i) for i in [0, n). Each index writes only its own outputs, so
/// results do not depend on scheduling. Nested calls run serially on the
/// calling worker. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace catkit
