#pragma once

#include <cstddef>
#include <functional>

namespace shiftgreen {

// Worker count for parallel loops. Defaults to SHIFTGREEN_THREADS when set,
// otherwise the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs body(i) for i in [0, count). Nested calls run serially on the calling
// worker. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace shiftgreen
