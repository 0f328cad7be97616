#pragma once

#include <cstddef>
#include <functional>

namespace ntlab {

// Process-wide worker count used by chunked loops. Results never depend on it:
// work is always split into the same chunks and reduced in chunk order.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(chunk) for chunk in [0, n_chunks) on up to thread_count() threads.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body);

}  // namespace ntlab
