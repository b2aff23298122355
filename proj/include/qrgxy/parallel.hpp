#pragma once

#include <cstddef>
#include <functional>

namespace qrgxy {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items
/// must be independent and write results by index, so the output is
/// identical for any thread count. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace qrgxy
