#pragma once

#include <cstddef>
#include <functional>

namespace potts_forge::detail {

/// Runs fn(chunk) for every chunk in [0, n_chunks) on up to `threads`
/// workers. Callers write per-chunk results into preallocated slots and
/// reduce them in chunk order, so results do not depend on the worker count.
void parallel_for(std::size_t n_chunks, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace potts_forge::detail
