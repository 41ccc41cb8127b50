#pragma once

#include <cstddef>
#include <functional>

namespace memsforge {

/// Runs fn(i) for every i in [0, n) and keeps results in index order. The
/// parallel path is an OpenMP loop over the indices; the serial path is the
/// reference implementation the equivalence tests compare against. Exceptions
/// from workers are rethrown on the calling thread.
void run_indexed(std::size_t n, bool parallel, const std::function<void(std::size_t)>& fn);

}  // namespace memsforge
