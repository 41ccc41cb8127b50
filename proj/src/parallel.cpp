#include "memsforge/parallel.hpp"

#include <exception>

namespace memsforge {

void run_indexed(std::size_t n, bool parallel, const std::function<void(std::size_t)>& fn) {
    if (!parallel) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace memsforge
