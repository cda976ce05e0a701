#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace qcolor {

inline unsigned default_thread_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

/// Run fn(chunk_index, begin, end) over [0, total) split into at most
/// `threads` contiguous chunks.  Chunk boundaries depend only on (total,
/// threads), so callers that collect per-chunk results and merge them in
/// chunk order get deterministic output.
template <typename Fn>
void parallel_chunks(std::size_t total, unsigned threads, Fn&& fn) {
    if (total == 0) return;
    const std::size_t nchunks = std::min<std::size_t>(std::max(threads, 1u), total);
    if (nchunks <= 1) {
        fn(std::size_t{0}, std::size_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nchunks);
    pool.reserve(nchunks);
    for (std::size_t c = 0; c < nchunks; ++c) {
        const std::size_t begin = total * c / nchunks;
        const std::size_t end = total * (c + 1) / nchunks;
        pool.emplace_back([&fn, &errors, c, begin, end] {
            try {
                fn(c, begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace qcolor
