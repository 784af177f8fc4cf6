#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace fellgeom {

// Runs body(chunk) for chunk in [0, chunks) on a small thread pool.
// Callers derive each chunk's random stream from the chunk index, so
// results do not depend on scheduling.
inline void parallel_chunks(int chunks, const std::function<void(int)>& body) {
    const int workers = std::max(1, std::min<int>(chunks, static_cast<int>(std::thread::hardware_concurrency())));
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int c = w; c < chunks; c += workers) body(c);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace fellgeom
