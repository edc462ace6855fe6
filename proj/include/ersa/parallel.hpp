#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace ersa {

// Runs `body(trial, acc)` for trial = 0..trials-1 with per-worker
// accumulators that are summed at the end. Each trial derives its
// randomness from its own index, so results are identical for any
// worker count.
inline std::vector<double> run_trials(
    long long trials, int workers, int naccum,
    const std::function<void(long long, std::vector<double>&)>& body) {
    if (workers < 1) workers = 1;
    std::vector<std::vector<double>> acc(workers, std::vector<double>(naccum, 0.0));
    if (workers == 1) {
        for (long long t = 0; t < trials; ++t) body(t, acc[0]);
        return acc[0];
    }
    std::vector<std::thread> pool;
    for (int wk = 0; wk < workers; ++wk)
        pool.emplace_back([&, wk] {
            for (long long t = wk; t < trials; t += workers) body(t, acc[wk]);
        });
    for (auto& th : pool) th.join();
    std::vector<double> total(naccum, 0.0);
    for (int i = 0; i < naccum; ++i)
        for (int wk = 0; wk < workers; ++wk) total[i] += acc[wk][i];
    return total;
}

}  // namespace ersa
