#include "support/race_oracles.hpp"

#include <algorithm>

#include "fairmatch/rng.hpp"

namespace fairmatch::test {

double mc_random_delay_slower_win(Nanos max_delay_ns, Nanos dtau_ns, int duplicates,
                                  std::uint64_t trials, std::uint64_t seed) {
    Rng rng(seed);
    std::uint64_t slower_wins = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Nanos faster_release = rng.uniform_nanos(0, max_delay_ns);
        Nanos slower_best = dtau_ns + rng.uniform_nanos(0, max_delay_ns);
        for (int k = 1; k < duplicates; ++k)
            slower_best = std::min(slower_best, dtau_ns + rng.uniform_nanos(0, max_delay_ns));
        slower_wins += slower_best < faster_release;
    }
    return static_cast<double>(slower_wins) / static_cast<double>(trials);
}

double mc_jittered_fcfs_win(Nanos fixed_ns, Nanos base_ns, Nanos jitter_hi_ns,
                            std::uint64_t trials, std::uint64_t seed) {
    Rng rng(seed);
    std::uint64_t jittered_wins = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Nanos jittered = base_ns + rng.uniform_nanos(0, jitter_hi_ns);
        jittered_wins += jittered < fixed_ns;
    }
    return static_cast<double>(jittered_wins) / static_cast<double>(trials);
}

}  // namespace fairmatch::test
