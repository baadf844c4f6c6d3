// Compares the OpenMP-parallel kernels against their serial references:
// the exhaustive MAIS scan and the chain search both fan out over root
// branches, and the capacity sums have a brute-force enumeration path.
// Usage: icb_bench [n] [instances]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "icb/chain_search.hpp"
#include "icb/dic.hpp"
#include "icb/mais.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

icb::Instance random_instance(int n, std::mt19937& rng) {
    std::vector<icb::Subset> side_info(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i && rng() % 2) side_info[i] |= icb::bit(j);
    return icb::Instance(n, side_info);
}

void set_threads(int t) {
#ifdef _OPENMP
    omp_set_num_threads(t);
#else
    (void)t;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 18;
    const int instances = argc > 2 ? std::atoi(argv[2]) : 4;
    const int threads = max_threads();
    std::mt19937 rng(12345);

    std::cout << "threads available: " << threads << "\n";

    std::vector<icb::Instance> suite;
    for (int i = 0; i < instances; ++i) suite.push_back(random_instance(n, rng));

    for (const char* label : {"serial", "parallel"}) {
        const bool parallel = label[0] == 'p';
        set_threads(parallel ? threads : 1);

        auto t0 = Clock::now();
        long long mais_total = 0;
        for (const auto& inst : suite) mais_total += icb::mais_exhaustive(inst).size;
        double mais_time = seconds_since(t0);

        t0 = Clock::now();
        long long search_nodes = 0;
        for (const auto& inst : suite) {
            icb::BoundReport r = icb::search_disjoint(inst, {4, 2, 2'000'000});
            search_nodes += r.nodes_expanded;
        }
        double search_time = seconds_since(t0);

        std::cout << label << ": mais " << mais_time << "s (sizes " << mais_total
                  << "), search " << search_time << "s (nodes " << search_nodes
                  << ")\n";
    }

    // The two capacity-sum routes on one mid-sized map.
    icb::CapacityMap cap(12, icb::Rational(1),
                         {{icb::bit(0) | icb::bit(3), icb::Rational(5, 2)}});
    auto t0 = Clock::now();
    icb::Rational fast(0);
    for (int rep = 0; rep < 2000; ++rep)
        fast += icb::capacity_sum(cap, icb::bit(rep % 12) | icb::bit(3), icb::bit(2));
    double fast_time = seconds_since(t0);
    t0 = Clock::now();
    icb::Rational slow(0);
    for (int rep = 0; rep < 2000; ++rep)
        slow += icb::capacity_sum_enumerate(cap, icb::bit(rep % 12) | icb::bit(3), icb::bit(2));
    double slow_time = seconds_since(t0);
    std::cout << "capacity sums: inclusion-exclusion " << fast_time << "s, enumeration "
              << slow_time << "s, values " << (fast == slow ? "agree" : "DISAGREE")
              << "\n";
    return fast == slow ? 0 : 1;
}
