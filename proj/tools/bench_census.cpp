// Benchmark: serial census kernel vs the OpenMP-partitioned one.
// Both must produce identical model streams; the table reports wall time
// and speedup per max-edges bound.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "hb/census.hpp"

using namespace hb;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

} // namespace

int main(int argc, char** argv) {
    int max_edges = argc > 1 ? std::atoi(argv[1]) : 7;
    int jobs = argc > 2 ? std::atoi(argv[2])
                        : (int)std::max(1u, std::thread::hardware_concurrency());

    std::printf("census benchmark, jobs=%d\n", jobs);
    std::printf("%-9s %-8s %-12s %-12s %-8s %s\n", "max-edges", "models", "serial[s]",
                "parallel[s]", "speedup", "streams");
    for (int k = 3; k <= max_edges; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        auto serial = enumerate_models_serial({k, 1});
        auto t1 = std::chrono::steady_clock::now();
        auto parallel = enumerate_models_parallel({k, jobs});
        auto t2 = std::chrono::steady_clock::now();

        bool equal = serial.size() == parallel.size();
        for (size_t i = 0; equal && i < serial.size(); ++i)
            equal = serial[i] == parallel[i];

        double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("%-9d %-8zu %-12.3f %-12.3f %-8.2f %s\n", k, serial.size(), ts, tp,
                    tp > 0 ? ts / tp : 0.0, equal ? "identical" : "DIFFER");
        if (!equal) return 1;
    }
    return 0;
}
