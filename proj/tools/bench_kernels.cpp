#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/graph.hpp"
#include "sstress/layout.hpp"
#include "sstress/metrics.hpp"
#include "sstress/pivot_mds.hpp"
#include "sstress/reference.hpp"
#include "sstress/rng.hpp"
#include "sstress/sampling.hpp"

// Times each OpenMP kernel against its serial reference twin and verifies
// that both produce bitwise-identical output.

namespace {

using namespace sstress;
using Clock = std::chrono::steady_clock;

double time_ms(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        fn();
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-16s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, match ? "bitwise-equal" : "MISMATCH");
}

bool same_bins(const std::vector<HistBin>& a, const std::vector<HistBin>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const HistBin &p = a[i], &q = b[i];
        if (p.lo != q.lo || p.hi != q.hi || p.count != q.count || p.min != q.min ||
            p.p5 != q.p5 || p.p25 != q.p25 || p.median != q.median || p.p75 != q.p75 ||
            p.p95 != q.p95 || p.max != q.max)
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial reference vs OpenMP kernel timings"};
    int reps = 3;
    int threads = 0;
    app.add_option("--reps", reps, "repetitions, best time kept")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "OpenMP thread cap (0 = runtime default)");
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    int mismatches = 0;
    auto check = [&](bool ok) {
        if (!ok) ++mismatches;
        return ok;
    };

    {
        Graph g = make_generated("grid:100x100");
        Rng rng = Rng(1).split("sampler");
        std::vector<NodeId> pivots = sample_maxmin_sp(g, 200, rng);
        PivotDistances serial, parallel;
        double s = time_ms(reps, [&] { serial = reference::mssp(g, pivots); });
        double p = time_ms(reps, [&] { parallel = mssp(g, pivots); });
        report("mssp", s, p, check(serial.dist == parallel.dist));
    }
    {
        Graph g = make_generated("grid:60x60");
        Layout x = pivot_mds(g, 200, 1).layout;
        StressSums serial, parallel;
        double s = time_ms(reps, [&] { serial = reference::stress_sums(g, x); });
        double p = time_ms(reps, [&] { parallel = stress_sums(g, x); });
        report("stress_sums", s, p,
               check(serial.w_drawn2 == parallel.w_drawn2 && serial.w_cross == parallel.w_cross &&
                     serial.w_target2 == parallel.w_target2 && serial.pairs == parallel.pairs));
    }
    {
        Graph g = make_generated("grid:26x27");
        Layout x = pivot_mds(g, 200, 1).layout;
        std::vector<std::pair<NodeId, NodeId>> serial, parallel;
        double s = time_ms(reps, [&] { serial = reference::gabriel_graph(x); });
        double p = time_ms(reps, [&] { parallel = gabriel_graph(x); });
        report("gabriel_graph", s, p, check(serial == parallel));
    }
    {
        Graph g = make_generated("grid:60x60");
        Layout x = pivot_mds(g, 200, 1).layout;
        std::vector<HistBin> serial, parallel;
        double s = time_ms(reps, [&] { serial = reference::error_histogram(g, x); });
        double p = time_ms(reps, [&] { parallel = error_histogram(g, x); });
        report("error_histogram", s, p, check(same_bins(serial, parallel)));
    }
    {
        Graph g = make_generated("grid:100x100");
        double serial = 0, parallel = 0;
        double s = time_ms(reps, [&] { serial = reference::eccentricity_max(g); });
        double p = time_ms(reps, [&] { parallel = eccentricity_max(g); });
        report("eccentricity", s, p, check(serial == parallel));
    }

    if (mismatches) {
        std::printf("%d kernel(s) disagreed with the reference\n", mismatches);
        return 1;
    }
    return 0;
}
