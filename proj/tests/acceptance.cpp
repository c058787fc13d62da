// End-to-end acceptance checks. Each check prints exactly one PASS/FAIL
// line; the process exits nonzero if any of them fail. Everything runs on
// generated graphs; check 9 additionally needs the CLI binary, taken from
// the SSTRESS_CLI environment variable.

#include <sys/wait.h>

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/graph.hpp"
#include "sstress/io.hpp"
#include "sstress/metrics.hpp"
#include "sstress/pivot_mds.hpp"
#include "sstress/rng.hpp"
#include "sstress/sampling.hpp"
#include "sstress/solver.hpp"
#include "oracles.hpp"

using namespace sstress;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---- 1: with every node as pivot, the sparse solver must reproduce the ----
// ---- full solver sweep for sweep (coordinates within 1e-9)            ----

Outcome check_reduction_equivalence() {
    Outcome out;
    auto start = Clock::now();
    omp_set_num_threads(1);
    Rng rng(90210);
    double worst = 0;
    for (int inst = 0; inst < 20; ++inst) {
        NodeId n = static_cast<NodeId>(5 + rng.uniform_index(46));  // 5..50
        Graph g = oracle::random_connected(rng, n, static_cast<int>(rng.uniform_index(n)));
        Layout x0 = oracle::random_layout(rng, n, 2);
        std::vector<NodeId> pivots(n);
        std::iota(pivots.begin(), pivots.end(), 0);
        TriDistances dm(g);
        PivotDistances pd = mssp(g, pivots);
        Regions regions = build_regions(pd);
        for (int sweeps : {1, 2, 4, 6}) {
            SolverConfig cfg;
            cfg.max_iters = sweeps;
            cfg.eps = 0.0;
            Layout full = solve_full_stress(g, dm, x0, cfg).layout;
            Layout sparse = solve_sparse_stress(g, pd, regions, x0, cfg).layout;
            for (NodeId v = 0; v < n; ++v)
                for (int d = 0; d < 2; ++d)
                    worst = std::max(worst, std::abs(full(v, d) - sparse(v, d)));
        }
    }
    double elapsed = seconds_since(start);
    if (worst > 1e-9) out.fail("max coordinate difference " + fmt(worst) + " > 1e-9");
    if (elapsed >= 10.0) out.fail("took " + fmt(elapsed) + " s (budget 10 s)");
    out.detail = "max coord diff " + fmt(worst) + ", " + fmt(elapsed) + " s";
    return out;
}

// ---- 2: full-stress sweeps never increase the objective ----

Outcome check_monotone_majorization() {
    Outcome out;
    std::vector<Graph> graphs = oracle::fixture_graphs();
    graphs.push_back(make_grid(10, 10));
    graphs.push_back(make_complete_binary_tree(6));
    double worst_ratio = 0;
    for (const Graph& g : graphs) {
        Layout x0 = pivot_mds(g, std::min<std::size_t>(200, g.node_count()), 11).layout;
        rescale_to_edge_weights(x0, g);
        SolverConfig cfg;
        cfg.max_iters = 100;
        cfg.eps = -1.0;  // run all 100 sweeps
        SolveResult res = solve_full_stress(g, x0, cfg);
        for (std::size_t i = 1; i < res.trace.size(); ++i) {
            double prev = res.trace[i - 1].stress;
            double next = res.trace[i].stress;
            if (next > prev * (1 + 1e-9) + 1e-12)
                out.fail("stress rose at sweep " + std::to_string(i) + " on n=" +
                         std::to_string(g.node_count()) + " (" + fmt(prev) + " -> " + fmt(next) +
                         ")");
            if (prev > 1e-9) worst_ratio = std::max(worst_ratio, next / prev);
        }
    }
    if (out.ok)
        out.detail = std::to_string(graphs.size()) + " graphs x 100 sweeps, worst ratio " +
                     fmt(worst_ratio);
    return out;
}

// ---- 3: 1023-node complete binary tree hits the published stress window ----

double evaluated_rescaled_stress(const Graph& g, const Layout& x) {
    return optimal_rescale(stress_sums(g, x)).stress;
}

Outcome check_btree_stress() {
    Outcome out;
    auto start = Clock::now();
    Graph g = make_generated("btree:9");

    auto init_layout = [&](std::uint64_t seed) {
        Layout x = pivot_mds(g, 200, seed).layout;
        rescale_to_edge_weights(x, g);
        return x;
    };

    SolveResult full = solve_full_stress(g, init_layout(1), SolverConfig{});  // cap 500
    double full_stress = evaluated_rescaled_stress(g, full.layout);
    if (full_stress < 57000.0 || full_stress > 63500.0)
        out.fail("full stress " + fmt(full_stress) + " outside [57000, 63500]");

    std::vector<std::size_t> ks{200, 100, 50};
    std::vector<double> medians;
    for (std::size_t k : ks) {
        std::vector<double> vals;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Layout x0 = init_layout(seed);
            SamplerConfig sc;
            sc.strategy = Sampler::kmeans_sp;
            sc.k = k;
            sc.seed = seed;
            std::vector<NodeId> pivots = sample_pivots(g, sc, &x0);
            SolveResult res = solve_sparse_stress(g, pivots, x0, SolverConfig{});  // cap 200
            vals.push_back(evaluated_rescaled_stress(g, res.layout));
        }
        std::sort(vals.begin(), vals.end());
        medians.push_back(vals[2]);
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (medians[i] > 1.15 * full_stress)
            out.fail("sparse k=" + std::to_string(ks[i]) + " median " + fmt(medians[i]) +
                     " exceeds 1.15 x full (" + fmt(1.15 * full_stress) + ")");
    }
    if (medians[0] > medians[1] * 1.01)
        out.fail("k=200 median " + fmt(medians[0]) + " not <= k=100 median " + fmt(medians[1]) +
                 " + 1%");
    if (medians[1] > medians[2] * 1.01)
        out.fail("k=100 median " + fmt(medians[1]) + " not <= k=50 median " + fmt(medians[2]) +
                 " + 1%");
    double elapsed = seconds_since(start);
    if (elapsed >= 60.0) out.fail("took " + fmt(elapsed) + " s (budget 60 s)");
    std::string summary = "full " + fmt(full_stress) + ", k200/k100/k50 medians " +
                          fmt(medians[0]) + "/" + fmt(medians[1]) + "/" + fmt(medians[2]) + ", " +
                          fmt(elapsed) + " s";
    if (out.ok)
        out.detail = summary;
    else
        out.detail = summary + "; " + out.detail;
    return out;
}

// ---- 4: metric implementations agree with brute-force oracles ----

bool rel_close(double a, double b, double tol = 1e-12) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return std::abs(a - b) <= tol * (1 + std::max(std::abs(a), std::abs(b)));
}

Outcome check_oracle_equivalence() {
    Outcome out;
    Rng gr(515253);
    std::vector<Graph> graphs;
    graphs.push_back(make_path(8));
    graphs.push_back(make_cycle(9));
    graphs.push_back(make_grid(4, 5));
    graphs.push_back(make_star(7));
    graphs.push_back(make_complete_binary_tree(3));
    graphs.push_back(oracle::random_connected(gr, 12, 6));
    graphs.push_back(oracle::random_connected(gr, 18, 9));
    graphs.push_back(oracle::random_connected(gr, 15, 8, /*weighted=*/true));
    graphs.push_back(oracle::random_connected(gr, 20, 12, /*weighted=*/true));

    Rng lr(987654);
    long checks = 0, mismatches = 0;
    auto expect = [&](bool ok, const char* what, NodeId n) {
        ++checks;
        if (!ok) {
            ++mismatches;
            if (out.ok || out.detail.size() < 200)
                out.fail(std::string(what) + " mismatch on n=" + std::to_string(n));
            out.ok = false;
        }
    };
    for (const Graph& g : graphs) {
        NodeId n = g.node_count();
        for (int rep = 0; rep < 50; ++rep) {
            Layout x = oracle::random_layout(lr, n, 2);

            StressSums s = stress_sums(g, x);
            expect(rel_close(raw_stress(s), oracle::naive_full_stress(g, x)), "stress", n);

            expect(gabriel_graph(x) == oracle::naive_gabriel(x), "gabriel graph", n);

            std::vector<HistBin> hist = error_histogram(g, x, 25);
            std::vector<HistBin> naive_hist = oracle::naive_histogram(g, x, 25);
            bool hist_ok = hist.size() == naive_hist.size();
            if (hist_ok)
                for (std::size_t b = 0; b < hist.size(); ++b)
                    hist_ok = hist_ok && hist[b].lo == naive_hist[b].lo &&
                              hist[b].hi == naive_hist[b].hi &&
                              hist[b].count == naive_hist[b].count &&
                              rel_close(hist[b].min, naive_hist[b].min) &&
                              rel_close(hist[b].p5, naive_hist[b].p5) &&
                              rel_close(hist[b].p25, naive_hist[b].p25) &&
                              rel_close(hist[b].median, naive_hist[b].median) &&
                              rel_close(hist[b].p75, naive_hist[b].p75) &&
                              rel_close(hist[b].p95, naive_hist[b].p95) &&
                              rel_close(hist[b].max, naive_hist[b].max);
            expect(hist_ok, "error histogram", n);

            std::vector<double> hull = hull_error(g, x, 3);
            std::vector<double> naive_hull = oracle::naive_hull_error(g, x, 3, Aggregate::mean);
            bool hull_ok = hull.size() == naive_hull.size();
            if (hull_ok)
                for (std::size_t k = 0; k < hull.size(); ++k)
                    hull_ok = hull_ok && rel_close(hull[k], naive_hull[k]);
            expect(hull_ok, "hull error", n);
        }
        // jaccard compares two layouts; use 25 pairs per graph
        for (int rep = 0; rep < 25; ++rep) {
            Layout a = oracle::random_layout(lr, n, 2);
            Layout b = oracle::random_layout(lr, n, 2);
            std::vector<double> got = gabriel_jaccard(a, b, 3);
            std::vector<double> want = oracle::naive_jaccard(a, b, 3, Aggregate::mean);
            bool ok = got.size() == want.size();
            if (ok)
                for (std::size_t k = 0; k < got.size(); ++k) ok = ok && rel_close(got[k], want[k]);
            expect(ok, "gabriel jaccard", n);
        }
    }
    std::string summary = std::to_string(checks) + " comparisons, " +
                          std::to_string(mismatches) + " mismatches";
    out.detail = out.ok ? summary : summary + "; " + out.detail;
    return out;
}

// ---- 5: the closed-form rescale is at least as good as a 10^4 grid ----

Outcome check_rescale_optimality() {
    Outcome out;
    Rng rng(246810);
    double worst_gap = 0;
    for (int inst = 0; inst < 20; ++inst) {
        NodeId n = static_cast<NodeId>(8 + rng.uniform_index(10));
        Graph g = oracle::random_connected(rng, n, static_cast<int>(rng.uniform_index(n)),
                                           inst % 2 == 1);
        Layout x = oracle::random_layout(rng, n, 2);
        auto D = oracle::floyd_warshall(g);
        std::vector<std::array<double, 3>> terms;  // w, target, drawn
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j = i + 1; j < n; ++j) {
                double d = D[static_cast<std::size_t>(i) * n + j];
                terms.push_back({1.0 / (d * d), d, x.distance(i, j)});
            }
        auto stress_at = [&](double c) {
            double sum = 0;
            for (const auto& t : terms) {
                double diff = c * t[2] - t[1];
                sum += t[0] * diff * diff;
            }
            return sum;
        };
        RescaleResult r = optimal_rescale(stress_sums(g, x));
        double grid_min = std::numeric_limits<double>::infinity();
        for (int step = 1; step <= 10000; ++step)
            grid_min = std::min(grid_min, stress_at(3.0 * r.scale * step / 10000.0));
        if (r.stress > grid_min * (1 + 1e-12) + 1e-12)
            out.fail("instance " + std::to_string(inst) + ": closed form " + fmt(r.stress) +
                     " > grid min " + fmt(grid_min));
        worst_gap = std::max(worst_gap, (r.stress - grid_min) / (1 + grid_min));
    }
    if (out.ok) out.detail = "20 instances, worst relative gap " + fmt(worst_gap);
    return out;
}

// ---- 6: procrustes statistic calibration ----

Outcome check_procrustes_calibration() {
    Outcome out;
    Rng rng(135791);
    double worst = 0;
    for (int rep = 0; rep < 20; ++rep) {
        Layout x = oracle::random_layout(rng, 10, 2);
        double angle = rng.uniform_real() * 6.28318530717958648;
        double scale = 0.2 + 3.0 * rng.uniform_real();
        double tx = 10 * (rng.uniform_real() - 0.5), ty = 10 * (rng.uniform_real() - 0.5);
        Layout y(10, 2);
        double c = std::cos(angle), sn = std::sin(angle);
        for (NodeId v = 0; v < 10; ++v) {
            y(v, 0) = scale * (c * x(v, 0) - sn * x(v, 1)) + tx;
            y(v, 1) = scale * (sn * x(v, 0) + c * x(v, 1)) + ty;
        }
        double stat = procrustes_statistic(x, y);
        worst = std::max(worst, stat);
        if (stat > 1e-9)
            out.fail("similarity copy " + std::to_string(rep) + " scored " + fmt(stat));
    }

    Layout asym(10, 2);
    const double pts[10][2] = {{0, 0}, {4, 0}, {5, 2}, {3, 5},  {1, 4},
                               {2, 2}, {6, 1}, {7, 4}, {2, -3}, {-2, 1}};
    for (NodeId v = 0; v < 10; ++v) {
        asym(v, 0) = pts[v][0];
        asym(v, 1) = pts[v][1];
    }
    Layout mirror = asym;
    for (NodeId v = 0; v < 10; ++v) mirror(v, 0) = -mirror(v, 0);
    double reflected = procrustes_statistic(asym, mirror);
    if (reflected <= 0.05) out.fail("reflected layout scored only " + fmt(reflected));
    if (out.ok)
        out.detail = "similarity worst " + fmt(worst) + ", reflected " + fmt(reflected);
    return out;
}

// ---- 7: sweep cost grows linearly in k; the k x n table dominates memory ----

Outcome check_complexity_scaling() {
    Outcome out;
    Graph g = make_grid(100, 100);
    NodeId n = g.node_count();
    Rng rng(87);
    Layout x0 = oracle::random_layout(rng, n, 2);

    auto mean_sweep_time = [&](std::size_t k, std::size_t& table_entries) {
        Rng srng(19);
        std::vector<NodeId> pivots = sample_maxmin_sp(g, k, srng);
        PivotDistances pd = mssp(g, pivots);
        Regions regions = build_regions(pd);
        table_entries = pd.dist.size();
        // structural shape of the dominant allocation
        if (pd.dist.size() != k * static_cast<std::size_t>(n))
            out.fail("distance table is not k x n for k=" + std::to_string(k));
        std::size_t members = 0;
        for (const auto& m : regions.members) members += m.size();
        if (members != static_cast<std::size_t>(n))
            out.fail("regions do not partition the nodes for k=" + std::to_string(k));
        SolverConfig cfg;
        cfg.max_iters = 5;
        cfg.eps = -1.0;
        auto start = Clock::now();
        SolveResult res = solve_sparse_stress(g, pd, regions, x0, cfg);
        double total = seconds_since(start);
        return total / static_cast<double>(res.sweeps);
    };

    std::size_t entries_50 = 0, entries_200 = 0;
    double t50 = mean_sweep_time(50, entries_50);
    double t200 = mean_sweep_time(200, entries_200);
    if (entries_200 != 4 * entries_50) out.fail("table entries did not scale 4x from k=50 to k=200");
    double ratio = t200 / t50;
    if (ratio > 5.0) out.fail("sweep time ratio " + fmt(ratio) + " > 5");
    if (out.ok)
        out.detail = "mean sweep " + fmt(t50 * 1e3) + " ms (k=50) vs " + fmt(t200 * 1e3) +
                     " ms (k=200), ratio " + fmt(ratio) + ", table 4x";
    return out;
}

// ---- 8: taking every node as pivot reproduces classical MDS ----

Outcome check_pivot_mds_fidelity() {
    Outcome out;
    Rng rng(4321);
    std::vector<Graph> graphs;
    graphs.push_back(make_path(12));
    graphs.push_back(make_grid(4, 7));
    for (int i = 0; i < 10; ++i) {
        NodeId n = static_cast<NodeId>(10 + rng.uniform_index(41));  // 10..50
        graphs.push_back(oracle::random_connected(rng, n, static_cast<int>(rng.uniform_index(n))));
    }
    double worst = 0;
    for (const Graph& g : graphs) {
        NodeId n = g.node_count();
        Layout mine = pivot_mds(g, static_cast<std::size_t>(n), 77).layout;
        Layout classical = oracle::classical_mds(g, 2);
        double stat = oracle::procrustes_min_over_flips(classical, mine);
        worst = std::max(worst, stat);
        if (stat >= 1e-6)
            out.fail("n=" + std::to_string(n) + " scored " + fmt(stat) + " vs classical");
    }
    if (out.ok)
        out.detail = std::to_string(graphs.size()) + " graphs, worst statistic " + fmt(worst);
    return out;
}

// ---- 9: the bench protocol is byte-deterministic per seed ----

std::string drop_csv_column(const std::string& csv, const std::string& name) {
    std::istringstream in(csv);
    std::string line, out;
    int drop = -1;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::size_t at = 0;
        while (true) {
            std::size_t comma = line.find(',', at);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(at));
                break;
            }
            fields.push_back(line.substr(at, comma - at));
            at = comma + 1;
        }
        if (first) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == name) drop = static_cast<int>(i);
            first = false;
        }
        std::string rebuilt;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (static_cast<int>(i) == drop) continue;
            if (!rebuilt.empty()) rebuilt += ',';
            rebuilt += fields[i];
        }
        out += rebuilt;
        out += '\n';
    }
    return out;
}

Outcome check_bench_determinism() {
    Outcome out;
    const char* bin = std::getenv("SSTRESS_CLI");
    if (bin == nullptr) {
        out.fail("SSTRESS_CLI is not set; cannot run the bench binary");
        return out;
    }
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sstress-acceptance";
    fs::create_directories(dir);
    fs::path a = dir / "bench_a.csv", b = dir / "bench_b.csv";
    std::string base = std::string("\"") + bin +
                       "\" bench --gen btree:7 --ks 30,60 --samplers kmeans-sp,maxmin-sp "
                       "--reps 3 --seed 2024 --out ";
    for (const fs::path& p : {a, b}) {
        int status = std::system((base + "\"" + p.string() + "\"").c_str());
        if (status == -1 || WEXITSTATUS(status) != 0) {
            out.fail("bench run failed");
            return out;
        }
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string run_a = slurp(a), run_b = slurp(b);
    std::size_t rows = static_cast<std::size_t>(std::count(run_a.begin(), run_a.end(), '\n'));
    if (rows != 1 + 2 * 2 * 3)
        out.fail("expected 13 csv lines, saw " + std::to_string(rows));
    if (drop_csv_column(run_a, "elapsed_ms") != drop_csv_column(run_b, "elapsed_ms"))
        out.fail("runs differ beyond the elapsed_ms column");
    if (out.ok) out.detail = "two runs byte-identical apart from elapsed_ms";
    return out;
}

}  // namespace

int main() {
    struct Check {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Check> checks = {
        {"1 reduction equivalence (sparse with k=n vs full, 20 graphs)", check_reduction_equivalence},
        {"2 monotone full-stress sweeps (100 sweeps per graph)", check_monotone_majorization},
        {"3 binary-tree stress window (1023 nodes, full + sparse k=200/100/50)", check_btree_stress},
        {"4 metric oracle equivalence (n <= 20, 50 layouts per graph)", check_oracle_equivalence},
        {"5 closed-form rescale vs 10^4-point grid (20 instances)", check_rescale_optimality},
        {"6 procrustes calibration (similarity ~ 0, reflection > 0.05)", check_procrustes_calibration},
        {"7 sweep cost scaling on the 100x100 grid (k=200 vs k=50)", check_complexity_scaling},
        {"8 pivot initialization vs classical scaling (p = n)", check_pivot_mds_fidelity},
        {"9 bench protocol byte-determinism per seed", check_bench_determinism},
    };
    int failures = 0;
    for (const Check& c : checks) {
        Outcome res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res.ok = false;
            res.detail = std::string("exception: ") + e.what();
        }
        if (!res.ok) ++failures;
        std::printf("%s %s%s%s\n", res.ok ? "PASS" : "FAIL", c.name,
                    res.detail.empty() ? "" : " -- ", res.detail.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu acceptance checks failed\n", failures, checks.size());
        return 1;
    }
    std::printf("all %zu acceptance checks passed\n", checks.size());
    return 0;
}
