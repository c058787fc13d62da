#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/errors.hpp"
#include "sstress/graph.hpp"
#include "sstress/io.hpp"
#include "sstress/metrics.hpp"
#include "sstress/pivot_mds.hpp"
#include "sstress/rng.hpp"
#include "sstress/sampling.hpp"
#include "sstress/solver.hpp"
#include "sstress/svg.hpp"

namespace {

using namespace sstress;
using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

struct InputOptions {
    std::string path;
    std::string gen;
    std::string format;  // "", "el", "mtx"
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("input", in.path, "graph file, `.mtx` parsed as MatrixMarket, else edge list");
    cmd->add_option("--gen", in.gen,
                    "generate instead: path:N, cycle:N, grid:AxB, btree:DEPTH, star:LEAVES");
    cmd->add_option("--format", in.format, "force the input format")
        ->check(CLI::IsMember({"el", "mtx"}));
}

std::string input_name(const InputOptions& in) { return in.gen.empty() ? in.path : in.gen; }

Graph load_graph(const InputOptions& in) {
    if (!in.gen.empty()) {
        if (!in.path.empty()) throw ConfigError("give either an input file or --gen, not both");
        return make_generated(in.gen);
    }
    if (in.path.empty()) throw ConfigError("an input file or --gen is required");
    std::ifstream f(in.path);
    if (!f) throw IoError("cannot open `" + in.path + "`");
    std::string fmt = in.format;
    if (fmt.empty()) fmt = in.path.ends_with(".mtx") ? "mtx" : "el";
    return fmt == "mtx" ? parse_matrix_market(f) : parse_edge_list(f);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write `" + path + "`");
    return out;
}

Layout load_aligned_layout(const std::string& path, const Graph& g) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open `" + path + "`");
    return align_layout(read_layout_csv(f), g);
}

// "dir/run.csv" -> "dir/run.trace.csv" etc.
std::string derive_path(const std::string& out, const char* tag) {
    std::string stem = out;
    if (stem.ends_with(".csv")) stem.resize(stem.size() - 4);
    return stem + "." + tag + ".csv";
}

constexpr std::size_t kInitPivots = 200;
constexpr NodeId kFullModelWarnNodes = 20000;

struct PipelineConfig {
    std::string algo = "sparse";
    int k = 0;
    std::string sampler = "kmeans-sp";
    std::uint64_t seed = 0;
    int max_iters = 0;  // 0 keeps the per-solver default
    double eps = 1e-4;
    int dim = 2;
};

struct PipelineResult {
    Layout layout{0, 2};
    std::vector<TraceRow> trace;
    int sweeps = 0;
    bool converged = true;
    double elapsed_ms = 0;  // sampling + init + solve, no file IO
};

PipelineResult run_pipeline(const Graph& g, const PipelineConfig& cfg) {
    auto t0 = Clock::now();
    std::size_t p = std::min<std::size_t>(kInitPivots, static_cast<std::size_t>(g.node_count()));
    PivotMdsResult init = pivot_mds(g, p, cfg.seed, cfg.dim);
    if (!init.converged)
        std::cerr << "warning: spectral initialization stopped before tolerance\n";
    rescale_to_edge_weights(init.layout, g);

    SolverConfig scfg;
    scfg.max_iters = cfg.max_iters;
    scfg.eps = cfg.eps;
    scfg.seed = cfg.seed;

    PipelineResult out;
    if (cfg.algo == "full") {
        if (g.node_count() > kFullModelWarnNodes)
            std::cerr << "warning: full model stores all " << g.node_count()
                      << " choose 2 distances; consider --algo sparse\n";
        TriDistances dm(g);
        SolveResult r = solve_full_stress(g, dm, init.layout, scfg);
        out = {std::move(r.layout), std::move(r.trace), r.sweeps, r.converged, 0};
    } else if (cfg.algo == "sparse") {
        if (cfg.k < 1) throw ConfigError("--algo sparse requires --k >= 1");
        SamplerConfig sampler_cfg;
        sampler_cfg.strategy = sampler_from_name(cfg.sampler);
        sampler_cfg.k = static_cast<std::size_t>(cfg.k);
        sampler_cfg.seed = cfg.seed;
        std::vector<NodeId> pivots = sample_pivots(g, sampler_cfg, &init.layout);
        PivotDistances pd = mssp(g, std::move(pivots));
        Regions regions = build_regions(pd);
        SolveResult r = solve_sparse_stress(g, pd, regions, init.layout, scfg);
        out = {std::move(r.layout), std::move(r.trace), r.sweeps, r.converged, 0};
    } else if (cfg.algo == "one-stress") {
        SolveResult r = solve_1_stress(g, init.layout, scfg);
        out = {std::move(r.layout), std::move(r.trace), r.sweeps, r.converged, 0};
    } else if (cfg.algo == "pivotmds-only") {
        out.layout = std::move(init.layout);
        out.trace.push_back({0, edge_stress_value(g, out.layout),
                             std::numeric_limits<double>::infinity(),
                             ms_between(t0, Clock::now())});
    } else {
        throw ConfigError("unknown algorithm `" + cfg.algo + "`");
    }
    out.elapsed_ms = ms_between(t0, Clock::now());
    return out;
}

// Optimally rescaled stress of the final layout, the quantity repetition
// medians select on. Sources are re-seeded per call so every repetition is
// scored against the same sample.
StressSums evaluate_sums(const Graph& g, const Layout& x, std::size_t sample_pairs,
                         std::uint64_t seed) {
    if (sample_pairs == 0) return stress_sums(g, x);
    Rng rng = Rng(seed).split("eval-sources");
    return stress_sums_sampled(g, x, sample_pairs, rng);
}

int cmd_info(const InputOptions& in) {
    Graph g = load_graph(in);
    GraphStats st = stats(g);
    std::cout << "n=" << st.n << " m=" << st.m << " min_deg=" << st.min_degree
              << " max_deg=" << st.max_degree << " diam=" << format_double(st.diameter)
              << " weighted=" << (g.is_weighted() ? "true" : "false") << '\n';
    return 0;
}

struct LayoutOptions {
    InputOptions in;
    PipelineConfig pipe;
    int reps = 1;
    std::size_t sample_pairs = 0;
    std::string out = "layout.csv";
    std::string trace;    // default: derived from --out
    std::string svg;      // empty: skip
    std::string summary;  // default with --reps > 1: derived from --out
};

int cmd_layout(const LayoutOptions& opt) {
    Graph g = largest_component(load_graph(opt.in));

    struct Rep {
        PipelineResult result;
        std::uint64_t seed = 0;
        double rescaled = 0;
        double normalized = 0;
    };
    bool score = opt.reps > 1 || !opt.summary.empty();
    std::vector<Rep> reps(opt.reps);
    for (int r = 0; r < opt.reps; ++r) {
        PipelineConfig cfg = opt.pipe;
        cfg.seed = opt.pipe.seed + static_cast<std::uint64_t>(r);
        reps[r].seed = cfg.seed;
        reps[r].result = run_pipeline(g, cfg);
        if (score) {
            StressSums sums =
                evaluate_sums(g, reps[r].result.layout, opt.sample_pairs, opt.pipe.seed);
            reps[r].rescaled = optimal_rescale(sums).stress;
            reps[r].normalized = normalized_stress(sums);
        }
    }

    std::size_t selected = 0;
    if (opt.reps > 1) {
        std::vector<std::size_t> order(reps.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return reps[a].rescaled != reps[b].rescaled ? reps[a].rescaled < reps[b].rescaled
                                                        : a < b;
        });
        selected = order[(order.size() - 1) / 2];  // lower median on even counts
    }
    const Rep& best = reps[selected];

    {
        auto out = open_out(opt.out);
        write_layout_csv(out, g, best.result.layout);
    }
    {
        std::string trace_path = opt.trace.empty() ? derive_path(opt.out, "trace") : opt.trace;
        auto out = open_out(trace_path);
        write_trace_csv(out, best.result.trace);
    }
    if (!opt.svg.empty()) {
        auto out = open_out(opt.svg);
        write_svg(out, g, best.result.layout);
    }
    if (!opt.summary.empty() || opt.reps > 1) {
        std::string path = opt.summary.empty() ? derive_path(opt.out, "summary") : opt.summary;
        auto out = open_out(path);
        out << "rep,seed,rescaled_stress,normalized_stress,sweeps,converged,elapsed_ms,selected\n";
        for (std::size_t r = 0; r < reps.size(); ++r)
            out << r << ',' << reps[r].seed << ',' << format_double(reps[r].rescaled) << ','
                << format_double(reps[r].normalized) << ',' << reps[r].result.sweeps << ','
                << (reps[r].result.converged ? 1 : 0) << ','
                << format_double(reps[r].result.elapsed_ms) << ',' << (r == selected ? 1 : 0)
                << '\n';
    }
    return 0;
}

struct MetricsOptions {
    InputOptions in;
    std::string cmp;
    std::string ref;
    int khops = 2;
    std::string aggregate = "mean";
    int bins = 1000;
    std::size_t sample_pairs = 0;
    std::uint64_t seed = 0;
    std::string out;  // empty: stdout
};

int cmd_metrics(const MetricsOptions& opt) {
    Graph g = largest_component(load_graph(opt.in));
    Layout cmp = load_aligned_layout(opt.cmp, g);
    Aggregate agg = opt.aggregate == "median" ? Aggregate::median : Aggregate::mean;

    MetricReport report;
    StressSums sums = [&] {
        if (opt.sample_pairs == 0) return stress_sums(g, cmp);
        Rng rng = Rng(opt.seed).split("metric-sources");
        return stress_sums_sampled(g, cmp, opt.sample_pairs, rng);
    }();
    report.raw = raw_stress(sums);
    RescaleResult rescale = optimal_rescale(sums);
    report.scale = rescale.scale;
    report.rescaled = rescale.stress;
    report.normalized = normalized_stress(sums);

    // error distribution on the optimally rescaled layout; the hop-based
    // curves are scale-invariant and use the layout as given
    Layout scaled = cmp;
    scaled.scale(rescale.scale);
    if (opt.sample_pairs == 0) {
        report.histogram = error_histogram(g, scaled, opt.bins);
    } else {
        Rng rng = Rng(opt.seed).split("hist-sources");
        report.histogram = error_histogram_sampled(g, scaled, opt.bins, opt.sample_pairs, rng);
    }
    if (cmp.dim() == 2) report.hull_curve = hull_error(g, cmp, opt.khops, agg);

    if (!opt.ref.empty()) {
        Layout ref = load_aligned_layout(opt.ref, g);
        report.procrustes = procrustes_statistic(ref, cmp);
        if (g.node_count() >= 2) report.jaccard_curve = gabriel_jaccard(ref, cmp, opt.khops, agg);
    }

    if (opt.out.empty()) {
        write_metric_report(std::cout, report);
    } else {
        auto out = open_out(opt.out);
        write_metric_report(out, report);
    }
    return 0;
}

struct BenchOptions {
    InputOptions in;
    std::vector<int> ks{50, 100, 200};
    std::vector<std::string> samplers{"kmeans-sp"};
    std::uint64_t seed = 0;
    int reps = 1;
    int time_reps = 1;
    int max_iters = 0;
    double eps = 1e-4;
    std::size_t sample_pairs = 0;
    std::string ref;
    std::string out;  // empty: stdout
};

void run_bench(std::ostream& out, const BenchOptions& opt) {
    Graph g = largest_component(load_graph(opt.in));
    const Layout* ref = nullptr;
    Layout ref_storage{0, 2};
    if (!opt.ref.empty()) {
        ref_storage = load_aligned_layout(opt.ref, g);
        ref = &ref_storage;
    }
    std::string name = input_name(opt.in);
    out << "graph,sampler,k,seed,normalized_stress,procrustes,elapsed_ms\n";
    for (const std::string& sampler : opt.samplers) {
        for (int k : opt.ks) {
            for (int r = 0; r < opt.reps; ++r) {
                PipelineConfig cfg;
                cfg.algo = "sparse";
                cfg.k = k;
                cfg.sampler = sampler;
                cfg.seed = opt.seed + static_cast<std::uint64_t>(r);
                cfg.max_iters = opt.max_iters;
                cfg.eps = opt.eps;
                PipelineResult result;
                double total_ms = 0;
                for (int t = 0; t < opt.time_reps; ++t) {
                    result = run_pipeline(g, cfg);
                    total_ms += result.elapsed_ms;
                }
                StressSums sums = evaluate_sums(g, result.layout, opt.sample_pairs, cfg.seed);
                double pro = ref ? procrustes_statistic(*ref, result.layout)
                                 : std::numeric_limits<double>::quiet_NaN();
                out << name << ',' << sampler << ',' << k << ',' << cfg.seed << ','
                    << format_double(normalized_stress(sums)) << ',' << format_double(pro) << ','
                    << format_double(total_ms / opt.time_reps) << '\n';
            }
        }
    }
}

int cmd_bench(const BenchOptions& opt) {
    if (opt.out.empty()) {
        run_bench(std::cout, opt);
    } else {
        auto out = open_out(opt.out);
        run_bench(out, opt);
    }
    return 0;
}

struct RenderOptions {
    InputOptions in;
    std::string layout;
    std::string out = "layout.svg";
};

int cmd_render(const RenderOptions& opt) {
    Graph g = largest_component(load_graph(opt.in));
    Layout x = load_aligned_layout(opt.layout, g);
    auto out = open_out(opt.out);
    write_svg(out, g, x);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse stress graph layout"};
    app.require_subcommand(1);

    bool deterministic = false;

    auto* info = app.add_subcommand("info", "print graph statistics");
    InputOptions info_in;
    add_input_options(info, info_in);

    auto* layout = app.add_subcommand("layout", "compute a layout");
    LayoutOptions lo;
    add_input_options(layout, lo.in);
    layout->add_option("--algo", lo.pipe.algo, "full, sparse, one-stress or pivotmds-only")
        ->check(CLI::IsMember({"full", "sparse", "one-stress", "pivotmds-only"}));
    layout->add_option("--k", lo.pipe.k, "pivot count (sparse)");
    layout->add_option("--sampler", lo.pipe.sampler, "pivot sampling strategy");
    layout->add_option("--seed", lo.pipe.seed, "base random seed");
    layout->add_option("--reps", lo.reps, "repetitions seed..seed+reps-1; the median stress run is kept")
        ->check(CLI::PositiveNumber);
    layout->add_option("--max-iters", lo.pipe.max_iters, "sweep cap, 0 = solver default");
    layout->add_option("--eps", lo.pipe.eps, "relative movement threshold");
    layout->add_option("--dim", lo.pipe.dim, "layout dimension")->check(CLI::Range(1, 3));
    layout->add_option("--sample-pairs", lo.sample_pairs,
                       "score repetitions on this many sampled source rows (0 = exact)");
    layout->add_option("--out", lo.out, "layout CSV path");
    layout->add_option("--trace", lo.trace, "trace CSV path (default <out>.trace.csv)");
    layout->add_option("--svg", lo.svg, "also render an SVG here");
    layout->add_option("--summary", lo.summary,
                       "per-repetition summary CSV (default with --reps>1: <out>.summary.csv)");

    auto* metrics = app.add_subcommand("metrics", "score a layout against a graph");
    MetricsOptions mo;
    add_input_options(metrics, mo.in);
    metrics->add_option("--cmp", mo.cmp, "layout CSV to score")->required();
    metrics->add_option("--ref", mo.ref, "reference layout CSV for procrustes/jaccard");
    metrics->add_option("--khops", mo.khops, "neighborhood sizes 1..K for the hop curves")
        ->check(CLI::PositiveNumber);
    metrics->add_option("--aggregate", mo.aggregate, "mean or median over nodes")
        ->check(CLI::IsMember({"mean", "median"}));
    metrics->add_option("--bins", mo.bins, "histogram bins for weighted graphs")
        ->check(CLI::PositiveNumber);
    metrics->add_option("--sample-pairs", mo.sample_pairs,
                        "sampled source rows for stress and histogram (0 = exact)");
    metrics->add_option("--seed", mo.seed, "seed for --sample-pairs");
    metrics->add_option("--out", mo.out, "report CSV path (default stdout)");

    auto* bench = app.add_subcommand("bench", "sweep (sampler, k, seed) grid, one CSV row per run");
    BenchOptions bo;
    add_input_options(bench, bo.in);
    bench->add_option("--ks", bo.ks, "pivot counts")->delimiter(',');
    bench->add_option("--samplers", bo.samplers, "sampling strategies")->delimiter(',');
    bench->add_option("--seed", bo.seed, "base seed");
    bench->add_option("--reps", bo.reps, "seeds per cell")->check(CLI::PositiveNumber);
    bench->add_option("--time-reps", bo.time_reps, "average wall time over this many repeats")
        ->check(CLI::PositiveNumber);
    bench->add_option("--max-iters", bo.max_iters, "sweep cap, 0 = solver default");
    bench->add_option("--eps", bo.eps, "relative movement threshold");
    bench->add_option("--sample-pairs", bo.sample_pairs, "sampled source rows for scoring");
    bench->add_option("--ref", bo.ref, "reference layout CSV for the procrustes column");
    bench->add_option("--out", bo.out, "CSV path (default stdout)");

    auto* render = app.add_subcommand("render", "draw a stored layout as SVG");
    RenderOptions ro;
    add_input_options(render, ro.in);
    render->add_option("--layout", ro.layout, "layout CSV")->required();
    render->add_option("--out", ro.out, "SVG path");

    for (auto* cmd : {info, layout, metrics, bench, render})
        cmd->add_flag("--deterministic", deterministic, "run on a single thread");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (const char* env = std::getenv("SPARSE_STRESS_THREADS")) {
        int threads = std::atoi(env);
        if (threads > 0) omp_set_num_threads(threads);
    }
    if (deterministic) omp_set_num_threads(1);

    try {
        if (app.got_subcommand(info)) return cmd_info(info_in);
        if (app.got_subcommand(layout)) return cmd_layout(lo);
        if (app.got_subcommand(metrics)) return cmd_metrics(mo);
        if (app.got_subcommand(bench)) return cmd_bench(bo);
        if (app.got_subcommand(render)) return cmd_render(ro);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
