#include "sstress/pivot_mds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/rng.hpp"
#include "sstress/sampling.hpp"

namespace sstress {

namespace {

constexpr double kPowerTol = 1e-8;
constexpr int kPowerCap = 1000;

// Top eigenvectors of the symmetric PSD p x p matrix M, by power iteration
// with deflation. Returns per vector the Rayleigh quotient as eigenvalue.
bool top_eigenpairs(const std::vector<double>& m, std::size_t p, int count, Rng& rng,
                    std::vector<std::vector<double>>& vecs, std::vector<double>& vals) {
    bool converged = true;
    vecs.assign(count, std::vector<double>(p));
    vals.assign(count, 0.0);
    std::vector<double> next(p);
    for (int e = 0; e < count; ++e) {
        auto& v = vecs[e];
        for (double& c : v) c = rng.uniform_real() - 0.5;
        bool ok = false;
        for (int round = 0; round < kPowerCap; ++round) {
            // deflate against the eigenvectors already found, then normalize
            for (int f = 0; f < e; ++f) {
                double dot = 0;
                for (std::size_t i = 0; i < p; ++i) dot += v[i] * vecs[f][i];
                for (std::size_t i = 0; i < p; ++i) v[i] -= dot * vecs[f][i];
            }
            double norm = 0;
            for (double c : v) norm += c * c;
            norm = std::sqrt(norm);
            if (norm < 1e-300) break;  // eigenvalue 0; keep the zero direction
            for (double& c : v) c /= norm;
            for (std::size_t i = 0; i < p; ++i) {
                double sum = 0;
                for (std::size_t j = 0; j < p; ++j) sum += m[i * p + j] * v[j];
                next[i] = sum;
            }
            double next_norm = 0;
            for (double c : next) next_norm += c * c;
            next_norm = std::sqrt(next_norm);
            if (next_norm < 1e-300) break;
            double change = 0;
            for (std::size_t i = 0; i < p; ++i) {
                double diff = next[i] / next_norm - v[i];
                change += diff * diff;
            }
            v.swap(next);
            for (double& c : v) c /= next_norm;
            if (std::sqrt(change) <= kPowerTol) {
                ok = true;
                break;
            }
        }
        converged = converged && ok;
        double lambda = 0;
        for (std::size_t i = 0; i < p; ++i) {
            double sum = 0;
            for (std::size_t j = 0; j < p; ++j) sum += m[i * p + j] * v[j];
            lambda += v[i] * sum;
        }
        vals[e] = std::max(lambda, 0.0);
    }
    return converged;
}

}  // namespace

PivotMdsResult pivot_mds(const Graph& g, std::size_t p, std::uint64_t seed, int dim) {
    NodeId n = g.node_count();
    if (dim < 1) throw ConfigError("layout dimension must be >= 1");
    PivotMdsResult res;
    if (p > static_cast<std::size_t>(n)) {
        p = static_cast<std::size_t>(n);
        res.clamped = true;
    }
    if (p < 1) throw ConfigError("pivot count must be >= 1");
    res.pivots_used = p;

    Rng base(seed);
    Rng pivot_rng = base.split("pivotmds-pivots");
    std::vector<NodeId> pivots = sample_maxmin_sp(g, p, pivot_rng);
    PivotDistances pd = mssp(g, pivots);

    // double-centered squared distances, n x p row-major
    std::vector<double> c(static_cast<std::size_t>(n) * p);
    std::vector<double> col_mean(p, 0.0), row_mean(n, 0.0);
    double grand = 0;
    for (std::size_t j = 0; j < p; ++j) {
        double sum = 0;
        for (NodeId v = 0; v < n; ++v) {
            double d = pd.d(j, v);
            double sq = d * d;
            c[static_cast<std::size_t>(v) * p + j] = sq;
            sum += sq;
        }
        col_mean[j] = sum / n;
        grand += sum;
    }
    grand /= static_cast<double>(n) * p;
    for (NodeId v = 0; v < n; ++v) {
        double sum = 0;
        for (std::size_t j = 0; j < p; ++j) sum += c[static_cast<std::size_t>(v) * p + j];
        row_mean[v] = sum / p;
    }
#pragma omp parallel for schedule(static)
    for (NodeId v = 0; v < n; ++v)
        for (std::size_t j = 0; j < p; ++j) {
            auto& cell = c[static_cast<std::size_t>(v) * p + j];
            cell = -0.5 * (cell - row_mean[v] - col_mean[j] + grand);
        }

    // p x p Gram matrix C^T C
    std::vector<double> gram(p * p);
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a)
        for (std::size_t b = 0; b < p; ++b) {
            double sum = 0;
            for (NodeId v = 0; v < n; ++v)
                sum += c[static_cast<std::size_t>(v) * p + a] * c[static_cast<std::size_t>(v) * p + b];
            gram[a * p + b] = sum;
        }

    Rng power_rng = base.split("pivotmds-power");
    std::vector<std::vector<double>> vecs;
    std::vector<double> vals;
    res.converged = top_eigenpairs(gram, p, dim, power_rng, vecs, vals);

    res.layout = Layout(n, dim);
    for (int e = 0; e < dim; ++e) {
        double sigma = std::sqrt(vals[e]);          // singular value of C
        double scale = sigma > 0 ? 1.0 / std::sqrt(sigma) : 0.0;
#pragma omp parallel for schedule(static)
        for (NodeId v = 0; v < n; ++v) {
            double sum = 0;
            for (std::size_t j = 0; j < p; ++j)
                sum += c[static_cast<std::size_t>(v) * p + j] * vecs[e][j];
            res.layout(v, e) = sum * scale;
        }
    }
    return res;
}

void rescale_to_edge_weights(Layout& x, const Graph& g) {
    double drawn = total_edge_drawn_length(g, x);
    if (!(drawn > 0)) throw ValidationError("cannot rescale a fully coincident layout");
    double weight_sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (const Edge& e : g.neighbors(v))
            if (v < e.to) weight_sum += 1.0 / (e.length * e.length);
    x.scale(weight_sum / drawn);
}

}  // namespace sstress
