#include "gridflow/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gridflow/admittance.hpp"
#include "gridflow/errors.hpp"
#include "gridflow/sparse.hpp"

namespace gridflow {

namespace {

// mt19937_64 is fully specified by the standard; drawing doubles from the
// raw engine keeps generation identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

  private:
    std::mt19937_64 eng_;
};

constexpr int max_tree_depth = 3;   // trunk / lateral / sublateral
constexpr int max_children = 8;

std::vector<Complex> flat_matvec(const std::vector<Complex>& a, const std::vector<Complex>& x) {
    const std::size_t dim = x.size();
    std::vector<Complex> out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        Complex acc{};
        const Complex* row = a.data() + r * dim;
        for (std::size_t c = 0; c < dim; ++c) acc += row[c] * x[c];
        out[r] = acc;
    }
    return out;
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

FeederModel generate_radial(int n_nodes, std::uint64_t seed, Coupling coupling) {
    if (n_nodes < 2) throw std::invalid_argument("generate_radial: need at least 2 nodes");
    Rng rng(seed);

    FeederModel f;
    f.n_nodes = n_nodes;
    f.slack = 0;

    std::vector<int> depth(static_cast<std::size_t>(n_nodes), 0);
    std::vector<int> children(static_cast<std::size_t>(n_nodes), 0);
    std::vector<int> eligible{0};
    for (int node = 1; node < n_nodes; ++node) {
        const int parent = eligible[rng.below(eligible.size())];
        depth[static_cast<std::size_t>(node)] = depth[static_cast<std::size_t>(parent)] + 1;
        if (++children[static_cast<std::size_t>(parent)] >= max_children)
            eligible.erase(std::find(eligible.begin(), eligible.end(), parent));
        if (depth[static_cast<std::size_t>(node)] < max_tree_depth) eligible.push_back(node);

        Branch b;
        b.from = parent;
        b.to = node;
        const Complex z_base = Complex{0.01, 0.04} * rng.uniform(0.8, 1.2);
        for (int p = 0; p < 3; ++p) b.z(p, p) = z_base * rng.uniform(0.95, 1.05);
        if (coupling == Coupling::full)
            for (int r = 0; r < 3; ++r)
                for (int c = r + 1; c < 3; ++c) b.z(r, c) = b.z(c, r) = 0.3 * z_base * rng.uniform(0.8, 1.2);
        f.branches.push_back(b);
    }

    for (int node = 1; node < n_nodes; ++node) {
        if (children[static_cast<std::size_t>(node)] != 0) continue;  // loads at leaves only
        Load load;
        load.node = node;
        load.connection = Connection::wye;
        for (auto& s : load.s) {
            const double mag = 0.01 * rng.uniform(0.3, 1.0);
            const double angle = rng.uniform(0.1, 0.5);
            s = Complex{mag * std::cos(angle), mag * std::sin(angle)};
        }
        f.loads.push_back(load);
    }
    return f;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
    if (cfg.n_nodes < 2 || cfg.trials < 1)
        throw std::invalid_argument("run_benchmark: need n_nodes >= 2 and trials >= 1");

    const FeederModel f = generate_radial(cfg.n_nodes, cfg.seed, cfg.coupling);
    const DenseAdmittance dense = build(f);
    const std::vector<Complex> flat = flatten(dense);
    const SparseAdmittance sparse = compress(dense);

    const int n = cfg.n_nodes;
    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    PhaseField v(n);
    std::vector<Complex> v_flat(3 * static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < 3; ++j) {
            const Complex val{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            v.at(j, m) = val;
            v_flat[3 * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] = val;
        }

    using clock = std::chrono::steady_clock;
    auto seconds = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double>(b - a).count();
    };

    // warm-up trial, discarded
    (void)flat_matvec(flat, v_flat);
    (void)apply_sparse(sparse, v);

    std::vector<double> t_dense, t_sparse;
    t_dense.reserve(static_cast<std::size_t>(cfg.trials));
    t_sparse.reserve(static_cast<std::size_t>(cfg.trials));
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const auto d0 = clock::now();
        const std::vector<Complex> out_dense = flat_matvec(flat, v_flat);
        const auto d1 = clock::now();
        const PhaseField out_sparse = apply_sparse(sparse, v);
        const auto d2 = clock::now();
        t_dense.push_back(seconds(d0, d1));
        t_sparse.push_back(seconds(d1, d2));

        double scale = 0.0, diff = 0.0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < 3; ++i) {
                const Complex& d =
                    out_dense[3 * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)];
                scale = std::max(scale, std::abs(d));
                diff = std::max(diff, std::abs(d - out_sparse.at(i, k)));
            }
        if (diff > 1e-12 * std::max(1.0, scale))
            throw Error("run_benchmark: sparse and dense products disagree (" +
                        std::to_string(diff) + ")");
    }

    BenchReport r;
    r.n_nodes = n;
    r.p_offdiag = sparse.p_offdiag();
    r.t_dense_matvec = median(t_dense);
    r.t_sparse_apply = median(t_sparse);
    r.speedup = r.t_dense_matvec / r.t_sparse_apply;
    r.mem_dense = 9 * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
    r.mem_sparse = memory_positions(sparse);
    r.mem_ratio = static_cast<double>(r.mem_sparse) / static_cast<double>(r.mem_dense);
    return r;
}

std::string format_table(const BenchReport& r) {
    const int n = r.n_nodes;
    const auto p = r.p_offdiag;
    std::ostringstream os;
    auto row = [&os](const std::string& a, const std::string& b, const std::string& c) {
        os << std::left << std::setw(22) << a << std::setw(22) << b << c << "\n";
    };
    auto secs = [](double t) {
        std::ostringstream s;
        s << std::scientific << std::setprecision(3) << t << " s";
        return s.str();
    };
    const std::string dim3n = std::to_string(3 * n);
    row("parameter", "Y_bus (matrix)", "y_ijkm (sparse)");
    row("elapsed time", secs(r.t_dense_matvec), secs(r.t_sparse_apply));
    row("array size", dim3n + "x" + dim3n, "3x3x" + std::to_string(n) + "x" + std::to_string(n));
    row("memory positions", std::to_string(r.mem_dense), std::to_string(r.mem_sparse));
    os << "\nspeedup: " << std::fixed << std::setprecision(1) << r.speedup
       << "x    memory ratio: " << std::setprecision(4) << r.mem_ratio << "\n";
    os << "structure members: M " << p << "x2, D 3x" << n << ", F 1x" << p << ", C 3x" << n
       << ", E 3x" << n << "\n";
    return os.str();
}

}  // namespace gridflow
