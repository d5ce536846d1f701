#pragma once

#include <cstdint>
#include <string>

#include "gridflow/model.hpp"

namespace gridflow {

enum class Coupling { full, diagonal };

struct BenchConfig {
    int n_nodes = 119;
    int trials = 50;
    std::uint64_t seed = 1;
    Coupling coupling = Coupling::full;
};

struct BenchReport {
    int n_nodes = 0;
    std::int64_t p_offdiag = 0;
    double t_dense_matvec = 0.0;  // median seconds, flat 3N x 3N product
    double t_sparse_apply = 0.0;  // median seconds, compressed product
    double speedup = 0.0;
    std::int64_t mem_dense = 0;   // 9 N^2
    std::int64_t mem_sparse = 0;  // 3P + 9N
    double mem_ratio = 0.0;
};

/// Random radial (tree) feeder rooted at slack 0: symmetric diagonally
/// dominant 3x3 series impedances (self around 0.01+0.04j p.u., mutuals
/// around 30% of self when coupling=full), no shunts, light wye loads at
/// the leaf nodes. Deterministic for a fixed seed.
FeederModel generate_radial(int n_nodes, std::uint64_t seed, Coupling coupling);

/// Time the dense flat 3N x 3N matrix-vector product against apply_sparse
/// on the same random voltages: median over cfg.trials after one warm-up,
/// with a correctness cross-check on every trial (aborts on mismatch).
BenchReport run_benchmark(const BenchConfig& cfg);

/// Aligned two-column text table: elapsed times, array sizes, memory
/// positions, plus the member shapes of the compressed structure.
std::string format_table(const BenchReport& r);

}  // namespace gridflow
