#include <doctest.h>

#include <cmath>
#include <set>

#include "gridflow/bench.hpp"
#include "gridflow/model.hpp"
#include "gridflow/sparse.hpp"

using namespace gridflow;

TEST_CASE("generate_radial basics") {
    SUBCASE("two nodes make one branch") {
        const FeederModel f = generate_radial(2, 1, Coupling::full);
        CHECK(f.n_nodes == 2);
        CHECK(f.branches.size() == 1);
        CHECK(validate_feeder(f).empty());
    }
    SUBCASE("the same seed reproduces the same feeder exactly") {
        const FeederModel a = generate_radial(40, 77, Coupling::full);
        const FeederModel b = generate_radial(40, 77, Coupling::full);
        REQUIRE(a.branches.size() == b.branches.size());
        for (std::size_t e = 0; e < a.branches.size(); ++e) {
            CHECK(a.branches[e].from == b.branches[e].from);
            CHECK(a.branches[e].to == b.branches[e].to);
            CHECK(a.branches[e].z == b.branches[e].z);
        }
        REQUIRE(a.loads.size() == b.loads.size());
        for (std::size_t l = 0; l < a.loads.size(); ++l) CHECK(a.loads[l].s == b.loads[l].s);
    }
    SUBCASE("n_nodes below 2 is rejected") {
        CHECK_THROWS_AS(generate_radial(1, 1, Coupling::full), std::invalid_argument);
    }
}

TEST_CASE("generate_radial feeders are radial, valid and lightly loaded") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const FeederModel f = generate_radial(25, seed, Coupling::full);
        CHECK(f.branches.size() == 24);  // tree
        CHECK(validate_feeder(f).empty());
        std::set<int> parents;
        for (const Branch& b : f.branches) parents.insert(b.from);
        for (const Load& load : f.loads) {
            CHECK(parents.count(load.node) == 0);  // leaves only
            CHECK(load.connection == Connection::wye);
            for (const Complex& s : load.s) CHECK(std::abs(s) <= 0.01);
        }
        for (const Branch& b : f.branches) {
            for (int r = 0; r < 3; ++r)
                for (int c = r + 1; c < 3; ++c) CHECK(b.z(r, c) == b.z(c, r));  // symmetric
            CHECK(max_abs(b.b_from) == 0.0);
            CHECK(max_abs(b.b_to) == 0.0);
        }
    }
}

TEST_CASE("off-diagonal counts of the synthetic 119-node feeders") {
    // full coupling: every branch contributes 18 entries across its two
    // off-diagonal blocks, every node 6 phase couplings in its own block
    const FeederModel full = generate_radial(119, 5, Coupling::full);
    const SparseAdmittance yf = compress(build(full));
    CHECK(yf.p_offdiag() == 2 * 118 * 9 + 119 * 6);  // 2838
    // diagonal coupling: 3 entries per block, nothing in the node blocks
    const FeederModel diag = generate_radial(119, 5, Coupling::diagonal);
    const SparseAdmittance yd = compress(build(diag));
    CHECK(yd.p_offdiag() == 2 * 118 * 3);  // 708
}

TEST_CASE("run_benchmark reports consistent figures") {
    BenchConfig cfg;
    cfg.n_nodes = 30;
    cfg.trials = 5;
    cfg.seed = 9;
    const BenchReport r = run_benchmark(cfg);
    CHECK(r.n_nodes == 30);
    CHECK(r.t_dense_matvec > 0.0);
    CHECK(r.t_sparse_apply > 0.0);
    CHECK(r.speedup == doctest::Approx(r.t_dense_matvec / r.t_sparse_apply));
    CHECK(r.mem_dense == 9 * 30 * 30);
    CHECK(r.mem_sparse == 3 * r.p_offdiag + 9 * 30);
    CHECK(r.mem_ratio ==
          doctest::Approx(static_cast<double>(r.mem_sparse) / static_cast<double>(r.mem_dense)));
}

TEST_CASE("run_benchmark at the published scale reproduces the dense count") {
    BenchConfig cfg;
    cfg.n_nodes = 119;
    cfg.trials = 3;
    cfg.seed = 7;
    const BenchReport r = run_benchmark(cfg);
    CHECK(r.mem_dense == 127449);  // 357 x 357
    const std::string table = format_table(r);
    CHECK(table.find("127449") != std::string::npos);
    CHECK(table.find("357x357") != std::string::npos);
    CHECK(table.find("3x3x119x119") != std::string::npos);
}
