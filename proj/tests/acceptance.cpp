// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gridflow/admittance.hpp"
#include "gridflow/bench.hpp"
#include "gridflow/powerflow.hpp"
#include "gridflow/sparse.hpp"
#include "support/oracles.hpp"
#include "support/test_feeders.hpp"

using namespace gridflow;
using gridflow::testing::TestRng;

namespace {

struct Criterion {
    std::string name;
    std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

template <typename T>
std::string str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- criteria

void memory_accounting(std::ostringstream& detail) {
    const FeederModel f = testing::reference_feeder_119();
    const SparseAdmittance y = compress(build(f));
    require(y.n_nodes == 119, "N != 119");
    require(y.p_offdiag() == 1586, "P = " + str(y.p_offdiag()) + ", expected 1586");
    require(y.coords.size() == 1586, "M shape");
    require(y.values.size() == 1586, "F shape");
    require(y.diag.size() == 3 * 119, "D shape");
    require(y.row_begin.size() == 3 * 119, "C shape");
    require(y.row_end.size() == 3 * 119, "E shape");
    require(memory_positions(y) == 5829, "memory positions " + str(memory_positions(y)));
    const std::int64_t dense = 9LL * 119 * 119;
    require(dense == 127449, "dense positions");
    require(static_cast<double>(memory_positions(y)) / static_cast<double>(dense) <= 0.05,
            "sparse/dense memory ratio above 5%");
    detail << "P=1586, sparse=5829, dense=127449, ratio="
           << static_cast<double>(memory_positions(y)) / static_cast<double>(dense);
}

void oracle_equivalence(std::ostringstream& detail) {
    double worst_product = 0.0, worst_stamp = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        testing::RandomFeederOptions opts;
        opts.n_nodes = 2 + static_cast<int>(trial % 19);
        opts.extra_chords = static_cast<int>(trial % 3);
        opts.with_shunts = trial % 5 == 0;
        const FeederModel f = testing::random_feeder(trial, opts);
        const DenseAdmittance dense = build(f);
        const SparseAdmittance sparse = compress(dense);

        TestRng rng(trial + 1000);
        PhaseField v(f.n_nodes);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < f.n_nodes; ++k)
                v.at(i, k) = Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)};

        const PhaseField a = apply_dense(dense, v);
        const PhaseField b = apply_sparse(sparse, v);
        double scale = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < f.n_nodes; ++k) scale = std::max(scale, std::abs(a.at(i, k)));
        const double rel = max_abs_diff(a, b) / std::max(1.0, scale);
        worst_product = std::max(worst_product, rel);
        require(rel <= 1e-12, "sparse/dense product mismatch " + str(rel));

        const auto flat = flatten(dense);
        const auto oracle = testing::stamp_flat_ybus(f);
        for (std::size_t idx = 0; idx < flat.size(); ++idx) {
            const double diff = std::abs(flat[idx] - oracle[idx]);
            worst_stamp = std::max(worst_stamp, diff);
            require(diff <= 1e-14, "Y_BUS stamping mismatch " + str(diff));
        }
    }
    detail << "100 feeders; worst product rel err " << worst_product << ", worst stamp err "
           << worst_stamp;
}

void speedup(std::ostringstream& detail) {
    BenchConfig cfg;
    cfg.n_nodes = 119;
    cfg.trials = 51;
    cfg.seed = 7;
    const BenchReport r = run_benchmark(cfg);
    require(r.t_sparse_apply <= r.t_dense_matvec / 5.0,
            "speedup " + str(r.speedup) + "x below 5x");
    detail << "dense " << r.t_dense_matvec << " s, sparse " << r.t_sparse_apply << " s, "
           << r.speedup << "x";
}

void symmetry_suite(std::ostringstream& detail) {
    double worst_sym = 0.0, worst_row = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        testing::RandomFeederOptions opts;
        opts.n_nodes = 2 + static_cast<int>(seed % 19);
        opts.with_shunts = seed % 2 == 1;  // symmetric shunts on half the feeders
        const FeederModel f = testing::random_feeder(seed, opts);
        const DenseAdmittance y = build(f);
        const double asym = check_minor_symmetry(y);
        worst_sym = std::max(worst_sym, asym);
        require(asym <= 1e-13, "minor symmetry violation " + str(asym));
        if (!opts.with_shunts) {
            for (const auto& row : check_diagonal_dominance(y)) {
                worst_row = std::max(worst_row, row.row_sum_mag);
                require(row.row_sum_mag <= 1e-13, "row sum " + str(row.row_sum_mag));
                require(row.diag_mag >= row.row_sum_mag, "dominance inequality violated");
            }
        }
    }
    detail << "50 feeders; worst asymmetry " << worst_sym << ", worst row sum " << worst_row;
}

void powerflow_correctness(std::ostringstream& detail) {
    // One run per fixture at a tight tolerance; the 200-iteration clause is
    // read off the residual trace at the 1e-8 crossing (the iterate sequence
    // does not depend on the stopping tolerance).
    const SolveOptions tight{1e-14, 4000, 10.0};
    int worst_iters = 0;
    double worst_newton = 0.0, worst_balance = 0.0;

    auto check_fixture = [&](const FeederModel& f, const std::string& label) {
        const SparseAdmittance y = compress(build(f));
        const SolveReport report = solve(y, f, tight);
        require(report.converged, label + ": no convergence");
        int crossing = 0;
        while (crossing < static_cast<int>(report.residual_trace.size()) &&
               report.residual_trace[static_cast<std::size_t>(crossing)] > 1e-8)
            ++crossing;
        ++crossing;  // iterations are 1-based
        require(crossing <= 200, label + ": " + str(crossing) + " iterations to 1e-8");
        worst_iters = std::max(worst_iters, crossing);

        const testing::NewtonResult newton = testing::newton_solve(f);
        require(newton.converged, label + ": Newton oracle did not converge");
        const double agree = max_abs_diff(report.v, newton.v);
        worst_newton = std::max(worst_newton, agree);
        require(agree <= 1e-8, label + ": Newton disagreement " + str(agree));

        Complex slack_injection{};
        for (int i = 0; i < 3; ++i)
            slack_injection += report.v.at(i, f.slack) * std::conj(report.i.at(i, f.slack));
        const Complex balance = slack_injection - testing::total_load_power(f);
        const double defect = std::abs(report.losses - balance);
        worst_balance = std::max(worst_balance, defect);
        require(defect <= 1e-10, label + ": power balance defect " + str(defect));
        require(report.losses.real() >= 0.0, label + ": negative real losses");
    };

    // closed-form scalar case
    {
        const Complex j_unit{0.0, 1.0};
        const Load load{1, Connection::wye, {Complex{0.1, 0.05}, {}, {}}};
        const FeederModel f =
            testing::two_node_feeder(Mat3::diagonal(j_unit, j_unit, j_unit), load);
        const SolveReport report = solve(compress(build(f)), f, tight);
        require(report.converged, "2-node: no convergence");
        const double b = 2.0 * std::real(j_unit * std::conj(load.s[0])) - std::norm(1.0);
        const double c = std::norm(j_unit) * std::norm(load.s[0]);
        const double u = (-b + std::sqrt(b * b - 4.0 * c)) / 2.0;
        const Complex expected = (u + std::conj(j_unit) * load.s[0]) / Complex{1.0, 0.0};
        require(std::abs(report.v.at(0, 1) - expected) <= 1e-12,
                "2-node closed form mismatch " + str(std::abs(report.v.at(0, 1) - expected)));
        check_fixture(f, "2-node");
    }
    // ten random light-load radial fixtures, N up to 30
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 4 + static_cast<int>((seed * 7) % 27);  // 4..30
        check_fixture(testing::solvable_radial(seed, n, 0.25), "fixture " + str(seed));
    }
    detail << "worst: " << worst_iters << " iters to 1e-8, Newton diff " << worst_newton
           << ", balance defect " << worst_balance;
}

void transform_identities(std::ostringstream& detail) {
    PhaseField equal(1), balanced(1), unit_leg(1);
    const Vec3 slack = FeederModel::balanced_slack_voltage();
    for (int i = 0; i < 3; ++i) {
        equal.at(i, 0) = Complex{0.8, -0.2};
        balanced.at(i, 0) = slack[static_cast<std::size_t>(i)];
        unit_leg.at(i, 0) = i == 0 ? Complex{1, 0} : Complex{};
    }

    const PhaseField zero = line_to_line_voltages(equal);
    for (int i = 0; i < 3; ++i) require(zero.at(i, 0) == Complex{}, "common mode not annihilated");

    const PhaseField ll = line_to_line_voltages(balanced);
    const double root3 = std::sqrt(3.0);
    for (int i = 0; i < 3; ++i)
        require(std::abs(std::abs(ll.at(i, 0)) - root3) <= 1e-14,
                "balanced line-to-line magnitude");
    require(std::abs(ll.at(0, 0) - std::polar(root3, M_PI / 6.0)) <= 1e-14,
            "balanced line-to-line angle");

    const PhaseField lc = delta_to_line_currents(unit_leg);
    require(lc.at(0, 0) == Complex{1, 0} && lc.at(1, 0) == Complex{-1, 0} &&
                lc.at(2, 0) == Complex{},
            "single-leg mapping");
    TestRng rng(3);
    PhaseField random_delta(5);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 5; ++k)
            random_delta.at(i, k) = Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const PhaseField lines = delta_to_line_currents(random_delta);
    for (int k = 0; k < 5; ++k)
        require(std::abs(lines.at(0, k) + lines.at(1, k) + lines.at(2, k)) <= 1e-14,
                "delta line currents do not sum to zero");
    detail << "all identities within 1e-14";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"memory accounting (N=119, P=1586)", memory_accounting},
        {"sparse/dense oracle equivalence", oracle_equivalence},
        {"sparse speedup >= 5x at N=119", speedup},
        {"symmetry and dominance suite", symmetry_suite},
        {"power-flow correctness vs Newton", powerflow_correctness},
        {"delta/wye transform identities", transform_identities},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream detail;
        std::string failure;
        try {
            criterion.body(detail);
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        if (failure.empty()) {
            line << "PASS  " << criterion.name << "  [" << elapsed << " s]";
            if (!detail.str().empty()) line << "  -- " << detail.str();
        } else {
            ++failures;
            line << "FAIL  " << criterion.name << "  [" << elapsed << " s]  -- " << failure;
        }
        std::cout << line.str() << "\n";
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}
