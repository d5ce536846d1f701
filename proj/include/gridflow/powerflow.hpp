#pragma once

#include <array>
#include <vector>

#include "gridflow/model.hpp"
#include "gridflow/sparse.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

/// Phase-to-line basis change m[i][j] = d(v'_i)/d(v_j):
/// v'_1 = v1 - v2, v'_2 = v2 - v3, v'_3 = v3 - v1.
inline constexpr std::array<std::array<double, 3>, 3> line_transform{
    {{1.0, -1.0, 0.0}, {0.0, 1.0, -1.0}, {-1.0, 0.0, 1.0}}};

/// Voltage magnitudes below this are treated as collapsed when dividing
/// constant power by voltage.
inline constexpr double undervoltage_limit = 1e-6;

/// v'[i][m] = sum_j m[i][j] * v[j][m]: line-to-line from phase-to-neutral.
PhaseField line_to_line_voltages(const PhaseField& v);

/// Line currents from delta-leg currents: i[j][m] = sum_i m[i][j] * i'[i][m]
/// (contraction over the first index of the transform).
PhaseField delta_to_line_currents(const PhaseField& i_delta);

/// Current drawn by a constant-power load at its node (positive into the
/// load). Wye: conj(s_j / v_j) per phase; delta: per-leg conj(s/v') mapped
/// back to line currents. Throws UndervoltageError when a needed voltage
/// magnitude is below undervoltage_limit.
Vec3 load_injection(const Load& load, const PhaseField& v);

struct SolveOptions {
    double tol = 1e-8;              // max voltage change per sweep, p.u.
    int max_iter = 200;
    double divergence_limit = 10.0; // abort when any |v| exceeds this, p.u.
};

enum class SolveStatus { converged, max_iterations, diverged };

struct SolveReport {
    PhaseField v;       // converged (or last) voltages
    PhaseField i;       // nodal injected currents, apply_sparse(Y, v)
    Complex losses{};   // total apparent losses
    int iterations = 0;
    bool converged = false;
    SolveStatus status = SolveStatus::max_iterations;
    std::vector<double> residual_trace;
};

struct StepResult {
    PhaseField v_next;
    double residual = 0.0;
};

/// One Jacobi sweep of the D/F splitting: for every non-slack (i,k),
/// v_next = (i_inj - Fv) / D with i_inj the negated aggregate load draw
/// and Fv the off-diagonal product at the previous iterate. Slack rows are
/// copied unchanged. Residual is the max voltage change over non-slack rows.
/// Requires the slack phases of v to equal f.slack_voltage.
StepResult fixed_point_step(const SparseAdmittance& y, const PhaseField& v, const FeederModel& f);

/// Iterate fixed_point_step from a flat start until the residual drops to
/// opts.tol, max_iter sweeps elapse, or a voltage magnitude passes the
/// divergence limit (voltage collapse during a sweep counts as divergence).
/// Non-convergence is reported, not thrown.
SolveReport solve(const SparseAdmittance& y, const FeederModel& f, const SolveOptions& opts = {});

/// Total apparent losses s_L = conj( sum_{i,k} conj(v[i][k]) * i[i][k] ).
Complex compute_losses(const PhaseField& v, const PhaseField& i);

}  // namespace gridflow
