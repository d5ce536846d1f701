#pragma once

#include <vector>

#include "gridflow/model.hpp"
#include "gridflow/types.hpp"

// Independent reference implementations used only to check the library:
// classical flat Y_BUS stamping, a dense Newton-Raphson power flow with a
// numerical Jacobian, and branch-wise power accounting. All linear algebra
// here goes through Eigen so none of the library kernels are reused.

namespace gridflow::testing {

/// Textbook 3N x 3N nodal admittance matrix (row-major, flat index 3k + i).
std::vector<Complex> stamp_flat_ybus(const FeederModel& f);

/// Reference matrix-vector product on the flat Y_BUS and a 3xN field.
PhaseField flat_ybus_times(const std::vector<Complex>& ybus, const PhaseField& v);

struct NewtonResult {
    PhaseField v;
    bool converged = false;
    int iterations = 0;
};

/// Dense Newton-Raphson on the complex nodal current mismatch equations,
/// finite-difference Jacobian, flat start.
NewtonResult newton_solve(const FeederModel& f, double tol = 1e-12, int max_iter = 60);

/// Sum over branches of dv . conj(z^-1 dv) plus the shunt power at both
/// ends: total complex power dissipated in the network elements at v.
Complex branchwise_losses(const FeederModel& f, const PhaseField& v);

/// Total constant-power demand: sum of every load's s entries.
Complex total_load_power(const FeederModel& f);

}  // namespace gridflow::testing
