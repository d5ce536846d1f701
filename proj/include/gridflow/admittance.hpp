#pragma once

#include <vector>

#include "gridflow/model.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

/// Rank-4 complex admittance hypermatrix y[i][j][k][m] with phases i,j and
/// hyper-nodes k,m. Replaces the flat 3N x 3N nodal admittance matrix.
struct DenseAdmittance {
    int n_nodes = 0;
    std::vector<Complex> y;

    DenseAdmittance() = default;
    explicit DenseAdmittance(int n)
        : n_nodes(n), y(9 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    Complex& at(int i, int j, int k, int m) {
        const auto n = static_cast<std::size_t>(n_nodes);
        return y[((static_cast<std::size_t>(i) * 3 + static_cast<std::size_t>(j)) * n +
                  static_cast<std::size_t>(k)) *
                     n +
                 static_cast<std::size_t>(m)];
    }
    const Complex& at(int i, int j, int k, int m) const {
        return const_cast<DenseAdmittance*>(this)->at(i, j, k, m);
    }
};

/// Closed-form adjugate/determinant inverse of a 3x3 complex matrix.
/// Throws SingularMatrixError below the scale-invariant determinant guard.
Mat3 invert3(const Mat3& z);

/// Assemble the admittance tensor from the feeder: one pass over branches,
/// stamping g = invert3(z) into the four (k,m) blocks of each section.
DenseAdmittance build(const FeederModel& f);

/// Full contraction i[i][k] = sum_{j,m} y[i][j][k][m] * v[j][m].
PhaseField apply_dense(const DenseAdmittance& y, const PhaseField& v);

/// Largest violation of y_ijkm = y_jikm and y_ijkm = y_ijmk over all indices.
double check_minor_symmetry(const DenseAdmittance& y);

/// Per-(phase,node) dominance data: the classical pair (diagonal magnitude
/// vs. sum of off-diagonal magnitudes) and the row-sum magnitude
/// |sum_{j,m} y_ijkm| (the ones-vector contraction). Diagnostic only.
struct DominanceRow {
    double diag_mag = 0.0;
    double offdiag_sum = 0.0;
    double row_sum_mag = 0.0;
};

/// 3N entries indexed [i*N + k].
std::vector<DominanceRow> check_diagonal_dominance(const DenseAdmittance& y);

/// Reshape to the flat 3N x 3N matrix (row-major) with flat index 3k + i,
/// i.e. node-major blocks of three phases.
std::vector<Complex> flatten(const DenseAdmittance& y);

}  // namespace gridflow
