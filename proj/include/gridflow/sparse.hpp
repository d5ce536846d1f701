#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gridflow/admittance.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

/// Compressed storage of the admittance tensor, split as y = D + F:
/// the scalar diagonal D[i][k] = y_iikk plus all off-diagonal non-zeros F
/// with their (j,m) coordinates M and per-row [C,E) index ranges. A "row"
/// is one (i,k) pair; rows are laid out node-major (k, then i). E is
/// exclusive, so an empty row has C == E.
struct SparseAdmittance {
    int n_nodes = 0;
    std::vector<Complex> diag;                       // D, 3xN, [i*N + k]
    std::vector<Complex> values;                     // F, length P
    std::vector<std::array<std::int32_t, 2>> coords; // M, P x (j, m)
    std::vector<std::int32_t> row_begin;             // C, 3xN, [i*N + k]
    std::vector<std::int32_t> row_end;               // E, 3xN, exclusive

    std::int64_t p_offdiag() const { return static_cast<std::int64_t>(values.size()); }
};

/// Extract {D,F,M,C,E} from the dense tensor. Entries with magnitude
/// <= drop_tol are dropped; the default keeps every non-zero, so
/// decompress(compress(y)) == y bit-exactly.
SparseAdmittance compress(const DenseAdmittance& y, double drop_tol = 0.0);

/// Sparse contraction: i[i][k] = D[i][k]*v[i][k] + sum_p F[p]*v[j_p][m_p]
/// over the row's [C,E) range. Equals apply_dense on the decompressed tensor.
PhaseField apply_sparse(const SparseAdmittance& y, const PhaseField& v);

/// The F-loop only (no D term): the off-diagonal half of apply_sparse.
PhaseField apply_offdiagonal(const SparseAdmittance& y, const PhaseField& v);

/// Scatter back to a dense tensor. Throws CorruptStructureError on
/// duplicate or diagonal coordinates within a row, or out-of-range coords.
DenseAdmittance decompress(const SparseAdmittance& y);

/// Storage accounting with complex values counted as one position each:
/// 2P (M) + P (F) + 3*3N (D, C, E) = 3P + 9N.
std::int64_t memory_positions(const SparseAdmittance& y);

}  // namespace gridflow
