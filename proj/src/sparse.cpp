#include "gridflow/sparse.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "gridflow/errors.hpp"

namespace gridflow {

namespace {
std::size_t row_index(int i, int k, int n) {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k);
}
}  // namespace

SparseAdmittance compress(const DenseAdmittance& y, double drop_tol) {
    if (drop_tol < 0.0) throw std::invalid_argument("compress: drop_tol must be non-negative");
    const int n = y.n_nodes;
    SparseAdmittance out;
    out.n_nodes = n;
    out.diag.resize(3 * static_cast<std::size_t>(n));
    out.row_begin.resize(3 * static_cast<std::size_t>(n));
    out.row_end.resize(3 * static_cast<std::size_t>(n));
    // rows laid out node-major: k outer, i inner
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < 3; ++i) {
            const std::size_t r = row_index(i, k, n);
            out.diag[r] = y.at(i, i, k, k);
            out.row_begin[r] = static_cast<std::int32_t>(out.values.size());
            for (int m = 0; m < n; ++m)
                for (int j = 0; j < 3; ++j) {
                    if (j == i && m == k) continue;  // diagonal lives only in D
                    const Complex& e = y.at(i, j, k, m);
                    if (std::abs(e) > drop_tol) {
                        out.values.push_back(e);
                        out.coords.push_back(
                            {static_cast<std::int32_t>(j), static_cast<std::int32_t>(m)});
                    }
                }
            out.row_end[r] = static_cast<std::int32_t>(out.values.size());
        }
    return out;
}

PhaseField apply_sparse(const SparseAdmittance& y, const PhaseField& v) {
    if (v.n_nodes() != y.n_nodes)
        throw ShapeError("apply_sparse: voltage field has " + std::to_string(v.n_nodes()) +
                         " nodes, structure has " + std::to_string(y.n_nodes));
    const int n = y.n_nodes;
    PhaseField out(n);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < n; ++k) {
            const std::size_t r = row_index(i, k, n);
            Complex acc = y.diag[r] * v.at(i, k);
            for (std::int32_t p = y.row_begin[r]; p < y.row_end[r]; ++p) {
                const auto& jm = y.coords[static_cast<std::size_t>(p)];
                acc += y.values[static_cast<std::size_t>(p)] * v.at(jm[0], jm[1]);
            }
            out.at(i, k) = acc;
        }
    return out;
}

PhaseField apply_offdiagonal(const SparseAdmittance& y, const PhaseField& v) {
    if (v.n_nodes() != y.n_nodes)
        throw ShapeError("apply_offdiagonal: voltage field has " + std::to_string(v.n_nodes()) +
                         " nodes, structure has " + std::to_string(y.n_nodes));
    const int n = y.n_nodes;
    PhaseField out(n);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < n; ++k) {
            const std::size_t r = row_index(i, k, n);
            Complex acc{};
            for (std::int32_t p = y.row_begin[r]; p < y.row_end[r]; ++p) {
                const auto& jm = y.coords[static_cast<std::size_t>(p)];
                acc += y.values[static_cast<std::size_t>(p)] * v.at(jm[0], jm[1]);
            }
            out.at(i, k) = acc;
        }
    return out;
}

DenseAdmittance decompress(const SparseAdmittance& y) {
    const int n = y.n_nodes;
    DenseAdmittance out(n);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < n; ++k) out.at(i, i, k, k) = y.diag[row_index(i, k, n)];
    const auto total = static_cast<std::int32_t>(y.values.size());
    std::unordered_set<std::int64_t> seen;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < n; ++k) {
            const std::size_t r = row_index(i, k, n);
            if (y.row_begin[r] < 0 || y.row_end[r] > total || y.row_begin[r] > y.row_end[r])
                throw CorruptStructureError("row (" + std::to_string(i) + "," +
                                            std::to_string(k) + "): range [" +
                                            std::to_string(y.row_begin[r]) + "," +
                                            std::to_string(y.row_end[r]) + ") outside F");
            seen.clear();
            for (std::int32_t p = y.row_begin[r]; p < y.row_end[r]; ++p) {
                const auto& jm = y.coords[static_cast<std::size_t>(p)];
                const std::int32_t j = jm[0], m = jm[1];
                const std::string where =
                    "row (" + std::to_string(i) + "," + std::to_string(k) + ") entry " +
                    std::to_string(p);
                if (j < 0 || j >= 3 || m < 0 || m >= n)
                    throw CorruptStructureError(where + ": coordinates (" + std::to_string(j) +
                                                "," + std::to_string(m) + ") out of range");
                if (j == i && m == k)
                    throw CorruptStructureError(where + ": diagonal coordinates stored in F");
                if (!seen.insert(static_cast<std::int64_t>(j) * n + m).second)
                    throw CorruptStructureError(where + ": duplicate coordinates (" +
                                                std::to_string(j) + "," + std::to_string(m) + ")");
                out.at(i, j, k, m) = y.values[static_cast<std::size_t>(p)];
            }
        }
    return out;
}

std::int64_t memory_positions(const SparseAdmittance& y) {
    return 3 * y.p_offdiag() + 9 * static_cast<std::int64_t>(y.n_nodes);
}

}  // namespace gridflow
