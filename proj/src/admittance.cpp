#include "gridflow/admittance.hpp"

#include <string>

#include "gridflow/errors.hpp"

namespace gridflow {

Mat3 invert3(const Mat3& z) {
    if (!is_invertible(z)) throw SingularMatrixError("singular 3x3 matrix");
    const Complex d = det(z);
    Mat3 g;
    // adjugate: transposed cofactors
    g(0, 0) = (z(1, 1) * z(2, 2) - z(1, 2) * z(2, 1)) / d;
    g(0, 1) = (z(0, 2) * z(2, 1) - z(0, 1) * z(2, 2)) / d;
    g(0, 2) = (z(0, 1) * z(1, 2) - z(0, 2) * z(1, 1)) / d;
    g(1, 0) = (z(1, 2) * z(2, 0) - z(1, 0) * z(2, 2)) / d;
    g(1, 1) = (z(0, 0) * z(2, 2) - z(0, 2) * z(2, 0)) / d;
    g(1, 2) = (z(0, 2) * z(1, 0) - z(0, 0) * z(1, 2)) / d;
    g(2, 0) = (z(1, 0) * z(2, 1) - z(1, 1) * z(2, 0)) / d;
    g(2, 1) = (z(0, 1) * z(2, 0) - z(0, 0) * z(2, 1)) / d;
    g(2, 2) = (z(0, 0) * z(1, 1) - z(0, 1) * z(1, 0)) / d;
    return g;
}

DenseAdmittance build(const FeederModel& f) {
    DenseAdmittance y(f.n_nodes);
    for (std::size_t e = 0; e < f.branches.size(); ++e) {
        const Branch& b = f.branches[e];
        Mat3 g;
        try {
            g = invert3(b.z);
        } catch (const SingularMatrixError&) {
            throw SingularMatrixError("branches[" + std::to_string(e) +
                                      "]: singular series impedance");
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                y.at(i, j, b.from, b.from) += g(i, j) + b.b_from(i, j);
                y.at(i, j, b.from, b.to) -= g(i, j);
                y.at(i, j, b.to, b.from) -= g(i, j);
                y.at(i, j, b.to, b.to) += g(i, j) + b.b_to(i, j);
            }
    }
    return y;
}

PhaseField apply_dense(const DenseAdmittance& y, const PhaseField& v) {
    if (v.n_nodes() != y.n_nodes)
        throw ShapeError("apply_dense: voltage field has " + std::to_string(v.n_nodes()) +
                         " nodes, tensor has " + std::to_string(y.n_nodes));
    const int n = y.n_nodes;
    PhaseField out(n);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < n; ++k) {
            Complex acc{};
            for (int j = 0; j < 3; ++j)
                for (int m = 0; m < n; ++m) acc += y.at(i, j, k, m) * v.at(j, m);
            out.at(i, k) = acc;
        }
    return out;
}

double check_minor_symmetry(const DenseAdmittance& y) {
    const int n = y.n_nodes;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    worst = std::max(worst, std::abs(y.at(i, j, k, m) - y.at(j, i, k, m)));
                    worst = std::max(worst, std::abs(y.at(i, j, k, m) - y.at(i, j, m, k)));
                }
    return worst;
}

std::vector<DominanceRow> check_diagonal_dominance(const DenseAdmittance& y) {
    const int n = y.n_nodes;
    std::vector<DominanceRow> out(3 * static_cast<std::size_t>(n));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < n; ++k) {
            DominanceRow row;
            row.diag_mag = std::abs(y.at(i, i, k, k));
            Complex row_sum{};
            for (int j = 0; j < 3; ++j)
                for (int m = 0; m < n; ++m) {
                    const Complex& e = y.at(i, j, k, m);
                    row_sum += e;
                    if (j != i || m != k) row.offdiag_sum += std::abs(e);
                }
            row.row_sum_mag = std::abs(row_sum);
            out[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(k)] = row;
        }
    return out;
}

std::vector<Complex> flatten(const DenseAdmittance& y) {
    const auto n = static_cast<std::size_t>(y.n_nodes);
    std::vector<Complex> flat(9 * n * n);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < y.n_nodes; ++k)
                for (int m = 0; m < y.n_nodes; ++m)
                    flat[(3 * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)) * 3 * n +
                         3 * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
                        y.at(i, j, k, m);
    return flat;
}

}  // namespace gridflow
