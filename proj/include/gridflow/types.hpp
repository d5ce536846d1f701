#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

namespace gridflow {

using Complex = std::complex<double>;
using Vec3 = std::array<Complex, 3>;

/// 3x3 complex matrix, row-major. Holds series impedances and shunt
/// admittances of one line section.
struct Mat3 {
    std::array<Complex, 9> m{};

    Complex& operator()(int r, int c) {
        assert(r >= 0 && r < 3 && c >= 0 && c < 3);
        return m[static_cast<std::size_t>(r) * 3 + static_cast<std::size_t>(c)];
    }
    const Complex& operator()(int r, int c) const {
        assert(r >= 0 && r < 3 && c >= 0 && c < 3);
        return m[static_cast<std::size_t>(r) * 3 + static_cast<std::size_t>(c)];
    }

    static Mat3 zero() { return Mat3{}; }
    static Mat3 identity() {
        Mat3 out;
        out(0, 0) = out(1, 1) = out(2, 2) = Complex{1.0, 0.0};
        return out;
    }
    static Mat3 diagonal(Complex a, Complex b, Complex c) {
        Mat3 out;
        out(0, 0) = a;
        out(1, 1) = b;
        out(2, 2) = c;
        return out;
    }

    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 out;
        for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] + b.m[i];
        return out;
    }
    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 out;
        for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] - b.m[i];
        return out;
    }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
        return out;
    }
    friend Vec3 operator*(const Mat3& a, const Vec3& x) {
        Vec3 out;
        for (int r = 0; r < 3; ++r)
            out[static_cast<std::size_t>(r)] = a(r, 0) * x[0] + a(r, 1) * x[1] + a(r, 2) * x[2];
        return out;
    }
    friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }
};

inline Complex det(const Mat3& z) {
    return z(0, 0) * (z(1, 1) * z(2, 2) - z(1, 2) * z(2, 1)) -
           z(0, 1) * (z(1, 0) * z(2, 2) - z(1, 2) * z(2, 0)) +
           z(0, 2) * (z(1, 0) * z(2, 1) - z(1, 1) * z(2, 0));
}

inline double max_abs(const Mat3& z) {
    double out = 0.0;
    for (const auto& e : z.m) out = std::max(out, std::abs(e));
    return out;
}

/// Scale-invariant invertibility guard: |det z| must exceed
/// 1e-12 times the cube of the largest entry magnitude.
inline bool is_invertible(const Mat3& z) {
    const double scale = max_abs(z);
    return std::abs(det(z)) > 1e-12 * scale * scale * scale;
}

/// Rank-2 complex hypermatrix (3 x N): nodal voltages v_{jm} or
/// currents i_{ik}, indexed [phase][node]. Immutable by convention
/// once filled; shape is fixed at construction.
class PhaseField {
  public:
    PhaseField() = default;
    explicit PhaseField(int n_nodes)
        : n_nodes_(n_nodes), values_(3 * static_cast<std::size_t>(n_nodes)) {}

    int n_nodes() const { return n_nodes_; }

    Complex& at(int phase, int node) {
        assert(phase >= 0 && phase < 3 && node >= 0 && node < n_nodes_);
        return values_[static_cast<std::size_t>(phase) * static_cast<std::size_t>(n_nodes_) +
                       static_cast<std::size_t>(node)];
    }
    const Complex& at(int phase, int node) const {
        return const_cast<PhaseField*>(this)->at(phase, node);
    }

    const std::vector<Complex>& values() const { return values_; }

    friend bool operator==(const PhaseField& a, const PhaseField& b) {
        return a.n_nodes_ == b.n_nodes_ && a.values_ == b.values_;
    }

  private:
    int n_nodes_ = 0;
    std::vector<Complex> values_;
};

inline double max_abs_diff(const PhaseField& a, const PhaseField& b) {
    assert(a.n_nodes() == b.n_nodes());
    double out = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < a.n_nodes(); ++k) out = std::max(out, std::abs(a.at(i, k) - b.at(i, k)));
    return out;
}

}  // namespace gridflow
