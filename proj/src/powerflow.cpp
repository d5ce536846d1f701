#include "gridflow/powerflow.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gridflow/errors.hpp"

namespace gridflow {

PhaseField line_to_line_voltages(const PhaseField& v) {
    const int n = v.n_nodes();
    PhaseField out(n);
    for (int m = 0; m < n; ++m) {
        out.at(0, m) = v.at(0, m) - v.at(1, m);
        out.at(1, m) = v.at(1, m) - v.at(2, m);
        out.at(2, m) = v.at(2, m) - v.at(0, m);
    }
    return out;
}

PhaseField delta_to_line_currents(const PhaseField& i_delta) {
    const int n = i_delta.n_nodes();
    PhaseField out(n);
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < 3; ++j) {
            Complex acc{};
            for (int i = 0; i < 3; ++i)
                acc += line_transform[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                       i_delta.at(i, m);
            out.at(j, m) = acc;
        }
    return out;
}

namespace {

Complex constant_power_current(const Complex& s, const Complex& v, const char* what, int node) {
    if (s == Complex{}) return {};
    if (std::abs(v) < undervoltage_limit)
        throw UndervoltageError(std::string(what) + " voltage magnitude below " +
                                std::to_string(undervoltage_limit) + " at node " +
                                std::to_string(node));
    return std::conj(s / v);
}

}  // namespace

Vec3 load_injection(const Load& load, const PhaseField& v) {
    Vec3 out{};
    if (load.connection == Connection::wye) {
        for (int j = 0; j < 3; ++j)
            out[static_cast<std::size_t>(j)] = constant_power_current(
                load.s[static_cast<std::size_t>(j)], v.at(j, load.node), "phase", load.node);
        return out;
    }
    // delta: per-leg currents against line-to-line voltages, mapped back
    const Vec3 vll{v.at(0, load.node) - v.at(1, load.node),
                   v.at(1, load.node) - v.at(2, load.node),
                   v.at(2, load.node) - v.at(0, load.node)};
    Vec3 leg{};
    for (std::size_t l = 0; l < 3; ++l)
        leg[l] = constant_power_current(load.s[l], vll[l], "line-to-line", load.node);
    for (int j = 0; j < 3; ++j) {
        Complex acc{};
        for (int i = 0; i < 3; ++i)
            acc += line_transform[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   leg[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

StepResult fixed_point_step(const SparseAdmittance& y, const PhaseField& v,
                            const FeederModel& f) {
    const int n = y.n_nodes;
    if (v.n_nodes() != n || f.n_nodes != n)
        throw ShapeError("fixed_point_step: feeder, structure and voltages disagree on N");

    PhaseField inj(n);
    for (const Load& load : f.loads) {
        const Vec3 draw = load_injection(load, v);
        for (int i = 0; i < 3; ++i) inj.at(i, load.node) -= draw[static_cast<std::size_t>(i)];
    }
    const PhaseField fv = apply_offdiagonal(y, v);

    StepResult out{PhaseField(n), 0.0};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < n; ++k) {
            if (k == f.slack) {
                out.v_next.at(i, k) = v.at(i, k);
                continue;
            }
            const Complex d =
                y.diag[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(k)];
            if (d == Complex{})
                throw ZeroDiagonalError("zero diagonal admittance at phase " + std::to_string(i) +
                                        ", node " + std::to_string(k));
            out.v_next.at(i, k) = (inj.at(i, k) - fv.at(i, k)) / d;
            out.residual = std::max(out.residual, std::abs(out.v_next.at(i, k) - v.at(i, k)));
        }
    return out;
}

SolveReport solve(const SparseAdmittance& y, const FeederModel& f, const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
    if (opts.max_iter < 1) throw std::invalid_argument("solve: max_iter must be at least 1");

    SolveReport report;
    report.v = PhaseField(f.n_nodes);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < f.n_nodes; ++k)
            report.v.at(i, k) = f.slack_voltage[static_cast<std::size_t>(i)];  // flat start

    report.status = SolveStatus::max_iterations;
    for (int it = 1; it <= opts.max_iter; ++it) {
        StepResult step;
        try {
            step = fixed_point_step(y, report.v, f);
        } catch (const UndervoltageError&) {
            report.status = SolveStatus::diverged;  // voltage collapse mid-sweep
            break;
        }
        report.v = std::move(step.v_next);
        report.residual_trace.push_back(step.residual);
        report.iterations = it;
        if (step.residual <= opts.tol) {
            report.converged = true;
            report.status = SolveStatus::converged;
            break;
        }
        bool runaway = false;
        for (int i = 0; i < 3 && !runaway; ++i)
            for (int k = 0; k < f.n_nodes; ++k)
                if (std::abs(report.v.at(i, k)) > opts.divergence_limit) {
                    runaway = true;
                    break;
                }
        if (runaway) {
            report.status = SolveStatus::diverged;
            break;
        }
    }

    report.i = apply_sparse(y, report.v);
    report.losses = compute_losses(report.v, report.i);
    return report;
}

Complex compute_losses(const PhaseField& v, const PhaseField& i) {
    if (v.n_nodes() != i.n_nodes())
        throw ShapeError("compute_losses: voltage and current fields disagree on N");
    Complex acc{};
    for (int p = 0; p < 3; ++p)
        for (int k = 0; k < v.n_nodes(); ++k) acc += std::conj(v.at(p, k)) * i.at(p, k);
    return std::conj(acc);
}

}  // namespace gridflow
