#include "gridflow/json_io.hpp"

#include <nlohmann/json.hpp>

namespace gridflow {

using nlohmann::json;

namespace {
json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }
}  // namespace

json to_json(const PhaseField& v) {
    json out = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int k = 0; k < v.n_nodes(); ++k) row.push_back(complex_json(v.at(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

json to_json(const DenseAdmittance& y) {
    json out = json::array();
    for (int i = 0; i < 3; ++i) {
        json ji = json::array();
        for (int j = 0; j < 3; ++j) {
            json jj = json::array();
            for (int k = 0; k < y.n_nodes; ++k) {
                json jk = json::array();
                for (int m = 0; m < y.n_nodes; ++m) jk.push_back(complex_json(y.at(i, j, k, m)));
                jj.push_back(std::move(jk));
            }
            ji.push_back(std::move(jj));
        }
        out.push_back(std::move(ji));
    }
    return out;
}

json to_json(const SparseAdmittance& y) {
    const auto n = static_cast<std::size_t>(y.n_nodes);
    json out;
    out["n_nodes"] = y.n_nodes;
    auto shaped = [&n](auto&& get) {
        json rows = json::array();
        for (std::size_t i = 0; i < 3; ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < n; ++k) row.push_back(get(i * n + k));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    out["D"] = shaped([&y](std::size_t r) { return complex_json(y.diag[r]); });
    out["C"] = shaped([&y](std::size_t r) { return json(y.row_begin[r]); });
    out["E"] = shaped([&y](std::size_t r) { return json(y.row_end[r]); });
    json f = json::array();
    for (const auto& e : y.values) f.push_back(complex_json(e));
    out["F"] = std::move(f);
    json m = json::array();
    for (const auto& jm : y.coords) m.push_back(json::array({jm[0], jm[1]}));
    out["M"] = std::move(m);
    return out;
}

json to_json(const SolveReport& r) {
    json out;
    out["converged"] = r.converged;
    switch (r.status) {
        case SolveStatus::converged: out["status"] = "converged"; break;
        case SolveStatus::max_iterations: out["status"] = "max_iterations"; break;
        case SolveStatus::diverged: out["status"] = "diverged"; break;
    }
    out["iterations"] = r.iterations;
    out["losses"] = complex_json(r.losses);
    out["v"] = to_json(r.v);
    out["residual_trace"] = r.residual_trace;
    return out;
}

json to_json(const BenchReport& r) {
    json out;
    out["n_nodes"] = r.n_nodes;
    out["p_offdiag"] = r.p_offdiag;
    out["t_dense_matvec"] = r.t_dense_matvec;
    out["t_sparse_apply"] = r.t_sparse_apply;
    out["speedup"] = r.speedup;
    out["mem_dense"] = r.mem_dense;
    out["mem_sparse"] = r.mem_sparse;
    out["mem_ratio"] = r.mem_ratio;
    return out;
}

}  // namespace gridflow
