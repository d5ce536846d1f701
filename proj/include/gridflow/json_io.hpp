#pragma once

#include <nlohmann/json_fwd.hpp>

#include "gridflow/admittance.hpp"
#include "gridflow/bench.hpp"
#include "gridflow/powerflow.hpp"
#include "gridflow/sparse.hpp"

// JSON views of the result types. Complex numbers are [re, im] pairs
// throughout, matching the feeder file format.

namespace gridflow {

nlohmann::json to_json(const PhaseField& v);
nlohmann::json to_json(const DenseAdmittance& y);   // 4-D nested [i][j][k][m]
nlohmann::json to_json(const SparseAdmittance& y);  // {n_nodes, D, F, M, C, E}
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const BenchReport& r);

}  // namespace gridflow
