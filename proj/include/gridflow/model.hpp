#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridflow/errors.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

/// One line section in the pi model: series impedance z plus the shunt
/// admittance already lumped at each end (halving the total is the data
/// preparer's job, not ours).
struct Branch {
    int from = 0;
    int to = 0;
    Mat3 z;
    Mat3 b_from;
    Mat3 b_to;
};

enum class Connection { wye, delta };

/// Constant complex power load. For wye, s is per phase; for delta, s is
/// per leg ab/bc/ca.
struct Load {
    int node = 0;
    Connection connection = Connection::wye;
    Vec3 s{};
};

/// Grid description over hyper-nodes 0..n_nodes-1. All quantities per-unit.
struct FeederModel {
    int n_nodes = 0;
    int slack = 0;
    Vec3 slack_voltage = balanced_slack_voltage();
    std::vector<Branch> branches;
    std::vector<Load> loads;

    /// 1 p.u. positive-sequence set: 1@0, 1@-120, 1@+120 degrees.
    static Vec3 balanced_slack_voltage();
};

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string path;     // e.g. "branches[3].z"
    std::string message;
};

/// Parse the feeder JSON format (v1, 0-based indices). Throws SyntaxError,
/// SchemaError or SemanticError; the returned model satisfies every type
/// invariant.
FeederModel parse_feeder(std::string_view text);

/// Syntax and schema checks only; the result may violate semantic
/// invariants. Lets callers run validate_feeder for a full diagnostic list.
FeederModel parse_feeder_unvalidated(std::string_view text);

/// Inverse of parse_feeder; complex values round-trip bit-exactly.
std::string serialize_feeder(const FeederModel& f);

/// All invariant checks as a diagnostic list: empty iff the model is valid.
/// Singular series impedance is an error; non-symmetric z only a warning.
std::vector<Diagnostic> validate_feeder(const FeederModel& f);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::error) return true;
    return false;
}

std::string to_string(const Diagnostic& d);

}  // namespace gridflow
