#include "gridflow/model.hpp"

#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace gridflow {

using nlohmann::json;

Vec3 FeederModel::balanced_slack_voltage() {
    const double h = std::sqrt(3.0) / 2.0;
    return {Complex{1.0, 0.0}, Complex{-0.5, -h}, Complex{-0.5, h}};
}

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    throw SchemaError("schema error at " + path + ": " + what);
}

const json& require(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) schema_fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_fail(path + "." + key, "missing field");
    return *it;
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_fail(path, "expected an integer");
    return j.get<int>();
}

Complex get_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        schema_fail(path, "expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 get_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) schema_fail(path, "expected 3 complex entries");
    Vec3 out;
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = get_complex(j[i], path + "[" + std::to_string(i) + "]");
    return out;
}

Mat3 get_mat3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) schema_fail(path, "expected a 3x3 complex matrix");
    Mat3 out;
    for (int r = 0; r < 3; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        const std::string rpath = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != 3) schema_fail(rpath, "expected 3 complex entries");
        for (int c = 0; c < 3; ++c)
            out(r, c) = get_complex(row[static_cast<std::size_t>(c)],
                                    rpath + "[" + std::to_string(c) + "]");
    }
    return out;
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json vec3_json(const Vec3& v) {
    return json::array({complex_json(v[0]), complex_json(v[1]), complex_json(v[2])});
}

json mat3_json(const Mat3& m) {
    json out = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c) row.push_back(complex_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

bool symmetric(const Mat3& m) {
    return m(0, 1) == m(1, 0) && m(0, 2) == m(2, 0) && m(1, 2) == m(2, 1);
}

}  // namespace

FeederModel parse_feeder_unvalidated(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(std::string("JSON syntax error: ") + e.what());
    }
    if (!root.is_object()) schema_fail("$", "expected a top-level object");

    FeederModel f;
    f.n_nodes = get_int(require(root, "$", "n_nodes"), "$.n_nodes");
    f.slack = get_int(require(root, "$", "slack"), "$.slack");
    if (auto it = root.find("slack_voltage"); it != root.end())
        f.slack_voltage = get_vec3(*it, "$.slack_voltage");

    const json& branches = require(root, "$", "branches");
    if (!branches.is_array()) schema_fail("$.branches", "expected an array");
    for (std::size_t e = 0; e < branches.size(); ++e) {
        const std::string path = "$.branches[" + std::to_string(e) + "]";
        const json& jb = branches[e];
        Branch b;
        b.from = get_int(require(jb, path, "from"), path + ".from");
        b.to = get_int(require(jb, path, "to"), path + ".to");
        b.z = get_mat3(require(jb, path, "z"), path + ".z");
        b.b_from = get_mat3(require(jb, path, "b_from"), path + ".b_from");
        b.b_to = get_mat3(require(jb, path, "b_to"), path + ".b_to");
        f.branches.push_back(b);
    }

    if (auto it = root.find("loads"); it != root.end()) {
        if (!it->is_array()) schema_fail("$.loads", "expected an array");
        for (std::size_t l = 0; l < it->size(); ++l) {
            const std::string path = "$.loads[" + std::to_string(l) + "]";
            const json& jl = (*it)[l];
            Load load;
            load.node = get_int(require(jl, path, "node"), path + ".node");
            const json& conn = require(jl, path, "connection");
            if (!conn.is_string()) schema_fail(path + ".connection", "expected \"wye\" or \"delta\"");
            const std::string c = conn.get<std::string>();
            if (c == "wye")
                load.connection = Connection::wye;
            else if (c == "delta")
                load.connection = Connection::delta;
            else
                schema_fail(path + ".connection", "expected \"wye\" or \"delta\", got \"" + c + "\"");
            load.s = get_vec3(require(jl, path, "s"), path + ".s");
            f.loads.push_back(load);
        }
    }
    // "base" is informational only; ignored if present.
    return f;
}

FeederModel parse_feeder(std::string_view text) {
    FeederModel f = parse_feeder_unvalidated(text);
    const auto diags = validate_feeder(f);
    if (has_errors(diags)) {
        std::ostringstream msg;
        msg << "semantic error";
        for (const auto& d : diags)
            if (d.severity == Severity::error) msg << "; " << d.path << ": " << d.message;
        throw SemanticError(msg.str());
    }
    return f;
}

std::string serialize_feeder(const FeederModel& f) {
    json root;
    root["n_nodes"] = f.n_nodes;
    root["slack"] = f.slack;
    root["slack_voltage"] = vec3_json(f.slack_voltage);
    json branches = json::array();
    for (const auto& b : f.branches) {
        json jb;
        jb["from"] = b.from;
        jb["to"] = b.to;
        jb["z"] = mat3_json(b.z);
        jb["b_from"] = mat3_json(b.b_from);
        jb["b_to"] = mat3_json(b.b_to);
        branches.push_back(std::move(jb));
    }
    root["branches"] = std::move(branches);
    json loads = json::array();
    for (const auto& l : f.loads) {
        json jl;
        jl["node"] = l.node;
        jl["connection"] = l.connection == Connection::wye ? "wye" : "delta";
        jl["s"] = vec3_json(l.s);
        loads.push_back(std::move(jl));
    }
    root["loads"] = std::move(loads);
    return root.dump(2) + "\n";
}

std::vector<Diagnostic> validate_feeder(const FeederModel& f) {
    std::vector<Diagnostic> out;
    auto error = [&out](std::string path, std::string message) {
        out.push_back({Severity::error, std::move(path), std::move(message)});
    };
    auto warning = [&out](std::string path, std::string message) {
        out.push_back({Severity::warning, std::move(path), std::move(message)});
    };

    if (f.n_nodes < 2) error("n_nodes", "feeder needs at least 2 hyper-nodes");
    const bool slack_ok = f.slack >= 0 && f.slack < f.n_nodes;
    if (!slack_ok)
        error("slack", "slack node " + std::to_string(f.slack) + " out of range [0, " +
                           std::to_string(f.n_nodes) + ")");

    bool indices_ok = true;
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < f.branches.size(); ++e) {
        const auto& b = f.branches[e];
        const std::string path = "branches[" + std::to_string(e) + "]";
        bool range_ok = true;
        for (auto [v, name] : {std::pair{b.from, ".from"}, std::pair{b.to, ".to"}}) {
            if (v < 0 || v >= f.n_nodes) {
                error(path + name, "node " + std::to_string(v) + " out of range [0, " +
                                       std::to_string(f.n_nodes) + ")");
                range_ok = false;
            }
        }
        indices_ok = indices_ok && range_ok;
        if (b.from == b.to) {
            error(path, "branch joins node " + std::to_string(b.from) + " to itself");
            indices_ok = false;
        } else if (range_ok) {
            auto key = std::minmax(b.from, b.to);
            if (!seen.insert({key.first, key.second}).second)
                error(path, "duplicate branch between nodes " + std::to_string(key.first) +
                                " and " + std::to_string(key.second) +
                                " (parallel branches must be pre-merged)");
        }
        if (!is_invertible(b.z)) error(path + ".z", "singular series impedance");
        if (!symmetric(b.z)) warning(path + ".z", "non-symmetric series impedance");
    }

    for (std::size_t l = 0; l < f.loads.size(); ++l) {
        const auto& load = f.loads[l];
        const std::string path = "loads[" + std::to_string(l) + "]";
        if (load.node < 0 || load.node >= f.n_nodes)
            error(path + ".node", "node " + std::to_string(load.node) + " out of range [0, " +
                                      std::to_string(f.n_nodes) + ")");
        else if (slack_ok && load.node == f.slack)
            error(path + ".node", "load attached to the slack node");
    }

    // Connectivity over the hyper-node graph, only when indices are sane.
    if (slack_ok && indices_ok && f.n_nodes >= 2) {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(f.n_nodes));
        for (const auto& b : f.branches) {
            adj[static_cast<std::size_t>(b.from)].push_back(b.to);
            adj[static_cast<std::size_t>(b.to)].push_back(b.from);
        }
        std::vector<char> reached(static_cast<std::size_t>(f.n_nodes), 0);
        std::queue<int> q;
        q.push(f.slack);
        reached[static_cast<std::size_t>(f.slack)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(u)])
                if (!reached[static_cast<std::size_t>(w)]) {
                    reached[static_cast<std::size_t>(w)] = 1;
                    q.push(w);
                }
        }
        for (int k = 0; k < f.n_nodes; ++k)
            if (!reached[static_cast<std::size_t>(k)]) {
                error("branches", "graph is disconnected: node " + std::to_string(k) +
                                      " unreachable from slack " + std::to_string(f.slack));
                break;
            }
    }
    return out;
}

std::string to_string(const Diagnostic& d) {
    return std::string(d.severity == Severity::error ? "error" : "warning") + " at " + d.path +
           ": " + d.message;
}

}  // namespace gridflow
