#include "plandscape/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "plandscape/config.hpp"
#include "plandscape/errors.hpp"

namespace plandscape {
namespace {

void append_int(std::string& out, long long v) { out += std::to_string(v); }

std::string join_levels(const PolicyArray& x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0) out += ',';
        append_int(out, x[i]);
    }
    return out;
}

std::string level_header(std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += ',';
        out += "x_" + std::to_string(i + 1);
    }
    return out;
}

void append_sim_rows(std::string& out, const std::string& prefix,
                     const std::vector<SimResult>& per_sim) {
    for (const auto& r : per_sim) {
        out += prefix;
        append_int(out, r.sim_index);
        out += ',';
        out += format_double(r.final_performance);
        out += ',';
        append_int(out, r.steps);
        out += ',';
        append_int(out, r.final_cost);
        out += ',';
        out += r.converged ? '1' : '0';
        out += '\n';
    }
}

void append_quartile_row(std::string& out, const std::string& prefix, const Quartiles& q) {
    out += prefix;
    out += format_double(q.q25);
    out += ',';
    out += format_double(q.median);
    out += ',';
    out += format_double(q.q75);
    out += '\n';
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string render_edges_csv(const InteractionMatrix& matrix) {
    std::string out = "policy_id,target_id,coefficient\n";
    for (int i = 0; i < matrix.n_policies(); ++i) {
        for (const int j : matrix.column_targets(i)) {
            append_int(out, i + 1);
            out += ',';
            append_int(out, j + 1);
            out += ',';
            out += format_double(matrix.coefficient(j, i));
            out += '\n';
        }
    }
    return out;
}

std::string render_matrix_csv(const InteractionMatrix& matrix) {
    std::string out;
    for (int j = 0; j < matrix.n_targets(); ++j) {
        const auto row = matrix.row(j);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_trajectory_csv(const Trajectory& trajectory) {
    if (trajectory.states.empty()) throw ValidationError("trajectory has no states");
    std::string out = "step," + level_header(trajectory.states[0].size()) + ",cost,F\n";
    for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
        append_int(out, static_cast<long long>(t));
        out += ',';
        out += join_levels(trajectory.states[t]);
        out += ',';
        append_int(out, cost(trajectory.states[t]));
        out += ',';
        out += format_double(trajectory.performances[t]);
        out += '\n';
    }
    return out;
}

std::string render_landscape_csv(const std::vector<LandscapeRow>& rows) {
    if (rows.empty()) throw ValidationError("landscape has no rows");
    std::string out = level_header(rows[0].x.size()) + ",cost,F,is_feasible,is_local_optimum\n";
    for (const auto& row : rows) {
        out += join_levels(row.x);
        out += ',';
        append_int(out, row.cost);
        out += ',';
        out += format_double(row.performance);
        out += ',';
        out += row.feasible ? '1' : '0';
        out += ',';
        out += row.local_optimum ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string render_sweep_results_csv(const std::vector<SweepPoint>& points) {
    std::string out = "B_T,sim_index,final_F,steps,final_cost,converged\n";
    for (const auto& p : points) {
        append_sim_rows(out, format_double(p.budget) + ",", p.ensemble.per_sim);
    }
    return out;
}

std::string render_sweep_summary_csv(const std::vector<SweepPoint>& points) {
    std::string out = "B_T,q25,median,q75\n";
    for (const auto& p : points) {
        append_quartile_row(out, format_double(p.budget) + ",", p.ensemble.performance);
    }
    return out;
}

std::string render_grid_results_csv(const GridResult& grid) {
    std::string out =
        grid.axis1.name + "," + grid.axis2.name + ",sim_index,final_F,steps,final_cost,converged\n";
    for (const auto& cell : grid.cells) {
        append_sim_rows(out, format_double(cell.value1) + "," + format_double(cell.value2) + ",",
                        cell.ensemble.per_sim);
    }
    return out;
}

std::string render_grid_summary_csv(const GridResult& grid) {
    std::string out = grid.axis1.name + "," + grid.axis2.name + ",q25,median,q75\n";
    for (const auto& cell : grid.cells) {
        append_quartile_row(out,
                            format_double(cell.value1) + "," + format_double(cell.value2) + ",",
                            cell.ensemble.performance);
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    const auto parent = path.parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent, ec);
        if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(epoch, &end, 10);
        if (end != epoch && end != nullptr && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string render_manifest(const std::string& command, const ExperimentConfig& config,
                            const std::vector<ManifestEntry>& outputs,
                            const std::string& started, const std::string& finished) {
    nlohmann::ordered_json doc;
    doc["artifact"] = "plandscape";
    doc["version"] = "0.1.0";
    doc["command"] = command;
    doc["rng"]["family"] = RngStream::family();
    doc["rng"]["stream_layout"] =
        "stream_id = 4 * sim + role; roles: 0 network, 1 weights, 2 initial";
    doc["conventions"]["quantiles"] =
        "linear interpolation between order statistics at rank (n - 1) * q";
    doc["conventions"]["pairing"] =
        "sweep points share per-simulation streams; grid cells that change N or M "
        "rebuild the dimension-dependent draws";
    doc["config"] = nlohmann::ordered_json::parse(config_to_json(config));
    doc["started"] = started;
    doc["finished"] = finished;
    auto& files = doc["outputs"] = nlohmann::ordered_json::array();
    for (const auto& entry : outputs) {
        nlohmann::ordered_json item;
        item["name"] = entry.name;
        item["bytes"] = entry.bytes;
        item["fnv1a64"] = hex16(entry.hash);
        files.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

}  // namespace plandscape
