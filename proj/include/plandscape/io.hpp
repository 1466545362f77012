#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "plandscape/experiments.hpp"

namespace plandscape {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Edge list, one row per edge, ids 1-based, grouped by policy then target.
std::string render_edges_csv(const InteractionMatrix& matrix);

// Dense coefficient matrix, M rows by N columns, no header.
std::string render_matrix_csv(const InteractionMatrix& matrix);

std::string render_trajectory_csv(const Trajectory& trajectory);

std::string render_landscape_csv(const std::vector<LandscapeRow>& rows);

// Long format: one row per (sweep point, simulation).
std::string render_sweep_results_csv(const std::vector<SweepPoint>& points);
std::string render_sweep_summary_csv(const std::vector<SweepPoint>& points);

// Grid outputs carry the axis parameter names as their first two columns.
std::string render_grid_results_csv(const GridResult& grid);
std::string render_grid_summary_csv(const GridResult& grid);

// Creates parent directories as needed; throws IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& bytes);

// UTC wall-clock time, or the SOURCE_DATE_EPOCH override when that standard
// reproducible-build variable is set.
std::string utc_timestamp();

struct ManifestEntry {
    std::string name;
    std::size_t bytes = 0;
    std::uint64_t hash = 0;
};

// JSON sidecar carrying everything needed to reproduce the emitted files:
// the command line, the resolved config (including the seed), the generator
// family and stream layout, and content hashes of each output.
std::string render_manifest(const std::string& command, const ExperimentConfig& config,
                            const std::vector<ManifestEntry>& outputs,
                            const std::string& started, const std::string& finished);

}  // namespace plandscape
