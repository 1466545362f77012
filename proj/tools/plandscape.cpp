#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "plandscape/config.hpp"
#include "plandscape/errors.hpp"
#include "plandscape/io.hpp"

namespace {

using namespace plandscape;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
};

std::uint64_t parse_env_seed(const char* text) {
    std::uint64_t value = 0;
    const char* end = text + std::string_view(text).size();
    const auto res = std::from_chars(text, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ValidationError("PLANDSCAPE_SEED: not an unsigned integer: " +
                              std::string(text));
    }
    return value;
}

// Seed priority: --seed flag, then the PLANDSCAPE_SEED environment variable,
// then the config file's base_seed.
ExperimentConfig resolve_config(const CommonOpts& opts) {
    ExperimentConfig cfg =
        opts.config_path.empty() ? baseline_config() : load_config(opts.config_path);
    if (opts.seed) {
        cfg.base_seed = *opts.seed;
    } else if (const char* env = std::getenv("PLANDSCAPE_SEED")) {
        cfg.base_seed = parse_env_seed(env);
    }
    if (opts.workers) cfg.workers = *opts.workers;
    cfg.validate();
    return cfg;
}

using NamedFile = std::pair<std::string, std::string>;

// Data files first, manifest last so its hash list covers everything.
void emit(const CommonOpts& opts, const std::string& command, const ExperimentConfig& cfg,
          const std::string& started, const std::vector<NamedFile>& files) {
    const std::filesystem::path out_dir(opts.out_dir);
    std::vector<ManifestEntry> entries;
    entries.reserve(files.size());
    for (const auto& [name, content] : files) {
        write_file(out_dir / name, content);
        entries.push_back(ManifestEntry{name, content.size(), fnv1a64(content)});
    }
    write_file(out_dir / "manifest.json",
               render_manifest(command, cfg, entries, started, utc_timestamp()));
}

AxisSpec parse_axis(const std::string& text, const char* flag) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
        throw ValidationError(std::string(flag) + ": expected name=v1,v2,... (got \"" +
                              text + "\")");
    }
    AxisSpec axis;
    axis.name = text.substr(0, eq);
    std::size_t pos = eq + 1;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto stop = comma == std::string::npos ? text.size() : comma;
        const std::string token = text.substr(pos, stop - pos);
        double value = 0.0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || res.ec != std::errc{} ||
            res.ptr != token.data() + token.size()) {
            throw ValidationError(std::string(flag) + ": bad numeric value \"" + token +
                                  "\"");
        }
        axis.values.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return axis;
}

int cmd_generate(const CommonOpts& opts, const std::string& command) {
    const std::string started = utc_timestamp();
    const ExperimentConfig cfg = resolve_config(opts);
    RngStream rng(cfg.base_seed, stream_id_for(0, kNetworkRole));
    const InteractionMatrix matrix = build_network(cfg.network, rng);
    emit(opts, command, cfg, started,
         {{"edges.csv", render_edges_csv(matrix)},
          {"matrix.csv", render_matrix_csv(matrix)}});
    return 0;
}

int cmd_climb(const CommonOpts& opts, const std::string& command) {
    const std::string started = utc_timestamp();
    const ExperimentConfig cfg = resolve_config(opts);
    const SimArtifacts sim = run_simulation_full(cfg, 0);
    emit(opts, command, cfg, started,
         {{"trajectory.csv", render_trajectory_csv(sim.trajectory)}});
    return sim.trajectory.converged ? 0 : 3;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<double>& budgets,
              const std::string& command) {
    const std::string started = utc_timestamp();
    const ExperimentConfig cfg = resolve_config(opts);
    const auto points = budget_sweep(cfg, budgets);
    emit(opts, command, cfg, started,
         {{"results.csv", render_sweep_results_csv(points)},
          {"summary.csv", render_sweep_summary_csv(points)}});
    for (const auto& point : points) {
        for (const auto& sim : point.ensemble.per_sim) {
            if (!sim.converged) return 3;
        }
    }
    return 0;
}

int cmd_grid(const CommonOpts& opts, const std::string& axis1_text,
             const std::string& axis2_text, bool fix_rho, const std::string& command) {
    const std::string started = utc_timestamp();
    const ExperimentConfig cfg = resolve_config(opts);
    const AxisSpec axis1 = parse_axis(axis1_text, "--axis1");
    const AxisSpec axis2 = parse_axis(axis2_text, "--axis2");
    const GridResult grid = sensitivity_grid(cfg, axis1, axis2, fix_rho);
    emit(opts, command, cfg, started,
         {{"results.csv", render_grid_results_csv(grid)},
          {"summary.csv", render_grid_summary_csv(grid)}});
    for (const auto& cell : grid.cells) {
        for (const auto& sim : cell.ensemble.per_sim) {
            if (!sim.converged) return 3;
        }
    }
    return 0;
}

int cmd_landscape(const CommonOpts& opts, const std::string& command) {
    const std::string started = utc_timestamp();
    const ExperimentConfig cfg = resolve_config(opts);
    RngStream net_rng(cfg.base_seed, stream_id_for(0, kNetworkRole));
    RngStream weight_rng(cfg.base_seed, stream_id_for(0, kWeightsRole));
    const InteractionMatrix matrix = build_network(cfg.network, net_rng);
    const ImportanceWeights weights = sample_weights(
        cfg.network.n_targets, cfg.weights.mu_w, cfg.weights.beta_w, weight_rng);
    const auto rows = enumerate_landscape(matrix, weights, cfg.params, cfg.budget);
    emit(opts, command, cfg, started, {{"landscape.csv", render_landscape_csv(rows)}});
    return 0;
}

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "Config file (JSON)");
    sub->add_option("--seed", opts.seed, "Base seed (overrides config and PLANDSCAPE_SEED)");
    sub->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--workers", opts.workers, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Policy-target network landscapes: generation, greedy climbs, ensembles"};
    app.require_subcommand(1);

    std::string command;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) command += ' ';
        command += argv[i];
    }

    CommonOpts generate_opts;
    auto* generate = app.add_subcommand("generate", "Draw one network and export it");
    add_common(generate, generate_opts);

    CommonOpts climb_opts;
    auto* climb_cmd = app.add_subcommand("climb", "Run one greedy climb and export the trajectory");
    add_common(climb_cmd, climb_opts);

    CommonOpts sweep_opts;
    std::vector<double> budgets;
    auto* sweep = app.add_subcommand("sweep", "Ensembles across a list of total budgets");
    add_common(sweep, sweep_opts);
    sweep->add_option("--budgets", budgets, "Comma-separated budget values, ascending")
        ->required()
        ->delimiter(',');

    CommonOpts grid_opts;
    std::string axis1_text;
    std::string axis2_text;
    bool fix_rho = false;
    auto* grid = app.add_subcommand("grid", "Ensembles across a two-parameter grid");
    add_common(grid, grid_opts);
    grid->add_option("--axis1", axis1_text, "First axis as name=v1,v2,...")->required();
    grid->add_option("--axis2", axis2_text, "Second axis as name=v1,v2,...")->required();
    grid->add_flag("--fix-rho", fix_rho,
                   "Rescale mu_k so edge density tracks the base config when M changes");

    CommonOpts landscape_opts;
    auto* landscape = app.add_subcommand("landscape", "Enumerate every policy array (small N)");
    add_common(landscape, landscape_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return cmd_generate(generate_opts, command);
        if (climb_cmd->parsed()) return cmd_climb(climb_opts, command);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, budgets, command);
        if (grid->parsed()) return cmd_grid(grid_opts, axis1_text, axis2_text, fix_rho, command);
        if (landscape->parsed()) return cmd_landscape(landscape_opts, command);
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
