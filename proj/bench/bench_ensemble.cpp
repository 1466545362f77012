// Times the ensemble kernel against the serial reference loop and checks that
// both produce the same per-simulation results bit for bit.

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "plandscape/experiments.hpp"

using namespace plandscape;

namespace {

double time_seconds(const ExperimentConfig& cfg, bool serial, EnsembleResult& out) {
    const auto start = std::chrono::steady_clock::now();
    out = serial ? run_ensemble_serial(cfg) : run_ensemble(cfg);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

bool identical(const EnsembleResult& a, const EnsembleResult& b) {
    if (a.per_sim.size() != b.per_sim.size()) return false;
    for (std::size_t s = 0; s < a.per_sim.size(); ++s) {
        const SimResult& x = a.per_sim[s];
        const SimResult& y = b.per_sim[s];
        if (std::bit_cast<std::uint64_t>(x.final_performance) !=
                std::bit_cast<std::uint64_t>(y.final_performance) ||
            x.steps != y.steps || x.final_cost != y.final_cost || x.converged != y.converged) {
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    ExperimentConfig cfg;
    cfg.network.n_policies = 60;
    cfg.network.n_targets = 30;
    cfg.budget.total_budget = 180.0;
    cfg.n_sims = 200;
    cfg.base_seed = 17;
    if (argc > 1) cfg.n_sims = std::atoi(argv[1]);

    std::cout << "ensemble of " << cfg.n_sims << " climbs, N=" << cfg.network.n_policies
              << ", M=" << cfg.network.n_targets << ", B_T=" << cfg.budget.total_budget
              << "\n\n";
    std::cout << std::left << std::setw(16) << "variant" << std::right << std::setw(12)
              << "seconds" << std::setw(12) << "speedup" << std::setw(12) << "median"
              << "\n";

    EnsembleResult reference;
    const double serial_s = time_seconds(cfg, true, reference);
    std::cout << std::left << std::setw(16) << "serial" << std::right << std::fixed
              << std::setprecision(3) << std::setw(12) << serial_s << std::setw(12) << 1.0
              << std::setprecision(4) << std::setw(12) << reference.performance.median
              << "\n";

    bool all_match = true;
    for (const int workers : {1, 2, 4, 8}) {
        cfg.workers = workers;
        EnsembleResult result;
        const double parallel_s = time_seconds(cfg, false, result);
        const bool match = identical(reference, result);
        all_match = all_match && match;
        std::cout << std::left << std::setw(16) << ("openmp x" + std::to_string(workers))
                  << std::right << std::setprecision(3) << std::setw(12) << parallel_s
                  << std::setw(12) << serial_s / parallel_s << std::setprecision(4)
                  << std::setw(12) << result.performance.median
                  << (match ? "" : "   MISMATCH") << "\n";
    }

    if (!all_match) {
        std::cout << "\nparallel results diverged from the serial reference\n";
        return 1;
    }
    std::cout << "\nall worker counts matched the serial reference bit for bit\n";
    return 0;
}
