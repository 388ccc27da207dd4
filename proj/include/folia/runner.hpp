#pragma once

#include "folia/models.hpp"
#include "folia/qch.hpp"
#include "folia/report.hpp"

namespace folia {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class Suite { Calculus, Kahler, Foliation, Qch, Theorem9 };

std::vector<std::string> suite_names();
Suite parse_suite(const std::string& name);  // throws std::invalid_argument

struct RunOptions {
    std::vector<Suite> suites;
    int samples = 200;
    unsigned seed = 42;
    double tol_algebraic = 1e-8;
    double tol_derived = 1e-6;
    G2Variant g2_variant = G2Variant::Symmetric;
    HConvention h_convention = HConvention::E;
    int threads = 0;  // 0: FOLIA_THREADS, else hardware concurrency
};

/// Exit code contract: 0 all requested checks consistent, 1 counterexample
/// to an audited equivalence, 2 configuration/scene error (including
/// non-Kahler scenes when a theorem suite is requested), 3 numerical
/// failure (singular metric inside the region, or jet domain errors on
/// more than 10% of the samples).
struct RunResult {
    Json report;
    std::vector<CsvRow> rows;
    int exit_code = 0;
};

RunResult run(const Scene& scene, const RunOptions& options);

int effective_thread_count(int requested);

}  // namespace folia
