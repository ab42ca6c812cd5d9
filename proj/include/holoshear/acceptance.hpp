#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holoshear {

struct AcceptanceConfig {
    std::uint64_t seed = 7;
    int pentagon_samples = 100;
    int relation_samples = 100;
    int constraint_samples = 50;
    int poisson_samples = 25;
    int goldman_samples = 50;
    int cocycle_samples = 50;
    int trace_samples = 25;
    // uniform tolerance override for experiments; criteria keep their
    // documented defaults when unset
    std::optional<double> tol_override;
};

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    double residual = 0;       // worst residual observed (0/1 for exact checks)
    double tol = 0;            // tolerance actually applied
    double default_tol = 0;    // documented tolerance
    std::string failure_kind;  // empty, "tolerance" or "logic"
    std::string detail;
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    std::uint64_t seed = 0;
    bool all_pass() const;
};

AcceptanceReport run_acceptance(const AcceptanceConfig& cfg);

// one line per criterion, "[PASS]/[FAIL] k. name residual<=tol"
std::string format_acceptance_lines(const AcceptanceReport& rep);
std::string acceptance_report_json(const AcceptanceReport& rep);

} // namespace holoshear
