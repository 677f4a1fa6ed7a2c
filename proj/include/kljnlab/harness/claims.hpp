#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "kljnlab/exec.hpp"
#include "kljnlab/harness/output.hpp"
#include "kljnlab/seed.hpp"

namespace kljnlab::harness {

enum class Comparison {
    Within,   // |measured - expected| <= tolerance
    AtMost,   // measured <= expected + tolerance
    AtLeast,  // measured >= expected - tolerance
};

struct ClaimResult {
    std::string claim_id;  // "<group>.<check>", e.g. "attack75.accuracy"
    std::string anchor;    // the claim in words
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::Within;
    bool pass = false;

    /// Recomputes `pass` from the other fields.
    void evaluate();
};

/// Groups of checks, one per reproducible claim. Ids are stable.
struct ClaimGroup {
    std::string id;
    std::string description;
    std::chrono::seconds budget;  // wall-clock limit for the group
};

const std::vector<ClaimGroup>& claim_groups();

struct ClaimsOptions {
    Seed seed = 20250101;
    Execution exec{};
    /// Replaces every tolerance when set.
    std::optional<double> tolerance_override;
    /// Group ids or full claim ids to run; empty runs everything.
    std::vector<std::string> only;
};

struct GroupReport {
    ClaimGroup group;
    std::vector<ClaimResult> results;
    double seconds = 0.0;
    bool within_budget = true;

    bool pass() const noexcept;
};

/// Runs the selected claim groups at their full acceptance sizes.
/// Throws std::invalid_argument if `only` names no known group or claim.
std::vector<GroupReport> claims_check(const ClaimsOptions& options);

/// One row per claim: claim_id, anchor, measured, expected, tolerance,
/// comparison, pass.
Table claims_table(const std::vector<GroupReport>& reports);

std::size_t failed_count(const std::vector<GroupReport>& reports);

std::string to_string(Comparison c);

}  // namespace kljnlab::harness
