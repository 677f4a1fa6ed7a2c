// Acceptance suite: one line per criterion, each group at full size and
// checked against its wall-clock limit. Exit status is the number of
// failing criteria.

#include <cstdio>
#include <string>
#include <vector>

#include "kljnlab/exec.hpp"
#include "kljnlab/harness/claims.hpp"
#include "kljnlab/harness/output.hpp"

using namespace kljnlab;
using namespace kljnlab::harness;

int main() {
    struct Criterion {
        int number;
        const char* group;
        const char* title;
    };
    const std::vector<Criterion> criteria{
        {1, "mixed_indistinguishable", "mixed-state indistinguishability"},
        {2, "attack75", "75% passive attack"},
        {3, "leakage256", "256-bit leakage"},
        {4, "pa_convergence", "PA convergence"},
        {5, "pa_monte_carlo", "PA Monte Carlo"},
        {6, "power_formula", "power formula"},
        {7, "ber_behavior", "BER behavior"},
        {8, "thermod_insecurity", "TherMod insecurity"},
        {9, "determinism", "determinism"},
    };

    std::printf("OpenMP: %s\n", openmp_enabled() ? "on" : "off");
    int failed = 0;
    for (const auto& c : criteria) {
        ClaimsOptions options;
        options.only = {c.group};
        GroupReport rep;
        std::string error;
        try {
            rep = claims_check(options).at(0);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const bool pass = error.empty() && rep.pass();
        failed += pass ? 0 : 1;
        std::printf("[%s] %d. %-34s %7.2f s (limit %lld s)\n", pass ? "PASS" : "FAIL", c.number, c.title,
                    rep.seconds, static_cast<long long>(rep.group.budget.count()));
        if (!error.empty()) {
            std::printf("       error: %s\n", error.c_str());
        }
        for (const auto& r : rep.results) {
            std::printf("       %s %-44s measured=%s expected=%s %s tol=%s\n", r.pass ? "ok  " : "FAIL",
                        r.claim_id.c_str(), format_double(r.measured).c_str(), format_double(r.expected).c_str(),
                        to_string(r.comparison).c_str(), format_double(r.tolerance).c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
