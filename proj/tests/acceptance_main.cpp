// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance [--quick] [--sieve-limit N]

#include <cstdio>
#include <cstring>
#include <exception>

#include "muzeta/acceptance.hpp"

int main(int argc, char** argv) {
    muzeta::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
        if (std::strcmp(argv[i], "--sieve-limit") == 0 && i + 1 < argc)
            opt.sieve_limit = std::atoll(argv[++i]);
    }
    try {
        const auto results = muzeta::run_acceptance(opt);
        bool all = true;
        for (const auto& r : results) {
            std::printf("%s  %-2s %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                        r.name.c_str());
            if (!r.detail.empty()) std::printf("      %s\n", r.detail.c_str());
            all = all && r.pass;
        }
        std::printf("%s\n", all ? "acceptance: all criteria passed"
                                : "acceptance: FAILURES PRESENT");
        return all ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: aborted: %s\n", e.what());
        return 2;
    }
}
