// Acceptance suite: one pass/fail line per criterion; exit status reflects
// the full matrix.
#include "grimglue/verify.hpp"

#include <cstdio>

int main() {
    grimglue::VerifyOptions options;
    const auto results = grimglue::run_acceptance(options);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s [%2d] %-34s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds);
        if (!r.passed) {
            all = false;
            std::printf("     detail: %s\n", r.detail.dump().c_str());
        }
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
