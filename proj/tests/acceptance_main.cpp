// Acceptance suite: runs every criterion and prints one PASS/FAIL line each.
#include <cstdio>

#include "witt/selftest.hpp"

int main(int argc, char** argv) {
    std::string only = argc > 1 ? argv[1] : "";
    int failures = 0;
    double total_ms = 0;
    for (const auto& item : witt::acceptance_items()) {
        if (!only.empty() && item.category != only) continue;
        auto out = witt::run_acceptance_item(item);
        total_ms += out.ms;
        std::printf("%s  %2d  %-62s [%7.0f ms]%s%s\n", out.pass ? "PASS" : "FAIL", item.id, item.name.c_str(), out.ms,
                    out.detail.empty() ? "" : "  ", out.detail.c_str());
        if (!out.pass) ++failures;
    }
    std::printf("%s: %d criterion(s) failed, %.1f s total\n", failures ? "FAILURE" : "SUCCESS", failures,
                total_ms / 1000.0);
    return failures ? 1 : 0;
}
