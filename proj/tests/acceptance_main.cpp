// Acceptance harness: runs every acceptance criterion at its pinned
// tolerance and prints one pass/fail line per criterion.

#include <cstdlib>
#include <iostream>

#include "gcf/verify.hpp"

int main() {
    const char* env = std::getenv("GCF_LAB_OUT");
    std::string out = env && *env ? env : "acceptance_out";
    try {
        auto results = gcf::verify::run_suite("core", out, std::cout);
        bool all = true;
        for (const auto& r : results) all = all && r.pass;
        std::cout << (all ? "acceptance: all criteria passed"
                          : "acceptance: CRITERIA FAILED")
                  << "\n";
        return all ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance: error: " << e.what() << "\n";
        return 1;
    }
}
