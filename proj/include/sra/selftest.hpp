#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sra/json_io.hpp"

namespace sra {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> details;  // one line per case

    void fail(const std::string& line) {
        passed = false;
        details.push_back("FAIL " + line);
    }
    void ok(const std::string& line) { details.push_back("pass " + line); }
    void note(const std::string& line) { details.push_back("note " + line); }
};

struct SelftestOptions {
    std::uint64_t seed = 12345;
    // Overrides the built-in deformation catalog (suites 4 and 5).
    std::optional<std::vector<DeformJob>> catalog;
};

std::vector<DeformJob> builtin_catalog();

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts = {});

}  // namespace sra
