#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fglab/io/json_io.hpp"

namespace fglab::selftest {

struct Options {
    std::uint64_t seed = 42;
    /// Empty runs everything; otherwise a module name ("fgl", "koszul", ..)
    /// or a substring of a criterion name.
    std::string filter;
    /// Directory holding selftest.json with the expected values.
    std::string golden_dir;
    /// pi-adic working precision of the Lubin-Tate fields.
    int field_precision = 48;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string module;
    bool passed = false;
    io::json detail;
};

struct CriterionInfo {
    int id;
    const char* name;
    const char* module;
};
const std::vector<CriterionInfo>& criteria();

bool selected(const CriterionInfo& c, const std::string& filter);

/// Runs the selected criteria in id order. Criterion failures are results,
/// never exceptions.
std::vector<CriterionResult> run(const Options& opt);
CriterionResult run_one(int id, const Options& opt);

/// Byte-stable report: {"seed", "criteria":[...], "passed"}.
io::json report(const std::vector<CriterionResult>& results, std::uint64_t seed);

std::string default_golden_dir();

/// Seeded draws that do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t next() { return g_(); }
    /// Uniform-enough integer in [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Int below(const Int& n);

private:
    std::mt19937_64 g_;
};

}  // namespace fglab::selftest
