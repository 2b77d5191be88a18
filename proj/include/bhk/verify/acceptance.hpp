#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bhk::verify {

struct CriterionResult {
    int number = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

inline constexpr int kCriterionCount = 10;
inline constexpr std::uint64_t kAcceptanceSeed = 20240611;

/// Runs one acceptance criterion (1..10). Never throws; exceptions become failures.
CriterionResult run_criterion(int number, std::uint64_t seed = kAcceptanceSeed);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kAcceptanceSeed);

/// "[PASS] 3 title: detail"
std::string format_criterion(const CriterionResult& r);

} // namespace bhk::verify
