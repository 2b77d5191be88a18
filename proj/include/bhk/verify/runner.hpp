#pragma once

#include "bhk/verify/document.hpp"
#include "bhk/verify/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bhk::verify {

/// Process exit codes.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitSchema = 2, kExitDomain = 3, kExitInvariant = 4 };

struct RunOptions {
    Tolerances tol;
    int samples = 256;
    std::uint64_t seed = 1;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TaskReport {
    std::string id;
    std::string op;
    std::string status;  ///< pass, fail, schema-error, domain-error, invariant-violation
    nlohmann::ordered_json exact = nlohmann::ordered_json::object();
    std::vector<Residual> numeric;
    std::vector<Check> checks;
    std::vector<std::string> provenance;
    std::string error;

    int exit_code() const;
};

struct RunReport {
    std::vector<TaskReport> tasks;

    int exit_code() const;
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

/// Runs every task in dependency order. Exceptions inside a task are caught
/// and recorded in that task's report; later tasks still run.
RunReport run_document(const SymbolDocument& doc, const RunOptions& opts = {});

/// Deterministic rendering helpers shared with the CLI.
nlohmann::ordered_json render(const RatMat& m);
nlohmann::ordered_json render(const MatrixInner& theta);
std::string format_residual(const Residual& r);

} // namespace bhk::verify
