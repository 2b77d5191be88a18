// Command-line front end: runs symbol documents and single operations.

#include "bhk/core/errors.hpp"
#include "bhk/verify/acceptance.hpp"
#include "bhk/verify/runner.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace bhk;
using namespace bhk::verify;
using nlohmann::json;

namespace {

struct Flags {
    double tolerance = 1e-8;
    int samples = 256;
    std::uint64_t seed = 1;
    std::string format = "text";
    bool strict = false;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

int emit(const RunReport& rep, const Flags& f) {
    if (f.format == "json") std::cout << rep.to_json().dump(2) << '\n';
    else std::cout << rep.to_text();
    return rep.exit_code();
}

int run_json(const json& doc, const Flags& f) {
    SymbolDocument d = SymbolDocument::parse(doc, ParseOptions{f.strict});
    RunOptions opts;
    opts.tol.identity = f.tolerance;
    opts.tol.rank_gap = f.tolerance;
    opts.samples = f.samples;
    opts.seed = f.seed;
    return emit(run_document(d, opts), f);
}

// Replaces the document's tasks with the given list and runs it.
int run_tasks(const std::string& path, json tasks, const Flags& f) {
    json doc = read_json(path);
    if (!doc.is_object()) throw SchemaError("document must be a JSON object");
    doc["tasks"] = std::move(tasks);
    return run_json(doc, f);
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hankel kernels, inner functions and shift-invariant subspaces over Q(i)"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--tolerance", f.tolerance, "numeric identity and rank threshold")->check(CLI::PositiveNumber);
    app.add_option("--samples", f.samples, "circle samples for numeric cross-checks")->check(CLI::PositiveNumber);
    app.add_option("--seed", f.seed, "seed for sampled circle points");
    app.add_option("--format", f.format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--strict", f.strict, "reject bare JSON numbers and unknown keys");

    std::string doc, symbol, compare, matrix, vector, op = "gcd";
    std::vector<std::string> names;
    bool symbols = false, conjugates = false;
    int criterion = 0;
    int code = 0;

    auto* run = app.add_subcommand("run", "run every task of a document");
    run->add_option("document", doc)->required()->check(CLI::ExistingFile);
    run->callback([&] { code = guarded([&] { return run_json(read_json(doc), f); }); });

    auto* kernel = app.add_subcommand("kernel", "Hankel kernel of a symbol");
    kernel->add_option("document", doc)->required()->check(CLI::ExistingFile);
    kernel->add_option("symbol", symbol)->required();
    kernel->add_option("--compare", compare, "inner function to compare against");
    kernel->callback([&] {
        json t{{"id", "kernel"}, {"op", "kernel"}, {"symbol", symbol}};
        if (!compare.empty()) t["compare"] = compare;
        code = guarded([&] { return run_tasks(doc, json::array({t}), f); });
    });

    auto* ind = app.add_subcommand("independency", "independency modulo the Nevanlinna class");
    ind->add_option("document", doc)->required()->check(CLI::ExistingFile);
    ind->add_option("symbol", symbol)->required();
    ind->callback([&] {
        code = guarded([&] { return run_tasks(doc, json::array({{{"id", "independency"}, {"op", "independency"}, {"symbol", symbol}}}), f); });
    });

    for (const char* lattice_op : {"gcd", "lcm"}) {
        auto* sub = app.add_subcommand(lattice_op, std::string(lattice_op) + " of inner functions");
        sub->add_option("document", doc)->required()->check(CLI::ExistingFile);
        sub->add_option("inputs", names)->required();
        if (std::string(lattice_op) == "lcm") sub->add_flag("--symbols", symbols, "inputs are symbols, not inner functions");
        sub->callback([&, lattice_op] {
            json t{{"id", lattice_op}, {"op", lattice_op}};
            t[symbols ? "symbols" : "inputs"] = names;
            code = guarded([&] { return run_tasks(doc, json::array({t}), f); });
        });
    }

    auto* io = app.add_subcommand("inner-outer", "inner-outer factorization");
    io->add_option("document", doc)->required()->check(CLI::ExistingFile);
    io->add_option("matrix", matrix)->required();
    io->callback([&] {
        code = guarded([&] { return run_tasks(doc, json::array({{{"id", "inner-outer"}, {"op", "inner-outer"}, {"matrix", matrix}}}), f); });
    });

    auto* sstar = app.add_subcommand("sstar", "backward-shift-invariant subspace generated by vectors");
    sstar->add_option("document", doc)->required()->check(CLI::ExistingFile);
    sstar->add_option("generators", names)->required();
    sstar->callback([&] {
        code = guarded([&] { return run_tasks(doc, json::array({{{"id", "sstar"}, {"op", "sstar"}, {"generators", names}}}), f); });
    });

    auto* cyc = app.add_subcommand("cyclic", "cyclic vector test for the backward shift");
    cyc->add_option("document", doc)->required()->check(CLI::ExistingFile);
    cyc->add_option("vector", vector)->required();
    cyc->add_flag("--conjugates", conjugates, "the name is an nspan row of conjugate coordinates");
    cyc->callback([&] {
        json t{{"id", "cyclic"}, {"op", "cyclic"}};
        t[conjugates ? "conjugates" : "vector"] = vector;
        code = guarded([&] { return run_tasks(doc, json::array({t}), f); });
    });

    auto* audit = app.add_subcommand("audit", "size bounds of a gcd or lcm");
    audit->add_option("document", doc)->required()->check(CLI::ExistingFile);
    audit->add_option("inputs", names)->required();
    audit->add_option("--op", op, "lattice operation")->check(CLI::IsMember({"gcd", "lcm"}));
    audit->callback([&] {
        json tasks = json::array({{{"id", "subject"}, {"op", op}, {"inputs", names}}, {{"id", "audit"}, {"op", "audit"}, {"of", "@subject"}}});
        code = guarded([&] { return run_tasks(doc, tasks, f); });
    });

    auto* self = app.add_subcommand("selftest", "built-in acceptance suite");
    self->add_option("--criterion", criterion, "run a single criterion (1-10)")->check(CLI::Range(1, kCriterionCount));
    self->callback([&] {
        std::vector<CriterionResult> results;
        if (criterion > 0) results.push_back(run_criterion(criterion, kAcceptanceSeed));
        else results = run_acceptance(kAcceptanceSeed);
        bool ok = true;
        for (const auto& r : results) {
            std::cout << format_criterion(r) << '\n';
            ok = ok && r.pass;
        }
        code = ok ? kExitPass : kExitFail;
    });

    CLI11_PARSE(app, argc, argv);
    return code;
}
