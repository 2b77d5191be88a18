#include "bhk/verify/runner.hpp"

#include "bhk/core/errors.hpp"
#include "bhk/hankel/kernel.hpp"
#include "bhk/inner/inner_outer.hpp"
#include "bhk/lattice/lattice.hpp"

#include <cstdio>
#include <optional>
#include <sstream>

namespace bhk::verify {

using nlohmann::json;
using nlohmann::ordered_json;

int TaskReport::exit_code() const {
    if (status == "pass") return kExitPass;
    if (status == "fail") return kExitFail;
    if (status == "schema-error") return kExitSchema;
    if (status == "domain-error") return kExitDomain;
    return kExitInvariant;
}

int RunReport::exit_code() const {
    int code = kExitPass;
    for (const auto& t : tasks) code = std::max(code, t.exit_code());
    return code;
}

ordered_json render(const RatMat& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

ordered_json render(const MatrixInner& theta) {
    ordered_json o;
    o["size"] = std::to_string(theta.rows()) + "x" + std::to_string(theta.cols());
    o["kind"] = to_string(theta.kind());
    o["generator"] = render(theta.generator());
    if (theta.kind() == GramKind::ConstantDiagonal) {
        ordered_json tags = ordered_json::array();
        for (const auto& t : theta.tags()) tags.push_back(t.get_str());
        o["tags"] = tags;
    }
    if (auto d = theta.model_dimension()) o["model_dimension"] = *d;
    return o;
}

std::string format_residual(const Residual& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.3e (threshold %.1e): %s", r.name.c_str(), r.value, r.threshold, r.pass ? "pass" : "fail");
    return buf;
}

namespace {

struct TaskValue {
    std::optional<MatrixInner> inner;
    std::optional<LatticeTrace> trace;
};

class TaskRunner {
public:
    TaskRunner(const SymbolDocument& doc, const RunOptions& opts) : doc_(doc), opts_(opts) {}

    TaskReport run(const Task& task) {
        TaskReport rep;
        rep.id = task.id;
        rep.op = task.op;
        rep_ = &rep;
        try {
            TaskValue value = dispatch(task);
            if (value.inner) {
                ResidualSummary s = crosscheck_inner(*value.inner, opts_.samples, opts_.seed, opts_.tol);
                rep.numeric.insert(rep.numeric.end(), s.residuals.begin(), s.residuals.end());
            }
            values_[task.id] = std::move(value);
            bool ok = true;
            for (const auto& c : rep.checks) ok = ok && c.pass;
            for (const auto& r : rep.numeric) ok = ok && r.pass;
            rep.status = ok ? "pass" : "fail";
        } catch (const SchemaError& e) {
            fail(rep, "schema-error", e.what());
        } catch (const std::invalid_argument& e) {
            fail(rep, "schema-error", e.what());
        } catch (const json::exception& e) {
            fail(rep, "schema-error", e.what());
        } catch (const DomainError& e) {
            fail(rep, "domain-error", e.what());
        } catch (const std::domain_error& e) {
            fail(rep, "domain-error", e.what());
        } catch (const InvariantViolation& e) {
            fail(rep, "invariant-violation", e.what());
        }
        return rep;
    }

private:
    static void fail(TaskReport& rep, const char* status, const std::string& what) {
        rep.status = status;
        rep.error = what;
    }

    void check(const std::string& name, bool pass, const std::string& detail = {}) {
        rep_->checks.push_back({name, pass, detail});
    }

    static std::string str_arg(const json& args, const char* key) {
        if (!args.contains(key) || !args[key].is_string()) throw SchemaError(std::string("\"") + key + "\" must be a name");
        return args[key];
    }

    static std::vector<std::string> list_arg(const json& args, const char* key) {
        if (!args.contains(key) || !args[key].is_array() || args[key].empty())
            throw SchemaError(std::string("\"") + key + "\" must be a nonempty list of names");
        std::vector<std::string> out;
        for (const auto& x : args[key]) {
            if (!x.is_string()) throw SchemaError(std::string("\"") + key + "\" must list names");
            out.push_back(x);
        }
        return out;
    }

    MatrixInner inner_ref(const std::string& ref) const {
        if (!ref.empty() && ref[0] == '@') {
            const TaskValue& v = values_.at(ref.substr(1));
            if (!v.inner) throw SchemaError("task \"" + ref.substr(1) + "\" has no inner result");
            return *v.inner;
        }
        return doc_.inner(ref);
    }

    bool is_nspan_with_atoms(const std::string& name) const {
        const Object& o = doc_.object(name);
        if (auto n = std::get_if<NSpanMatrix>(&o)) return !atoms_of(*n).empty();
        return std::holds_alternative<Atom>(o);
    }

    void compare(const json& args, const MatrixInner& got) {
        if (!args.contains("compare")) return;
        const json& c = args["compare"];
        std::string ref, label;
        if (c.is_string()) {
            ref = label = c.get<std::string>();
        } else if (c.is_object() && c.contains("inner") && c["inner"].is_string()) {
            ref = c["inner"];
            label = c.value("label", ref);
        } else {
            throw SchemaError("\"compare\" takes a name or {inner, label}");
        }
        MatrixInner want = inner_ref(ref);
        bool same = want.rows() == got.rows() && want.cols() == got.cols();
        std::optional<UnitaryWitness> w;
        if (same && got.cols() > 0) {
            w = equal_up_to_right_unitary(got, want);
            same = w.has_value();
        }
        std::string detail;
        if (w && w->exact) detail = "exact unitary witness " + render(to_ratmat(w->value)).dump();
        else if (w) detail = "range equality exact, unitary numeric";
        check("matches " + label + " up to right unitary", same, detail);
    }

    void expect(const json& args, const std::string& key, long got) {
        if (!args.contains("expect") || !args["expect"].contains(key)) return;
        const json& want = args["expect"][key];
        if (!want.is_number_integer()) throw SchemaError("expect." + key + " must be an integer");
        check("expected " + key + " = " + std::to_string(want.get<long>()), want.get<long>() == got, "got " + std::to_string(got));
    }

    void expect_bool(const json& args, const std::string& key, bool got) {
        if (!args.contains("expect") || !args["expect"].contains(key)) return;
        const json& want = args["expect"][key];
        if (!want.is_boolean()) throw SchemaError("expect." + key + " must be a boolean");
        check(std::string("expected ") + key + " = " + (want.get<bool>() ? "true" : "false"), want.get<bool>() == got);
    }

    TaskValue dispatch(const Task& t) {
        const json& a = t.args;
        if (t.op == "kernel") return kernel(a);
        if (t.op == "independency") {
            const std::string name = str_arg(a, "symbol");
            const int ind = independency(doc_.nspan(name));
            rep_->exact["independency"] = ind;
            rep_->exact["columns"] = doc_.nspan(name).cols();
            expect(a, "independency", ind);
            return {};
        }
        if (t.op == "gcd") return gcd(a);
        if (t.op == "lcm") return lcm(a);
        if (t.op == "inner-outer") return inner_outer_task(a);
        if (t.op == "sstar") return sstar(a);
        if (t.op == "cyclic") return cyclic(a);
        if (t.op == "audit") return audit(a);
        if (t.op == "finite-section") return finite_section(a);
        return crosscheck(a);
    }

    TaskValue kernel(const json& a) {
        const std::string name = str_arg(a, "symbol");
        MatrixInner theta = MatrixInner::empty(0);
        if (is_nspan_with_atoms(name)) {
            NSpanMatrix phi = doc_.nspan(name);
            const int ind = independency(phi);
            theta = kernel_symbolic(phi);
            rep_->exact["independency"] = ind;
            check("columns = m - independency", theta.cols() == phi.cols() - static_cast<std::size_t>(ind));
            rep_->provenance.push_back("symbolic kernel of " + name);
        } else {
            KernelResult k = kernel_rational(HankelSymbol(doc_.matrix(name)));
            theta = k.theta;
            rep_->exact["defect_dim"] = k.defect_dim;
            rep_->exact["column_degrees"] = k.column_degrees;
            rep_->provenance.push_back("rational kernel of " + name);
        }
        rep_->exact["kernel"] = render(theta);
        expect(a, "cols", static_cast<long>(theta.cols()));
        if (auto d = theta.model_dimension()) expect(a, "defect", *d);
        compare(a, theta);
        return {theta, std::nullopt};
    }

    void record_audit(const LatticeTrace& trace) {
        AuditReport ar = size_bound_audit(trace);
        rep_->exact["bounds"] = {ar.lower, ar.upper};
        for (const auto& line : ar.lines) rep_->provenance.push_back(line);
        check("size within bounds", ar.within);
    }

    TaskValue gcd(const json& a) {
        std::vector<MatrixInner> ins;
        for (const auto& r : list_arg(a, "inputs")) ins.push_back(inner_ref(r));
        GcdResult g = gcd_inner(ins);
        rep_->exact["gcd"] = render(g.inner);
        ordered_json qs = ordered_json::array();
        for (const auto& x : g.quotients) qs.push_back(render(x));
        rep_->exact["quotients"] = qs;
        check("every input factors through the result", true, "quotients analytic, exact");
        record_audit(g.trace);
        expect(a, "cols", static_cast<long>(g.inner.cols()));
        compare(a, g.inner);
        return {g.inner, g.trace};
    }

    TaskValue lcm(const json& a) {
        LcmResult r = [&] {
            if (a.contains("symbols")) {
                std::vector<NSpanMatrix> syms;
                for (const auto& s : list_arg(a, "symbols")) syms.push_back(doc_.nspan(s));
                return lcm_from_symbols(syms);
            }
            std::vector<MatrixInner> ins;
            for (const auto& s : list_arg(a, "inputs")) ins.push_back(inner_ref(s));
            return lcm_inner(ins);
        }();
        rep_->exact["lcm"] = render(r.inner);
        rep_->exact["paths"] = r.trace.paths;
        if (r.trace.stacked_independency) rep_->exact["stacked_independency"] = *r.trace.stacked_independency;
        if (r.trace.paths_agree) check("symbol and direct paths agree", *r.trace.paths_agree);
        record_audit(r.trace);
        expect(a, "cols", static_cast<long>(r.inner.cols()));
        if (r.trace.stacked_independency) expect(a, "stacked_independency", *r.trace.stacked_independency);
        compare(a, r.inner);
        return {r.inner, r.trace};
    }

    TaskValue inner_outer_task(const json& a) {
        RatMat f = doc_.matrix(str_arg(a, "matrix"));
        InnerOuterResult io = inner_outer(f);
        rep_->exact["rank"] = io.rank;
        rep_->exact["inner"] = render(io.theta);
        rep_->exact["outer_size"] = std::to_string(io.core.rows()) + "x" + std::to_string(io.core.cols());
        if (auto g = io.outer_exact()) rep_->exact["outer"] = render(*g);
        else rep_->exact["outer_core"] = render(io.core);
        check("exact reassembly V core = F", io.theta.generator() * io.core == f);
        check("outer factor", is_outer(io.core));
        expect(a, "rank", static_cast<long>(io.rank));
        double worst = 0.0;
        for (const auto& z : circle_samples(opts_.samples, opts_.seed)) {
            Eigen::MatrixXcd lhs = io.theta(z) * io.outer(z);
            worst = std::max(worst, (lhs - evaluate(f, z)).cwiseAbs().maxCoeff());
        }
        rep_->numeric.push_back({"max |Theta G - F|", worst, opts_.tol.identity, worst < opts_.tol.identity});
        return {io.theta, std::nullopt};
    }

    std::vector<RatMat> generators(const json& a) {
        std::vector<RatMat> gens;
        for (const auto& name : list_arg(a, "generators")) {
            RatMat m = doc_.matrix(name);
            for (std::size_t j = 0; j < m.cols(); ++j) gens.push_back(m.column(j));
        }
        return gens;
    }

    TaskValue sstar(const json& a) {
        ModelSubspace m = sstar_invariant_from_generators(generators(a));
        rep_->exact["complement_of"] = render(m.inner);
        rep_->exact["dimension"] = m.dimension_text();
        rep_->provenance = m.provenance;
        if (m.dim) expect(a, "dim", *m.dim);
        compare(a, m.inner);
        return {m.inner, std::nullopt};
    }

    TaskValue cyclic(const json& a) {
        bool result;
        if (a.contains("conjugates")) {
            result = cyclic_test_conjugates(doc_.nspan(str_arg(a, "conjugates")));
        } else {
            result = cyclic_test(doc_.matrix(str_arg(a, "vector")));
        }
        rep_->exact["cyclic"] = result;
        check("model-space and independency criteria agree", true);
        expect_bool(a, "cyclic", result);
        return {};
    }

    TaskValue audit(const json& a) {
        const std::string ref = str_arg(a, "of");
        if (ref.empty() || ref[0] != '@') throw SchemaError("audit takes a task reference \"@id\"");
        const TaskValue& v = values_.at(ref.substr(1));
        if (!v.trace) throw SchemaError("task \"" + ref.substr(1) + "\" is not a gcd or lcm task");
        record_audit(*v.trace);
        return {};
    }

    TaskValue finite_section(const json& a) {
        HankelSymbol phi(doc_.matrix(str_arg(a, "symbol")));
        KernelResult k = kernel_rational(phi);
        const json& ds = a["degrees"];
        std::vector<int> degrees;
        if (ds.is_number_integer()) {
            for (int d = 0; d <= ds.get<int>(); ++d) degrees.push_back(d);
        } else if (ds.is_array()) {
            for (const auto& d : ds) {
                if (!d.is_number_integer()) throw SchemaError("degrees must be integers");
                degrees.push_back(d);
            }
        } else {
            throw SchemaError("degrees must be an integer bound or a list");
        }
        ordered_json rows = ordered_json::array();
        bool all = true;
        for (int d : degrees) {
            const int svd = finite_section_kernel_dim(phi, d);
            const int predicted = k.polynomial_section_dim(d);
            rows.push_back({{"d", d}, {"svd", svd}, {"predicted", predicted}});
            all = all && svd == predicted;
        }
        rep_->exact["sections"] = rows;
        check("SVD kernel dimensions match column-degree prediction", all);
        return {k.theta, std::nullopt};
    }

    TaskValue crosscheck(const json& a) {
        const std::string name = str_arg(a, "object");
        const Object& o = doc_.object(name);
        if (std::holds_alternative<MatrixInner>(o) || std::holds_alternative<BlaschkeProduct>(o)) {
            MatrixInner t = doc_.inner(name);
            rep_->exact["object"] = render(t);
            return {t, std::nullopt};
        }
        RatMat m = doc_.matrix(name);
        const int points = a.value("points", 5);
        ResidualSummary s = crosscheck_matrix(m, points, opts_.seed, opts_.tol);
        rep_->exact["generic_rank"] = generic_rank(m);
        expect(a, "rank", generic_rank(m));
        rep_->numeric.insert(rep_->numeric.end(), s.residuals.begin(), s.residuals.end());
        return {};
    }

    const SymbolDocument& doc_;
    RunOptions opts_;
    std::map<std::string, TaskValue> values_;
    TaskReport* rep_ = nullptr;
};

} // namespace

RunReport run_document(const SymbolDocument& doc, const RunOptions& opts) {
    RunReport out;
    TaskRunner runner(doc, opts);
    for (const auto& t : doc.tasks()) out.tasks.push_back(runner.run(t));
    return out;
}

ordered_json RunReport::to_json() const {
    ordered_json o;
    o["schema_version"] = kSchemaVersion;
    o["exit_code"] = exit_code();
    ordered_json ts = ordered_json::array();
    for (const auto& t : tasks) {
        ordered_json j;
        j["id"] = t.id;
        j["op"] = t.op;
        j["status"] = t.status;
        if (!t.error.empty()) j["error"] = t.error;
        j["exact"] = t.exact;
        ordered_json checks = ordered_json::array();
        for (const auto& c : t.checks) {
            ordered_json cj{{"name", c.name}, {"pass", c.pass}};
            if (!c.detail.empty()) cj["detail"] = c.detail;
            checks.push_back(cj);
        }
        j["checks"] = checks;
        ordered_json num = ordered_json::array();
        for (const auto& r : t.numeric) num.push_back({{"name", r.name}, {"value", r.value}, {"threshold", r.threshold}, {"pass", r.pass}});
        j["numeric"] = num;
        j["provenance"] = t.provenance;
        ts.push_back(j);
    }
    o["tasks"] = ts;
    return o;
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    for (const auto& t : tasks) {
        os << "task " << t.id << " (" << t.op << "): " << t.status << '\n';
        if (!t.error.empty()) os << "  error: " << t.error << '\n';
        for (auto it = t.exact.begin(); it != t.exact.end(); ++it) os << "  " << it.key() << ": " << it.value().dump() << '\n';
        for (const auto& c : t.checks)
            os << "  " << c.name << ": " << (c.pass ? "true" : "false") << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
        for (const auto& r : t.numeric) os << "  " << format_residual(r) << '\n';
        for (const auto& p : t.provenance) os << "  | " << p << '\n';
    }
    os << "exit code " << exit_code() << '\n';
    return os.str();
}

} // namespace bhk::verify
