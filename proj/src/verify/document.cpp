#include "bhk/verify/document.hpp"

#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/polymat/polymat.hpp"

#include <fstream>
#include <functional>
#include <regex>
#include <set>

namespace bhk::verify {

using nlohmann::json;

std::string kind_name(const Object& o) {
    static const char* names[] = {"rational", "blaschke", "matrix", "atom", "nspan", "inner"};
    return names[o.index()];
}

GaussianRational parse_number(const std::string& text) {
    return GaussianRational::parse(text);
}

namespace {

const std::set<std::string> kOps = {"kernel", "independency", "gcd", "lcm", "inner-outer",
                                    "sstar", "cyclic", "audit", "finite-section", "crosscheck"};

const std::map<std::string, std::vector<std::string>> kRequired = {
    {"kernel", {"symbol"}},        {"independency", {"symbol"}}, {"gcd", {"inputs"}},
    {"lcm", {}},                   {"inner-outer", {"matrix"}},  {"sstar", {"generators"}},
    {"cyclic", {}},                {"audit", {"of"}},            {"finite-section", {"symbol", "degrees"}},
    {"crosscheck", {"object"}}};

const std::map<std::string, std::set<std::string>> kAllowed = {
    {"polynomial", {"kind", "coefficients"}},
    {"rational", {"kind", "value"}},
    {"blaschke", {"kind", "zeros", "constant"}},
    {"matrix", {"kind", "rows", "adjoint", "product", "hstack", "vstack", "columns"}},
    {"atom", {"kind"}},
    {"nspan", {"kind", "rows", "from"}},
    {"inner", {"kind", "matrix", "form", "tags", "shadow"}}};

bool looks_like_number(const std::string& s) {
    try {
        GaussianRational::parse(s);
        return true;
    } catch (const SchemaError&) {
        return false;
    }
}

void check_name(const std::string& name) {
    static const std::regex valid("[A-Za-z_][A-Za-z0-9_.\\-]*");
    if (!std::regex_match(name, valid)) throw SchemaError("invalid object name \"" + name + "\"");
    if (name == "z" || looks_like_number(name)) throw SchemaError("object name \"" + name + "\" collides with a number or z");
}

class Resolver {
public:
    Resolver(const json& decls, const ParseOptions& opts) : decls_(decls), opts_(opts) {}

    std::map<std::string, Object> resolve_all() {
        for (auto it = decls_.begin(); it != decls_.end(); ++it) get(it.key());
        return done_;
    }

private:
    const Object& get(const std::string& name) {
        if (auto it = done_.find(name); it != done_.end()) return it->second;
        if (!decls_.contains(name)) throw SchemaError("undeclared name \"" + name + "\"");
        if (std::find(stack_.begin(), stack_.end(), name) != stack_.end()) {
            std::string cycle;
            for (auto it = std::find(stack_.begin(), stack_.end(), name); it != stack_.end(); ++it) cycle += *it + " -> ";
            throw SchemaError("reference cycle: " + cycle + name);
        }
        check_name(name);
        stack_.push_back(name);
        Object o = build(name, decls_.at(name));
        stack_.pop_back();
        return done_.emplace(name, std::move(o)).first->second;
    }

    Object build(const std::string& name, const json& d) {
        if (!d.is_object() || !d.contains("kind") || !d["kind"].is_string())
            throw SchemaError("object \"" + name + "\" needs a string \"kind\"");
        const std::string kind = d["kind"];
        auto allowed = kAllowed.find(kind);
        if (allowed == kAllowed.end()) throw SchemaError("object \"" + name + "\": unknown kind \"" + kind + "\"");
        if (opts_.strict)
            for (auto it = d.begin(); it != d.end(); ++it)
                if (!allowed->second.count(it.key())) throw SchemaError("object \"" + name + "\": unknown key \"" + it.key() + "\"");

        if (kind == "polynomial") {
            const json& c = field(d, "coefficients", name);
            if (!c.is_array()) throw SchemaError("object \"" + name + "\": coefficients must be a list");
            std::vector<GaussianRational> coeffs;
            for (const auto& x : c) coeffs.push_back(number(x));
            return RationalFunction(Polynomial(coeffs));
        }
        if (kind == "rational") return entry(field(d, "value", name));
        if (kind == "blaschke") return blaschke(d, name);
        if (kind == "matrix") return matrix_decl(d, name);
        if (kind == "atom") return Atom{name};
        if (kind == "nspan") return nspan_decl(d, name);
        return inner_decl(d, name);
    }

    static const json& field(const json& d, const char* key, const std::string& name) {
        if (!d.contains(key)) throw SchemaError("object \"" + name + "\": missing \"" + key + "\"");
        return d.at(key);
    }

    GaussianRational number(const json& x) {
        if (x.is_string()) return GaussianRational::parse(x.get<std::string>());
        if (x.is_number_integer()) {
            if (opts_.strict) throw SchemaError("bare number " + x.dump() + " in strict mode; write it as a string");
            return GaussianRational(Rational(x.get<long>()));
        }
        if (x.is_number_float()) {
            if (opts_.strict) throw SchemaError("bare float " + x.dump() + " in strict mode");
            return GaussianRational::from_double(x.get<double>());
        }
        throw SchemaError("expected a number, got " + x.dump());
    }

    static int integer(const json& x, const std::string& what) {
        if (!x.is_number_integer()) throw SchemaError(what + " must be an integer, got " + x.dump());
        return x.get<int>();
    }

    RationalFunction scalar_ref(const std::string& ref) {
        const Object& o = get(ref);
        if (auto r = std::get_if<RationalFunction>(&o)) return *r;
        if (auto b = std::get_if<BlaschkeProduct>(&o)) return b->to_rational();
        if (auto m = std::get_if<RatMat>(&o); m && m->rows() == 1 && m->cols() == 1) return (*m)(0, 0);
        throw SchemaError("\"" + ref + "\" is a " + kind_name(o) + ", not a scalar");
    }

    RationalFunction entry(const json& e) {
        if (e.is_string()) {
            const std::string s = e;
            if (s == "z") return RationalFunction::z();
            if (looks_like_number(s)) return RationalFunction(GaussianRational::parse(s));
            return scalar_ref(s);
        }
        if (e.is_number()) return RationalFunction(number(e));
        if (!e.is_object() || e.empty()) throw SchemaError("malformed entry " + e.dump());
        if (e.contains("num") || e.contains("den")) {
            if (e.size() != 2 || !e.contains("num") || !e.contains("den")) throw SchemaError("fraction needs exactly num and den: " + e.dump());
            RationalFunction den = entry(e["den"]);
            if (den.is_zero()) throw SchemaError("zero denominator in " + e.dump());
            return entry(e["num"]) / den;
        }
        if (e.size() != 1) throw SchemaError("entry must have exactly one operator: " + e.dump());
        const std::string op = e.begin().key();
        const json& arg = e.begin().value();
        if (op == "adjoint") return circle_adjoint(entry(arg));
        if (op == "product" || op == "sum") {
            if (!arg.is_array() || arg.empty()) throw SchemaError(op + " needs a nonempty list");
            RationalFunction acc = entry(arg[0]);
            for (std::size_t k = 1; k < arg.size(); ++k) acc = op == "sum" ? acc + entry(arg[k]) : acc * entry(arg[k]);
            return acc;
        }
        if (op == "power") {
            if (!arg.is_array() || arg.size() != 2) throw SchemaError("power needs [entry, exponent]");
            RationalFunction base = entry(arg[0]);
            const int k = integer(arg[1], "exponent");
            if (k < 0 && base.is_zero()) throw SchemaError("negative power of zero");
            return k >= 0 ? base.pow(k) : base.inverse().pow(-k);
        }
        throw SchemaError("unknown entry operator \"" + op + "\"");
    }

    BlaschkeProduct blaschke(const json& d, const std::string& name) {
        const json& zs = field(d, "zeros", name);
        std::map<GaussianRational, int> zeros;
        if (zs.is_array()) {
            for (const auto& z : zs) zeros[number(z)] += 1;
        } else if (zs.is_object()) {
            for (auto it = zs.begin(); it != zs.end(); ++it) {
                const int mult = integer(it.value(), "multiplicity");
                if (mult <= 0) throw SchemaError("object \"" + name + "\": multiplicity must be positive");
                zeros[GaussianRational::parse(it.key())] += mult;
            }
        } else {
            throw SchemaError("object \"" + name + "\": zeros must be a list or a map");
        }
        UnimodularConstant c;
        if (d.contains("constant")) {
            try {
                c = UnimodularConstant(number(d["constant"]));
            } catch (const std::invalid_argument& e) {
                throw SchemaError("object \"" + name + "\": " + e.what());
            }
        }
        return BlaschkeProduct(zeros, c);
    }

    RatMat matrix_ref(const std::string& ref) {
        const Object& o = get(ref);
        if (auto m = std::get_if<RatMat>(&o)) return *m;
        if (auto t = std::get_if<MatrixInner>(&o)) return t->generator();
        if (std::holds_alternative<RationalFunction>(o) || std::holds_alternative<BlaschkeProduct>(o))
            return RatMat{{scalar_ref(ref)}};
        throw SchemaError("\"" + ref + "\" is a " + kind_name(o) + ", not a rational matrix");
    }

    std::vector<RatMat> matrix_list(const json& arg, const std::string& what) {
        if (!arg.is_array() || arg.empty()) throw SchemaError(what + " needs a nonempty list of names");
        std::vector<RatMat> out;
        for (const auto& x : arg) {
            if (!x.is_string()) throw SchemaError(what + " takes names");
            out.push_back(matrix_ref(x));
        }
        return out;
    }

    RatMat rows(const json& r, const std::string& name) {
        if (!r.is_array() || r.empty() || !r[0].is_array()) throw SchemaError("object \"" + name + "\": rows must be a list of lists");
        RatMat m(r.size(), r[0].size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!r[i].is_array() || r[i].size() != m.cols()) throw SchemaError("object \"" + name + "\": ragged rows");
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(r[i][j]);
        }
        return m;
    }

    RatMat matrix_decl(const json& d, const std::string& name) {
        int forms = 0;
        for (const char* k : {"rows", "adjoint", "product", "hstack", "vstack", "columns"}) forms += d.contains(k);
        if (forms != 1) throw SchemaError("object \"" + name + "\": a matrix takes exactly one of rows/adjoint/product/hstack/vstack/columns");
        if (d.contains("rows")) return rows(d["rows"], name);
        if (d.contains("adjoint")) {
            if (!d["adjoint"].is_string()) throw SchemaError("object \"" + name + "\": adjoint takes a name");
            return circle_adjoint(matrix_ref(d["adjoint"]));
        }
        if (d.contains("product")) {
            auto ms = matrix_list(d["product"], "product");
            RatMat acc = ms[0];
            for (std::size_t k = 1; k < ms.size(); ++k) {
                if (acc.cols() != ms[k].rows()) throw SchemaError("object \"" + name + "\": product size mismatch");
                acc = acc * ms[k];
            }
            return acc;
        }
        const bool horizontal = d.contains("hstack") || d.contains("columns");
        auto ms = matrix_list(d.contains("hstack") ? d["hstack"] : d.contains("columns") ? d["columns"] : d["vstack"], "stack");
        RatMat acc = ms[0];
        for (std::size_t k = 1; k < ms.size(); ++k) {
            if (horizontal ? acc.rows() != ms[k].rows() : acc.cols() != ms[k].cols())
                throw SchemaError("object \"" + name + "\": stack size mismatch");
            acc = horizontal ? hstack(acc, ms[k]) : vstack(acc, ms[k]);
        }
        return acc;
    }

    NSpanEntry nspan_entry(const json& e) {
        if (e.is_object() && (e.contains("atom_terms") || e.contains("rational"))) {
            for (auto it = e.begin(); it != e.end(); ++it)
                if (it.key() != "atom_terms" && it.key() != "rational") throw SchemaError("unknown key \"" + it.key() + "\" in an nspan entry");
            NSpanEntry out = e.contains("rational") ? NSpanEntry(entry(e["rational"])) : NSpanEntry(0);
            if (e.contains("atom_terms")) {
                const json& terms = e["atom_terms"];
                if (!terms.is_object()) throw SchemaError("atom_terms must map atom names to coefficients");
                for (auto it = terms.begin(); it != terms.end(); ++it) {
                    const Object& a = get(it.key());
                    const Atom* atom = std::get_if<Atom>(&a);
                    if (!atom) throw SchemaError("\"" + it.key() + "\" is a " + kind_name(a) + ", not an atom");
                    out += NSpanEntry(*atom, entry(it.value()));
                }
            }
            return out;
        }
        if (e.is_string()) {
            const std::string s = e;
            if (s != "z" && !looks_like_number(s))
                if (auto atom = std::get_if<Atom>(&get(s))) return NSpanEntry(*atom);
        }
        return NSpanEntry(entry(e));
    }

    NSpanMatrix nspan_decl(const json& d, const std::string& name) {
        if (d.contains("from") == d.contains("rows")) throw SchemaError("object \"" + name + "\": an nspan takes exactly one of rows/from");
        if (d.contains("from")) {
            if (!d["from"].is_string()) throw SchemaError("object \"" + name + "\": from takes a name");
            return to_nspan(matrix_ref(d["from"]));
        }
        const json& r = d["rows"];
        if (!r.is_array() || r.empty() || !r[0].is_array()) throw SchemaError("object \"" + name + "\": rows must be a list of lists");
        NSpanMatrix m(r.size(), r[0].size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!r[i].is_array() || r[i].size() != m.cols()) throw SchemaError("object \"" + name + "\": ragged rows");
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = nspan_entry(r[i][j]);
        }
        return m;
    }

    MatrixInner inner_decl(const json& d, const std::string& name) {
        const json& mj = field(d, "matrix", name);
        RatMat v = mj.is_string() ? matrix_ref(mj) : rows(mj, name);
        const std::string form = d.value("form", std::string("explicit"));
        if (form == "explicit") {
            InnerCheck chk = is_inner(v);
            if (!chk.inner) throw DomainError("object \"" + name + "\" is not inner: " + chk.witness);
            return MatrixInner::from_explicit(v);
        }
        if (form == "scaled") {
            const json& tj = field(d, "tags", name);
            if (!tj.is_array()) throw SchemaError("object \"" + name + "\": tags must be a list");
            std::vector<Rational> tags;
            for (const auto& t : tj) {
                GaussianRational g = number(t);
                if (!g.is_real()) throw SchemaError("object \"" + name + "\": tags must be real");
                tags.push_back(g.re());
            }
            InnerCheck chk = is_inner_scaled(v, tags);
            if (!chk.inner) throw DomainError("object \"" + name + "\" is not inner in the scaled form: " + chk.witness);
            return MatrixInner::from_scaled_columns(v, tags);
        }
        if (form == "generator") return MatrixInner::from_generator(v);
        throw SchemaError("object \"" + name + "\": unknown inner form \"" + form + "\"");
    }

    const json& decls_;
    ParseOptions opts_;
    std::map<std::string, Object> done_;
    std::vector<std::string> stack_;
};

void collect_refs(const json& j, std::vector<std::string>& out) {
    if (j.is_string()) {
        const std::string s = j;
        if (!s.empty() && s[0] == '@') out.push_back(s.substr(1));
    } else if (j.is_array() || j.is_object()) {
        for (const auto& x : j) collect_refs(x, out);
    }
}

std::vector<Task> order_tasks(std::vector<Task> tasks) {
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < tasks.size(); ++k) index[tasks[k].id] = k;
    for (const auto& t : tasks)
        for (const auto& d : t.depends_on)
            if (!index.count(d)) throw SchemaError("task \"" + t.id + "\" references unknown task \"" + d + "\"");

    std::vector<Task> ordered;
    std::vector<int> state(tasks.size(), 0);
    std::function<void(std::size_t, std::vector<std::string>&)> visit = [&](std::size_t k, std::vector<std::string>& path) {
        if (state[k] == 2) return;
        path.push_back(tasks[k].id);
        if (state[k] == 1) {
            std::string cycle;
            for (const auto& p : path) cycle += (cycle.empty() ? "" : " -> ") + p;
            throw SchemaError("task dependency cycle: " + cycle);
        }
        state[k] = 1;
        for (const auto& d : tasks[k].depends_on) visit(index[d], path);
        state[k] = 2;
        path.pop_back();
        ordered.push_back(tasks[k]);
    };
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        std::vector<std::string> path;
        visit(k, path);
    }
    return ordered;
}

} // namespace

SymbolDocument SymbolDocument::parse(const json& doc, const ParseOptions& opts) {
    if (!doc.is_object()) throw SchemaError("document must be a JSON object");
    if (opts.strict)
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (it.key() != "schema_version" && it.key() != "objects" && it.key() != "tasks")
                throw SchemaError("unknown top-level key \"" + it.key() + "\"");
    if (!doc.contains("schema_version") || !doc["schema_version"].is_string())
        throw SchemaError("missing string \"schema_version\"");
    SymbolDocument out;
    out.version_ = doc["schema_version"];
    if (out.version_.substr(0, out.version_.find('.')) != "1")
        throw SchemaError("unsupported schema version \"" + out.version_ + "\"");

    const json empty_obj = json::object();
    const json& decls = doc.contains("objects") ? doc["objects"] : empty_obj;
    if (!decls.is_object()) throw SchemaError("\"objects\" must be a JSON object");
    try {
        out.objects_ = Resolver(decls, opts).resolve_all();
    } catch (const std::domain_error& e) {
        throw SchemaError(std::string("arithmetic error while resolving objects: ") + e.what());
    }

    std::vector<Task> tasks;
    std::set<std::string> ids;
    if (doc.contains("tasks")) {
        if (!doc["tasks"].is_array()) throw SchemaError("\"tasks\" must be a list");
        for (const auto& t : doc["tasks"]) {
            if (!t.is_object() || !t.contains("id") || !t["id"].is_string() || !t.contains("op") || !t["op"].is_string())
                throw SchemaError("every task needs string \"id\" and \"op\"");
            Task task{t["id"], t["op"], t, {}};
            if (!ids.insert(task.id).second) throw SchemaError("duplicate task id \"" + task.id + "\"");
            if (!kOps.count(task.op)) throw SchemaError("task \"" + task.id + "\": unknown op \"" + task.op + "\"");
            for (const auto& key : kRequired.at(task.op))
                if (!t.contains(key)) throw SchemaError("task \"" + task.id + "\": missing \"" + key + "\"");
            task.args.erase("id");
            task.args.erase("op");
            collect_refs(task.args, task.depends_on);
            tasks.push_back(std::move(task));
        }
    }
    out.tasks_ = order_tasks(std::move(tasks));
    return out;
}

SymbolDocument SymbolDocument::load(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse(doc, opts);
}

const Object& SymbolDocument::object(const std::string& name) const {
    auto it = objects_.find(name);
    if (it == objects_.end()) throw SchemaError("undeclared name \"" + name + "\"");
    return it->second;
}

RatMat SymbolDocument::matrix(const std::string& name) const {
    const Object& o = object(name);
    if (auto m = std::get_if<RatMat>(&o)) return *m;
    if (auto r = std::get_if<RationalFunction>(&o)) return RatMat{{*r}};
    if (auto b = std::get_if<BlaschkeProduct>(&o)) return RatMat{{b->to_rational()}};
    if (auto t = std::get_if<MatrixInner>(&o)) return t->generator();
    throw SchemaError("\"" + name + "\" is a " + kind_name(o) + ", not a rational matrix");
}

NSpanMatrix SymbolDocument::nspan(const std::string& name) const {
    const Object& o = object(name);
    if (auto n = std::get_if<NSpanMatrix>(&o)) return *n;
    if (auto a = std::get_if<Atom>(&o)) return NSpanMatrix{{NSpanEntry(*a)}};
    return to_nspan(matrix(name));
}

MatrixInner SymbolDocument::inner(const std::string& name) const {
    const Object& o = object(name);
    if (auto t = std::get_if<MatrixInner>(&o)) return *t;
    if (auto b = std::get_if<BlaschkeProduct>(&o)) return MatrixInner::from_explicit(RatMat{{b->to_rational()}});
    throw SchemaError("\"" + name + "\" is a " + kind_name(o) + ", not an inner function");
}

} // namespace bhk::verify
