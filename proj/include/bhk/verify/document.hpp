#pragma once

#include "bhk/core/blaschke.hpp"
#include "bhk/nmod/nspan.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace bhk::verify {

inline constexpr const char* kSchemaVersion = "1.0";

/// A resolved declaration. Scalars are kept apart from 1x1 matrices only for reporting.
using Object = std::variant<RationalFunction, BlaschkeProduct, RatMat, Atom, NSpanMatrix, MatrixInner>;

std::string kind_name(const Object& o);

struct Task {
    std::string id;
    std::string op;
    nlohmann::json args;  ///< the task object minus "id" and "op"
    std::vector<std::string> depends_on;  ///< ids of tasks whose results are referenced as "@id"
};

struct ParseOptions {
    bool strict = false;  ///< reject bare JSON numbers outside "shadow" fields and unknown keys
};

/// Parsed and resolved document. Throws SchemaError on malformed input,
/// dangling or cyclic references, and DomainError when a declaration is
/// outside the supported class (for example a Blaschke zero on the circle).
class SymbolDocument {
public:
    static SymbolDocument parse(const nlohmann::json& doc, const ParseOptions& opts = {});
    static SymbolDocument load(const std::string& path, const ParseOptions& opts = {});

    const std::string& schema_version() const { return version_; }
    const std::map<std::string, Object>& objects() const { return objects_; }
    const Object& object(const std::string& name) const;
    bool has(const std::string& name) const { return objects_.count(name) > 0; }
    /// Tasks in an order where every "@id" reference precedes its user.
    const std::vector<Task>& tasks() const { return tasks_; }

    RatMat matrix(const std::string& name) const;
    NSpanMatrix nspan(const std::string& name) const;
    MatrixInner inner(const std::string& name) const;

private:
    std::string version_;
    std::map<std::string, Object> objects_;
    std::vector<Task> tasks_;
};

/// Exact scalar from the number grammar: "3", "-2/5", "1/2+1/3i", "i", "-3/4i".
GaussianRational parse_number(const std::string& text);

} // namespace bhk::verify
