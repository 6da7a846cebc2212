#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace helgraph::testing::oracle {
namespace {

bool isMember(EntityKind k) {
    return k == EntityKind::Field || k == EntityKind::Method || k == EntityKind::Property ||
           k == EntityKind::Event;
}

bool hasSeverity(const Entity& e, Severity s) {
    for (const auto& d : e.diagnostics) {
        if (d.severity == s) return true;
    }
    return false;
}

std::string lower(std::string s) {
    for (auto& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

} // namespace

View::View(const RawGraph& g) : graph(&g), byId(g.byId()), parents(g.parents()), kids(g.children()) {}

int subtreeHeight(const View& v, const std::string& id) {
    int best = -1;
    for (const auto& c : v.kids.at(id)) best = std::max(best, subtreeHeight(v, c));
    return best + 1;
}

int subtreeHeight(const RawGraph& g, const std::string& id) { return subtreeHeight(View(g), id); }

Rollup rollup(const View& v, const std::string& id) {
    Rollup r;
    std::vector<std::string> stack(v.kids.at(id).begin(), v.kids.at(id).end());
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        const auto& e = *v.byId.at(n);
        r.error = r.error || hasSeverity(e, Severity::Error);
        r.warning = r.warning || hasSeverity(e, Severity::Warning);
        for (const auto& c : v.kids.at(n)) stack.push_back(c);
    }
    return r;
}

Rollup rollup(const RawGraph& g, const std::string& id) { return rollup(View(g), id); }

Members members(const View& v, const std::string& id) {
    Members m;
    for (const auto& c : v.kids.at(id)) {
        const auto& child = *v.byId.at(c);
        if (!isMember(child.kind)) continue;
        (child.modifiers.isStatic ? m.statics : m.instances)++;
    }
    return m;
}

Members members(const RawGraph& g, const std::string& id) { return members(View(g), id); }

double radius(const View& v, const std::string& id, const std::string& mode) {
    const auto& e = *v.byId.at(id);
    double r = 0;
    switch (e.kind) {
    case EntityKind::Solution: r = 14; break;
    case EntityKind::Project: r = 12; break;
    case EntityKind::Package: r = 10; break;
    case EntityKind::Namespace: r = 10; break;
    case EntityKind::Type: r = 8; break;
    case EntityKind::Parameter: r = 4; break;
    default: r = 5; break;
    }
    if (e.kind == EntityKind::Solution || e.kind == EntityKind::Project || e.kind == EntityKind::Namespace) {
        r += 2.0 * subtreeHeight(v, id);
    }
    if (e.kind == EntityKind::Type) {
        const auto m = members(v, id);
        const double x = m.statics + m.instances;
        if (mode == "linear") r += 0.25 * x;
        if (mode == "sqrt") r += 1.5 * std::sqrt(x);
        if (mode == "log") r += 3.0 * std::log(1.0 + x);
    }
    return r;
}

double radius(const RawGraph& g, const std::string& id, const std::string& mode) {
    return radius(View(g), id, mode);
}

Glyph glyph(const RawGraph& g, const std::string& id, const std::string& mode, bool collapsed) {
    return glyph(View(g), id, mode, collapsed);
}

Glyph glyph(const View& v, const std::string& id, const std::string& mode, bool collapsed) {
    const auto& e = *v.byId.at(id);
    Glyph out;
    out.radius = radius(v, id, mode);
    switch (e.kind) {
    case EntityKind::Solution: out.icon = "solution"; break;
    case EntityKind::Project: out.icon = "project"; break;
    case EntityKind::Package: out.icon = "package"; break;
    case EntityKind::Namespace: out.icon = "namespace"; break;
    case EntityKind::Field: out.icon = "field"; break;
    case EntityKind::Method: out.icon = "method"; break;
    case EntityKind::Property: out.icon = "property"; break;
    case EntityKind::Event: out.icon = "event"; break;
    case EntityKind::Parameter: out.icon = "parameter"; break;
    case EntityKind::Type:
        switch (*e.typeKind) {
        case TypeKind::Class: out.icon = e.isRecord ? "recordClass" : "class"; break;
        case TypeKind::Struct: out.icon = e.isRecord ? "recordStruct" : "struct"; break;
        case TypeKind::Enum: out.icon = "enum"; break;
        case TypeKind::Interface: out.icon = "interface"; break;
        case TypeKind::Delegate: out.icon = "delegate"; break;
        }
        break;
    }
    out.iconStyle = e.modifiers.isStatic ? "filled" : "stroked";
    if (e.kind == EntityKind::Method && e.methodKind && *e.methodKind != MethodKind::Ordinary) {
        out.methodBadge = std::string(toString(*e.methodKind));
    }
    if (e.accessibility && *e.accessibility != Accessibility::Public) {
        out.accessibilityBadge = std::string(toString(*e.accessibility));
    }
    out.contour = e.modifiers.isSealed ? "octagonSolid" : e.modifiers.isAbstract ? "hexagonDashed" : "none";
    if (e.kind == EntityKind::Type) {
        const auto m = members(v, id);
        const int total = m.statics + m.instances;
        if (total > 0) {
            out.hasDonut = true;
            out.staticFraction = double(m.statics) / total;
            out.instanceFraction = double(m.instances) / total;
            out.donutWidth = std::min(2.0 + 0.25 * total, 12.0);
        }
    }
    out.effect = hasSeverity(e, Severity::Error) ? "fire" : hasSeverity(e, Severity::Warning) ? "smoke" : "none";
    const auto r = rollup(v, id);
    const bool hasKids = !v.kids.at(id).empty();
    if (collapsed && hasKids) out.indicators.insert("collapsedShadow");
    if (r.error) out.indicators.insert("subtreeError");
    if (r.warning) out.indicators.insert("subtreeWarning");
    return out;
}

namespace {

// Property values as JSON: null when the node lacks the property.
nlohmann::json property(const View& v, const std::string& id, const std::string& name) {
    const auto& byId = v.byId;
    const auto& parents = v.parents;
    const auto& e = *byId.at(id);
    using nlohmann::json;
    if (name == "name") return e.name;
    if (name == "kind") return std::string(toString(e.kind));
    if (name == "typeKind") return e.typeKind ? json(std::string(toString(*e.typeKind))) : json();
    if (name == "methodKind") return e.methodKind ? json(std::string(toString(*e.methodKind))) : json();
    if (name == "accessibility") return e.accessibility ? json(std::string(toString(*e.accessibility))) : json();
    if (name == "isStatic") return e.modifiers.isStatic;
    if (name == "isAbstract") return e.modifiers.isAbstract;
    if (name == "isSealed") return e.modifiers.isSealed;
    if (name == "isRecord") return e.isRecord;
    if (name == "memberCount") {
        if (e.kind != EntityKind::Type) return json();
        const auto m = members(v, id);
        return m.statics + m.instances;
    }
    if (name == "subtreeHeight") return subtreeHeight(v, id);
    if (name == "hasOwnError") return hasSeverity(e, Severity::Error);
    if (name == "hasOwnWarning") return hasSeverity(e, Severity::Warning);
    if (name == "hasSubtreeError") return rollup(v, id).error;
    if (name == "hasSubtreeWarning") return rollup(v, id).warning;
    if (name == "commentText") {
        if (!e.comment) return "";
        return e.comment->summary + (e.comment->remarks ? "\n" + *e.comment->remarks : "");
    }
    std::vector<std::string> chain;
    for (std::string cur = id;;) {
        chain.push_back(cur);
        auto it = parents.find(cur);
        if (it == parents.end()) break;
        cur = it->second;
    }
    if (name == "projectName") {
        for (const auto& c : chain) {
            if (byId.at(c)->kind == EntityKind::Project) return byId.at(c)->name;
        }
        return json();
    }
    if (name == "namespacePath") {
        std::string path;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            if (byId.at(*it)->kind != EntityKind::Namespace) continue;
            path += (path.empty() ? "" : ".") + byId.at(*it)->name;
        }
        return path.empty() ? json() : json(path);
    }
    throw std::logic_error("oracle: unknown property " + name);
}

bool clauseHolds(const nlohmann::json& actual, const std::string& op, const nlohmann::json& value) {
    if (actual.is_null()) return false;
    if (actual.is_string()) {
        const auto s = actual.get<std::string>();
        if (op == "equals") return s == value.get<std::string>();
        if (op == "contains") return s.find(value.get<std::string>()) != std::string::npos;
        if (op == "startsWith") return s.rfind(value.get<std::string>(), 0) == 0;
        if (op == "matchesRegex") return std::regex_search(s, std::regex(value.get<std::string>()));
        if (op == "oneOf") {
            for (const auto& v : value) {
                if (v.get<std::string>() == s) return true;
            }
            return false;
        }
    }
    if (actual.is_number_integer()) {
        const auto a = actual.get<long long>();
        const auto v = value.get<long long>();
        if (op == "=") return a == v;
        if (op == "!=") return a != v;
        if (op == "<") return a < v;
        if (op == "<=") return a <= v;
        if (op == ">") return a > v;
        if (op == ">=") return a >= v;
    }
    if (actual.is_boolean() && op == "is") return actual.get<bool>() == value.get<bool>();
    throw std::logic_error("oracle: bad clause " + op);
}

} // namespace

std::set<std::string> filter(const RawGraph& g, const std::vector<std::string>& eligible,
                             const nlohmann::json& query) {
    return filter(View(g), eligible, query);
}

std::set<std::string> filter(const View& v, const std::vector<std::string>& eligible,
                             const nlohmann::json& query) {
    const auto& byId = v.byId;
    std::set<std::string> out;
    const auto mode = query.at("mode").get<std::string>();
    for (const auto& id : eligible) {
        const auto& name = byId.at(id)->name;
        bool keep = true;
        if (mode == "fullText") {
            keep = lower(name).find(lower(query.at("text").get<std::string>())) != std::string::npos;
        } else if (mode == "regex") {
            keep = std::regex_search(name, std::regex(query.at("text").get<std::string>()));
        } else {
            for (const auto& c : query.at("clauses")) {
                const auto actual = property(v, id, c.at("property").get<std::string>());
                if (!clauseHolds(actual, c.at("operator").get<std::string>(), c.at("value"))) {
                    keep = false;
                    break;
                }
            }
        }
        if (keep) out.insert(id);
    }
    return out;
}

nlohmann::json randomClause(std::mt19937_64& rng, const RawGraph& g) {
    using nlohmann::json;
    const auto& e = g.entities[uniform(rng, 0, static_cast<int>(g.entities.size()) - 1)];
    auto fragment = [&](const std::string& s) {
        if (s.empty()) return std::string();
        const int a = uniform(rng, 0, static_cast<int>(s.size()) - 1);
        return s.substr(a, uniform(rng, 1, static_cast<int>(s.size()) - a));
    };
    switch (uniform(rng, 0, 11)) {
    case 0: return {{"property", "name"}, {"operator", "contains"}, {"value", fragment(e.name)}};
    case 1: return {{"property", "name"}, {"operator", "startsWith"}, {"value", e.name.substr(0, 3)}};
    case 2: return {{"property", "name"}, {"operator", "equals"}, {"value", e.name}};
    case 3: return {{"property", "name"}, {"operator", "matchesRegex"}, {"value", "^[A-N].*(e|a)"}};
    case 4: {
        static const char* kinds[] = {"type", "method", "field", "namespace", "project"};
        return {{"property", "kind"}, {"operator", "equals"}, {"value", kinds[uniform(rng, 0, 4)]}};
    }
    case 5:
        return {{"property", "typeKind"}, {"operator", "oneOf"}, {"value", json::array({"class", "struct"})}};
    case 6: {
        static const char* props[] = {"isStatic", "isAbstract", "isSealed", "isRecord", "hasOwnError",
                                      "hasOwnWarning", "hasSubtreeError", "hasSubtreeWarning"};
        return {{"property", props[uniform(rng, 0, 7)]}, {"operator", "is"}, {"value", coin(rng, 0.5)}};
    }
    case 7: {
        static const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
        return {{"property", coin(rng, 0.5) ? "memberCount" : "subtreeHeight"},
                {"operator", ops[uniform(rng, 0, 5)]},
                {"value", uniform(rng, 0, 5)}};
    }
    case 8: {
        static const char* levels[] = {"public", "private", "internal", "protectedInternal"};
        return {{"property", "accessibility"}, {"operator", "equals"}, {"value", levels[uniform(rng, 0, 3)]}};
    }
    case 9: return {{"property", "commentText"}, {"operator", "contains"}, {"value", coin(rng, 0.5) ? "About" : "Remark"}};
    case 10: return {{"property", "projectName"}, {"operator", "contains"}, {"value", fragment(e.name)}};
    default:
        if (coin(rng, 0.5)) {
            return {{"property", "methodKind"}, {"operator", "oneOf"}, {"value", json::array({"constructor", "getter"})}};
        }
        return {{"property", "namespacePath"}, {"operator", coin(rng, 0.5) ? "contains" : "startsWith"},
                {"value", fragment(e.name)}};
    }
}

nlohmann::json randomQuery(std::mt19937_64& rng, const RawGraph& g) {
    using nlohmann::json;
    const auto& e = g.entities[uniform(rng, 0, static_cast<int>(g.entities.size()) - 1)];
    switch (uniform(rng, 0, 3)) {
    case 0: {
        auto text = e.name.substr(0, uniform(rng, 1, static_cast<int>(e.name.size())));
        for (auto& c : text) {
            if (coin(rng, 0.5) && c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        }
        return {{"mode", "fullText"}, {"text", text}};
    }
    case 1: {
        static const char* patterns[] = {"^Node", "e$", "(Graph|Map)", "[xz]", "Service.*Core", "o{2}"};
        return {{"mode", "regex"}, {"text", patterns[uniform(rng, 0, 5)]}};
    }
    default: {
        json clauses = json::array();
        const int n = uniform(rng, 1, 3);
        while (static_cast<int>(clauses.size()) < n) clauses.push_back(randomClause(rng, g));
        return {{"mode", "builder"}, {"clauses", clauses}};
    }
    }
}

SessionModel::SessionModel(const RawGraph& g) : graph(&g), parent(g.parents()), kids(g.children()) {
    for (const auto& e : g.entities) {
        if (e.kind == EntityKind::Solution && !kids[e.id].empty()) expanded.insert(e.id);
    }
}

bool SessionModel::visible(const std::string& id) const {
    if (removed.count(id)) return false;
    for (auto it = parent.find(id); it != parent.end(); it = parent.find(it->second)) {
        if (!expanded.count(it->second)) return false;
    }
    return true;
}

std::set<std::string> SessionModel::visibleSet() const {
    std::set<std::string> out;
    for (const auto& e : graph->entities) {
        if (visible(e.id)) out.insert(e.id);
    }
    return out;
}

void SessionModel::tidy() {
    for (auto it = dimmed.begin(); it != dimmed.end();) {
        it = visible(*it) ? std::next(it) : dimmed.erase(it);
    }
    if (selection && !visible(*selection)) selection.reset();
}

} // namespace helgraph::testing::oracle
