#include "helgraph/entity_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace helgraph {
namespace {

bool declaresAllowed(EntityKind parent, EntityKind child) {
    switch (parent) {
    case EntityKind::Solution: return child == EntityKind::Project || child == EntityKind::Package;
    case EntityKind::Project: return child == EntityKind::Namespace;
    case EntityKind::Namespace: return child == EntityKind::Namespace || child == EntityKind::Type;
    case EntityKind::Type: return child == EntityKind::Type || isMemberKind(child);
    case EntityKind::Method: return child == EntityKind::Parameter;
    default: return false;
    }
}

bool isDependencyKind(EntityKind kind) {
    return kind == EntityKind::Project || kind == EntityKind::Package;
}

// Returns one cycle (as a list of node positions) in the directed graph, or empty.
std::vector<std::size_t> findCycle(std::size_t nodeCount,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> out(nodeCount);
    std::vector<std::vector<std::size_t>> in(nodeCount);
    std::vector<std::size_t> indegree(nodeCount, 0);
    for (const auto& [s, t] : edges) {
        out[s].push_back(t);
        in[t].push_back(s);
        ++indegree[t];
    }
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < nodeCount; ++i) {
        if (indegree[i] == 0) ready.push_back(i);
    }
    std::vector<bool> done(nodeCount, false);
    while (!ready.empty()) {
        auto n = ready.front();
        ready.pop_front();
        done[n] = true;
        for (auto t : out[n]) {
            if (--indegree[t] == 0) ready.push_back(t);
        }
    }
    auto start = std::find(done.begin(), done.end(), false);
    if (start == done.end()) return {};

    // Every unfinished node has an unfinished predecessor; walking them must revisit a node.
    std::size_t node = static_cast<std::size_t>(start - done.begin());
    std::vector<std::size_t> seenAt(nodeCount, nodeCount);
    std::vector<std::size_t> walk;
    while (seenAt[node] == nodeCount) {
        seenAt[node] = walk.size();
        walk.push_back(node);
        for (auto p : in[node]) {
            if (!done[p]) {
                node = p;
                break;
            }
        }
    }
    std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seenAt[node]),
                                   walk.end());
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

} // namespace

std::vector<Violation> validate(std::span<const Entity> entities,
                                std::span<const Relation> relations) {
    std::vector<Violation> out;
    auto report = [&out](ErrorCode code, std::string message, std::vector<std::string> context) {
        out.push_back({code, std::move(message), std::move(context)});
    };

    std::unordered_map<std::string_view, std::size_t> position;
    for (std::size_t i = 0; i < entities.size(); ++i) {
        const auto& e = entities[i];
        if (!position.emplace(e.id, i).second) {
            report(ErrorCode::DuplicateId, "entity id '" + e.id + "' appears more than once",
                   {e.id});
        }
    }

    for (const auto& e : entities) {
        if (e.modifiers.isAbstract && e.modifiers.isSealed) {
            report(ErrorCode::IllegalModifierCombination,
                   "'" + e.id + "' is both abstract and sealed", {e.id});
        }
        const bool isType = e.kind == EntityKind::Type;
        if (isType != e.typeKind.has_value()) {
            report(ErrorCode::KindMismatch,
                   "'" + e.id + "': typeKind must be present exactly for type entities", {e.id});
        }
        if ((e.kind == EntityKind::Method) != e.methodKind.has_value()) {
            report(ErrorCode::KindMismatch,
                   "'" + e.id + "': methodKind must be present exactly for method entities",
                   {e.id});
        }
        if (e.isRecord && !(isType && (e.typeKind == TypeKind::Class ||
                                       e.typeKind == TypeKind::Struct))) {
            report(ErrorCode::KindMismatch, "'" + e.id + "': only classes and structs are records",
                   {e.id});
        }
        if (e.accessibility && !(isType || isMemberKind(e.kind))) {
            report(ErrorCode::KindMismatch,
                   "'" + e.id + "': accessibility applies to types and members only", {e.id});
        }
        for (const auto& d : e.diagnostics) {
            if (d.code.empty()) {
                report(ErrorCode::KindMismatch, "'" + e.id + "' has a diagnostic without a code",
                       {e.id});
            }
        }
    }

    // Gather edges per relation, resolved to positions; dangling endpoints are reported.
    std::array<std::vector<std::pair<std::size_t, std::size_t>>, kRelationCount> resolved;
    for (const auto& relation : relations) {
        auto& bucket = resolved[static_cast<std::size_t>(relation.name)];
        for (const auto& edge : relation.edges) {
            auto s = position.find(edge.source);
            auto t = position.find(edge.target);
            if (s == position.end() || t == position.end()) {
                report(ErrorCode::DanglingEdge,
                       std::string(toString(relation.name)) + " edge (" + edge.source + ", " +
                           edge.target + ") references an unknown entity",
                       {edge.source, edge.target});
                continue;
            }
            bucket.emplace_back(s->second, t->second);
        }
    }
    for (auto& bucket : resolved) {
        std::sort(bucket.begin(), bucket.end());
        bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
    }

    const auto& declares = resolved[static_cast<std::size_t>(RelationName::Declares)];
    std::map<std::size_t, std::vector<std::size_t>> parentsOf;
    for (const auto& [s, t] : declares) parentsOf[t].push_back(s);
    for (const auto& [child, parents] : parentsOf) {
        if (parents.size() > 1) {
            std::vector<std::string> context{entities[child].id};
            for (auto p : parents) context.push_back(entities[p].id);
            report(ErrorCode::MultipleParents,
                   "'" + entities[child].id + "' has " + std::to_string(parents.size()) +
                       " declares parents",
                   std::move(context));
        }
    }

    if (auto cycle = findCycle(entities.size(), declares); !cycle.empty()) {
        std::vector<std::string> context;
        for (auto n : cycle) context.push_back(entities[n].id);
        auto message = "declares contains a cycle through '" + context.front() + "'";
        report(ErrorCode::DeclaresCycle, std::move(message), std::move(context));
    }

    for (const auto& [s, t] : declares) {
        if (!declaresAllowed(entities[s].kind, entities[t].kind)) {
            report(ErrorCode::KindMismatch,
                   std::string(toString(entities[s].kind)) + " '" + entities[s].id +
                       "' cannot declare " + std::string(toString(entities[t].kind)) + " '" +
                       entities[t].id + "'",
                   {entities[s].id, entities[t].id});
        }
    }

    for (std::size_t i = 0; i < entities.size(); ++i) {
        if (position.at(entities[i].id) != i) continue; // duplicates already reported
        if (entities[i].kind != EntityKind::Solution && !parentsOf.contains(i)) {
            report(ErrorCode::MissingParent,
                   std::string(toString(entities[i].kind)) + " '" + entities[i].id +
                       "' has no declares parent",
                   {entities[i].id});
        }
    }

    const auto& dependsOn = resolved[static_cast<std::size_t>(RelationName::DependsOn)];
    for (const auto& [s, t] : dependsOn) {
        if (!isDependencyKind(entities[s].kind) || !isDependencyKind(entities[t].kind)) {
            report(ErrorCode::KindMismatch,
                   "dependsOn (" + entities[s].id + ", " + entities[t].id +
                       ") must connect projects or packages",
                   {entities[s].id, entities[t].id});
        }
    }
    if (auto cycle = findCycle(entities.size(), dependsOn); !cycle.empty()) {
        std::vector<std::string> context;
        for (auto n : cycle) context.push_back(entities[n].id);
        auto message = "dependsOn contains a cycle through '" + context.front() + "'";
        report(ErrorCode::DependsOnCycle, std::move(message), std::move(context));
    }

    return out;
}

std::vector<Violation> validate(const EntityGraph& graph) {
    auto relations = graph.relations();
    return validate(graph.entities(), relations);
}

EntityGraph EntityGraph::build(std::vector<Entity> entities, std::vector<Relation> relations,
                               GraphMetadata metadata) {
    if (auto violations = validate(entities, relations); !violations.empty()) {
        throw Error(violations.front().code, violations.front().message);
    }

    EntityGraph g;
    g.metadata_ = std::move(metadata);
    g.entities_ = std::move(entities);
    std::sort(g.entities_.begin(), g.entities_.end(),
              [](const Entity& a, const Entity& b) { return a.id < b.id; });
    g.byId_.reserve(g.entities_.size());
    for (std::size_t i = 0; i < g.entities_.size(); ++i) {
        g.byId_.emplace(g.entities_[i].id, static_cast<NodeIndex>(i));
    }
    for (const auto& relation : relations) {
        auto& bucket = g.edges_[static_cast<std::size_t>(relation.name)];
        for (const auto& edge : relation.edges) {
            bucket.push_back({g.byId_.at(edge.source), g.byId_.at(edge.target)});
        }
    }
    for (auto& bucket : g.edges_) {
        std::sort(bucket.begin(), bucket.end());
        bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
    }
    g.index();
    return g;
}

void EntityGraph::index() {
    const auto n = entities_.size();
    for (std::size_t r = 0; r < kRelationCount; ++r) {
        auto fill = [n](Adjacency& adj, const std::vector<IndexEdge>& edges, bool forward) {
            adj.offsets.assign(n + 1, 0);
            for (const auto& e : edges) ++adj.offsets[(forward ? e.source : e.target) + 1];
            for (std::size_t i = 0; i < n; ++i) adj.offsets[i + 1] += adj.offsets[i];
            adj.targets.resize(edges.size());
            auto cursor = adj.offsets;
            // edges are sorted by (source, target), so both directions come out sorted
            for (const auto& e : edges) {
                auto from = forward ? e.source : e.target;
                adj.targets[cursor[from]++] = forward ? e.target : e.source;
            }
        };
        fill(out_[r], edges_[r], true);
        fill(in_[r], edges_[r], false);
    }

    parent_.assign(n, kNoNode);
    for (const auto& e : edges(RelationName::Declares)) parent_[e.target] = e.source;
    roots_.clear();
    for (NodeIndex i = 0; i < n; ++i) {
        if (parent_[i] == kNoNode) roots_.push_back(i);
    }

    // Breadth-first order from the roots; reversed, it visits children before parents.
    std::vector<NodeIndex> order(roots_.begin(), roots_.end());
    depth_.assign(n, 0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (auto c : children(order[head])) {
            depth_[c] = depth_[order[head]] + 1;
            order.push_back(c);
        }
    }

    height_.assign(n, 0);
    members_.assign(n, {});
    rollup_.assign(n, {});
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto node = *it;
        for (auto c : children(node)) {
            const auto& child = entities_[c];
            height_[node] = std::max(height_[node], height_[c] + 1);
            if (isMemberKind(child.kind)) {
                (child.modifiers.isStatic ? members_[node].staticCount
                                          : members_[node].instanceCount)++;
            }
            auto& r = rollup_[node];
            r.errorInSubtree = r.errorInSubtree || rollup_[c].errorInSubtree ||
                               child.hasDiagnostic(Severity::Error);
            r.warningInSubtree = r.warningInSubtree || rollup_[c].warningInSubtree ||
                                 child.hasDiagnostic(Severity::Warning);
        }
    }
}

std::optional<NodeIndex> EntityGraph::find(std::string_view id) const {
    auto it = byId_.find(std::string(id));
    if (it == byId_.end()) return std::nullopt;
    return it->second;
}

NodeIndex EntityGraph::indexOf(std::string_view id) const {
    if (auto found = find(id)) return *found;
    throw Error(ErrorCode::UnknownId, "no entity with id '" + std::string(id) + "'");
}

std::span<const NodeIndex> EntityGraph::outgoing(RelationName relation, NodeIndex node) const {
    if (node >= entities_.size()) throw Error(ErrorCode::UnknownId, "node index out of range");
    return out_[static_cast<std::size_t>(relation)].at(node);
}

std::span<const NodeIndex> EntityGraph::incoming(RelationName relation, NodeIndex node) const {
    if (node >= entities_.size()) throw Error(ErrorCode::UnknownId, "node index out of range");
    return in_[static_cast<std::size_t>(relation)].at(node);
}

bool EntityGraph::isAncestor(NodeIndex ancestor, NodeIndex node) const {
    for (auto p = parent(node); p != kNoNode; p = parent_[p]) {
        if (p == ancestor) return true;
    }
    return false;
}

MemberCounts EntityGraph::memberCounts(NodeIndex typeNode) const {
    const auto& e = entity(typeNode);
    if (e.kind != EntityKind::Type) {
        throw Error(ErrorCode::NotAType, "'" + e.id + "' is a " + std::string(toString(e.kind)));
    }
    return members_[typeNode];
}

std::vector<Relation> EntityGraph::relations() const {
    std::vector<Relation> out;
    for (auto name : kAllRelations) {
        Relation r{name, {}};
        for (const auto& e : edges(name)) {
            r.edges.push_back({entities_[e.source].id, entities_[e.target].id});
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace helgraph
