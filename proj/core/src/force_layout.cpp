#include "helgraph/layout.hpp"

#include <algorithm>
#include <numbers>

namespace helgraph {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic unit direction for a seed and a pair of keys.
Vec2 hashedDirection(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    const auto h = splitmix(seed ^ splitmix(a * 0x100000001B3ull + b));
    const double angle = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
    return {std::cos(angle), std::sin(angle)};
}

// Quadtree over node positions carrying mass and mass centers for Barnes-Hut.
class QuadTree {
public:
    QuadTree(std::span<const Vec2> positions, std::span<const double> mass) : positions_(positions), mass_(mass) {
        if (positions.empty()) return;
        double minX = positions[0].x, maxX = minX, minY = positions[0].y, maxY = minY;
        for (const auto& p : positions) {
            minX = std::min(minX, p.x);
            maxX = std::max(maxX, p.x);
            minY = std::min(minY, p.y);
            maxY = std::max(maxY, p.y);
        }
        const double size = std::max({maxX - minX, maxY - minY, 1e-9});
        cells_.push_back(makeCell({minX + size / 2, minY + size / 2}, size));
        cells_.reserve(positions.size() * 2);
        for (std::uint32_t i = 0; i < positions.size(); ++i) insert(0, i, 0);
        finalize(0);
    }

    // Repulsive force on `node` from everything in the tree.
    Vec2 repulsion(std::uint32_t node, double theta, double scale, std::uint64_t seed) const {
        Vec2 force;
        if (cells_.empty()) return force;
        std::vector<std::uint32_t> stack{0};
        const Vec2 p = positions_[node];
        const double m = mass_[node];
        while (!stack.empty()) {
            const auto& cell = cells_[stack.back()];
            stack.pop_back();
            if (cell.mass == 0.0) continue;
            if (cell.firstChild == kNone) {
                for (auto other : cell.points) {
                    if (other == node) continue;
                    force += pairForce(p, positions_[other], m * mass_[other] * scale, seed, node, other);
                }
                continue;
            }
            const Vec2 d = p - cell.massCenter;
            const double dist = d.norm();
            const bool inside = std::abs(p.x - cell.center.x) <= cell.size / 2 &&
                                std::abs(p.y - cell.center.y) <= cell.size / 2;
            if (!inside && dist > 0.0 && cell.size / dist < theta) {
                force += d * (scale * m * cell.mass / (dist * dist));
            } else {
                for (std::uint32_t q = 0; q < 4; ++q) stack.push_back(cell.firstChild + q);
            }
        }
        return force;
    }

    static Vec2 pairForce(Vec2 p, Vec2 q, double strength, std::uint64_t seed, std::uint32_t i,
                          std::uint32_t j) {
        const Vec2 d = p - q;
        const double dist2 = d.x * d.x + d.y * d.y;
        if (dist2 > 0.0) return d * (strength / dist2);
        // Coincident nodes: push apart along a seeded direction at unit distance.
        const auto lo = std::min(i, j);
        const auto hi = std::max(i, j);
        Vec2 dir = hashedDirection(seed, lo, hi);
        if (i != lo) dir = dir * -1.0;
        return dir * strength;
    }

private:
    static constexpr std::uint32_t kNone = UINT32_MAX;
    static constexpr int kMaxDepth = 40;

    struct Cell {
        Vec2 center;
        double size = 0.0;
        std::uint32_t firstChild = kNone;
        std::vector<std::uint32_t> points;
        double mass = 0.0;
        Vec2 massCenter;
    };

    static Cell makeCell(Vec2 center, double size) {
        Cell cell;
        cell.center = center;
        cell.size = size;
        return cell;
    }

    void insert(std::uint32_t cellIndex, std::uint32_t point, int depth) {
        if (cells_[cellIndex].firstChild == kNone) {
            if (cells_[cellIndex].points.empty() || depth >= kMaxDepth) {
                cells_[cellIndex].points.push_back(point);
                return;
            }
            // A leaf above the depth limit holds exactly one point; push it down.
            const auto resident = cells_[cellIndex].points.front();
            cells_[cellIndex].points.clear();
            split(cellIndex);
            cells_[childFor(cellIndex, positions_[resident])].points.push_back(resident);
        }
        insert(childFor(cellIndex, positions_[point]), point, depth + 1);
    }

    void split(std::uint32_t cellIndex) {
        const auto first = static_cast<std::uint32_t>(cells_.size());
        const Vec2 c = cells_[cellIndex].center;
        const double half = cells_[cellIndex].size / 2;
        const double q = half / 2;
        cells_.push_back(makeCell({c.x - q, c.y - q}, half));
        cells_.push_back(makeCell({c.x + q, c.y - q}, half));
        cells_.push_back(makeCell({c.x - q, c.y + q}, half));
        cells_.push_back(makeCell({c.x + q, c.y + q}, half));
        cells_[cellIndex].firstChild = first;
    }

    std::uint32_t childFor(std::uint32_t cellIndex, Vec2 p) const {
        const auto& cell = cells_[cellIndex];
        std::uint32_t quadrant = (p.x >= cell.center.x ? 1u : 0u) + (p.y >= cell.center.y ? 2u : 0u);
        return cell.firstChild + quadrant;
    }

    void finalize(std::uint32_t cellIndex) {
        // Children are appended after their parent, so a reverse sweep finishes them first.
        for (auto i = static_cast<std::ptrdiff_t>(cells_.size()) - 1; i >= static_cast<std::ptrdiff_t>(cellIndex); --i) {
            auto& cell = cells_[static_cast<std::size_t>(i)];
            double mass = 0.0;
            Vec2 weighted;
            if (cell.firstChild == kNone) {
                for (auto p : cell.points) {
                    mass += mass_[p];
                    weighted += positions_[p] * mass_[p];
                }
            } else {
                for (std::uint32_t q = 0; q < 4; ++q) {
                    const auto& child = cells_[cell.firstChild + q];
                    mass += child.mass;
                    weighted += child.massCenter * child.mass;
                }
            }
            cell.mass = mass;
            cell.massCenter = mass > 0.0 ? weighted * (1.0 / mass) : cell.center;
        }
    }

    std::span<const Vec2> positions_;
    std::span<const double> mass_;
    std::vector<Cell> cells_;
};

} // namespace

std::optional<std::uint32_t> LayoutState::slot(NodeIndex node) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    if (it == nodes.end() || *it != node) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes.begin());
}

Vec2 LayoutState::position(NodeIndex node) const {
    auto s = slot(node);
    if (!s) throw Error(ErrorCode::UnknownId, "node has no layout position");
    return positions[*s];
}

bool LayoutState::isPinned(NodeIndex node) const {
    auto s = slot(node);
    return s && pinned[*s] != 0;
}

LayoutState LayoutState::fromTree(const TidyTreeResult& tree) {
    LayoutState state;
    state.nodes.reserve(tree.slots.size());
    state.positions.reserve(tree.slots.size());
    for (const auto& s : tree.slots) {
        state.nodes.push_back(s.node);
        state.positions.push_back(s.position);
    }
    state.previousForces.assign(state.nodes.size(), {});
    state.pinned.assign(state.nodes.size(), 0);
    return state;
}

std::vector<LayoutEdge> collectLayoutEdges(const EntityGraph& graph, const LayoutState& state,
                                           const std::array<bool, kRelationCount>& enabled) {
    std::vector<std::uint32_t> slotOf(graph.size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < state.nodes.size(); ++i) slotOf[state.nodes[i]] = i;
    std::vector<LayoutEdge> edges;
    for (auto relation : kAllRelations) {
        if (!enabled[static_cast<std::size_t>(relation)]) continue;
        for (const auto& e : graph.edges(relation)) {
            const auto a = slotOf[e.source];
            const auto b = slotOf[e.target];
            if (a == UINT32_MAX || b == UINT32_MAX || a == b) continue;
            edges.push_back({a, b, 1.0});
        }
    }
    return edges;
}

LayoutState forceStep(LayoutState state, std::span<const LayoutEdge> edges, const ForceConfig& config) {
    const auto n = state.size();
    std::vector<double> mass(n, 1.0);
    for (const auto& e : edges) {
        mass[e.a] += 1.0;
        mass[e.b] += 1.0;
    }

    std::vector<Vec2> forces(n);
    const auto& pos = state.positions;

    if (n <= config.barnesHutCutover) {
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                const Vec2 f = QuadTree::pairForce(pos[i], pos[j], config.repulsionScale * mass[i] * mass[j],
                                                   config.seed, i, j);
                forces[i] += f;
                forces[j] -= f;
            }
        }
    } else {
        QuadTree tree(pos, mass);
        for (std::uint32_t i = 0; i < n; ++i) {
            forces[i] += tree.repulsion(i, config.barnesHutTheta, config.repulsionScale, config.seed);
        }
    }

    for (std::uint32_t i = 0; i < n; ++i) {
        const double dist = pos[i].norm();
        if (dist > 0.0) forces[i] -= pos[i] * (config.gravity * mass[i] / dist);
    }

    for (const auto& e : edges) {
        const double w = config.edgeWeightInfluence == 0.0 ? 1.0
                                                           : std::pow(e.weight, config.edgeWeightInfluence);
        const Vec2 pull = (pos[e.b] - pos[e.a]) * w;
        forces[e.a] += pull;
        forces[e.b] -= pull;
    }

    // Swinging and traction, weighted by mass for the global speed and unweighted for
    // the auto-stop mean.
    double totalSwinging = 0.0;
    double totalTraction = 0.0;
    double tractionSum = 0.0;
    std::size_t movable = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (state.pinned[i]) continue;
        const double swing = (forces[i] - state.previousForces[i]).norm();
        const double traction = 0.5 * (forces[i] + state.previousForces[i]).norm();
        totalSwinging += mass[i] * swing;
        totalTraction += mass[i] * traction;
        tractionSum += traction;
        ++movable;
    }
    state.meanTraction = movable == 0 ? 0.0 : tractionSum / static_cast<double>(movable);

    if (movable > 0 && totalSwinging > 0.0) {
        const double count = static_cast<double>(movable);
        const double estimatedJitter = 0.05 * std::sqrt(count);
        const double minJitter = std::sqrt(estimatedJitter);
        constexpr double kMaxJitter = 10.0;
        double jitter = config.jitterTolerance *
                        std::max(minJitter, std::min(kMaxJitter, estimatedJitter * totalTraction / (count * count)));
        constexpr double kMinSpeedEfficiency = 0.05;
        if (totalTraction > 0.0 && totalSwinging / totalTraction > 2.0) {
            if (state.speedEfficiency > kMinSpeedEfficiency) state.speedEfficiency *= 0.5;
            jitter = std::max(jitter, config.jitterTolerance);
        }
        const double targetSpeed = jitter * state.speedEfficiency * totalTraction / totalSwinging;
        if (totalSwinging > jitter * totalTraction) {
            if (state.speedEfficiency > kMinSpeedEfficiency) state.speedEfficiency *= 0.7;
        } else if (state.speed < 1000.0) {
            state.speedEfficiency *= 1.3;
        }
        constexpr double kMaxRise = 0.5;
        state.speed += std::min(targetSpeed - state.speed, kMaxRise * state.speed);
    }

    for (std::uint32_t i = 0; i < n; ++i) {
        if (!state.pinned[i]) {
            const double swing = mass[i] * (forces[i] - state.previousForces[i]).norm();
            const double factor = state.speed / (1.0 + std::sqrt(state.speed * swing));
            state.positions[i] += forces[i] * factor;
        }
        state.previousForces[i] = forces[i];
    }
    ++state.iteration;
    return state;
}

LayoutState runAutoLayout(LayoutState state, std::span<const LayoutEdge> edges, const ForceConfig& config,
                          const LayoutObserver& observer) {
    state.converged = false;
    for (std::size_t step = 0; step < config.maxIterations; ++step) {
        state = forceStep(std::move(state), edges, config);
        if (state.meanTraction < config.tractionThreshold) state.converged = true;
        if (observer) observer(state);
        if (state.converged) break;
    }
    return state;
}

LayoutState applyUserMove(LayoutState state, NodeIndex node, Vec2 position, bool pin) {
    auto s = state.slot(node);
    if (!s) throw Error(ErrorCode::UnknownId, "node is not part of the layout");
    state.positions[*s] = position;
    state.pinned[*s] = pin ? 1 : 0;
    state.previousForces[*s] = {};
    state.converged = false;
    return state;
}

LayoutState reconcileLayout(const LayoutState& previous, const EntityGraph& graph,
                            std::span<const NodeIndex> visible, std::uint64_t seed, double jitterRadius) {
    LayoutState next;
    next.nodes.assign(visible.begin(), visible.end());
    std::sort(next.nodes.begin(), next.nodes.end());
    next.nodes.erase(std::unique(next.nodes.begin(), next.nodes.end()), next.nodes.end());
    next.positions.resize(next.nodes.size());
    next.previousForces.assign(next.nodes.size(), {});
    next.pinned.assign(next.nodes.size(), 0);
    next.iteration = previous.iteration;

    for (std::uint32_t i = 0; i < next.nodes.size(); ++i) {
        const auto node = next.nodes[i];
        if (auto old = previous.slot(node)) {
            next.positions[i] = previous.positions[*old];
            next.pinned[i] = previous.pinned[*old];
            continue;
        }
        Vec2 anchor;
        for (auto p = graph.parent(node); p != kNoNode; p = graph.parent(p)) {
            if (auto old = previous.slot(p)) {
                anchor = previous.positions[*old];
                break;
            }
        }
        next.positions[i] = anchor + hashedDirection(seed, node, 0x5EED) * jitterRadius;
    }
    return next;
}

} // namespace helgraph
