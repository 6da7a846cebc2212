#include "helgraph/glyph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <nlohmann/json.hpp>

namespace helgraph {
namespace {

using ColorMap = std::map<std::string, std::string, std::less<>>;

constexpr std::array<std::string_view, 14> kColorKeys{
    "solution", "project",   "package",  "namespace", "class",    "struct",   "enum",
    "interface", "delegate", "field",    "method",    "property", "event",    "parameter",
};

ColorMap makeMap(const std::array<std::string_view, 14>& colors) {
    ColorMap map;
    for (std::size_t i = 0; i < kColorKeys.size(); ++i) {
        map.emplace(std::string(kColorKeys[i]), std::string(colors[i]));
    }
    return map;
}

} // namespace

std::string_view toString(ScalingMode mode) noexcept {
    switch (mode) {
    case ScalingMode::Linear: return "linear";
    case ScalingMode::Sqrt: return "sqrt";
    case ScalingMode::Log: return "log";
    }
    return "?";
}

std::optional<ScalingMode> parseScalingMode(std::string_view text) noexcept {
    if (text == "linear") return ScalingMode::Linear;
    if (text == "sqrt") return ScalingMode::Sqrt;
    if (text == "log") return ScalingMode::Log;
    return std::nullopt;
}

std::string_view toString(IconId icon) noexcept {
    static constexpr std::array<std::string_view, kIconCount> names{
        "solution", "project",   "package",  "namespace", "class",  "recordClass",
        "struct",   "recordStruct", "enum",  "interface", "delegate", "field",
        "method",   "property",  "event",    "parameter",
    };
    return names[static_cast<std::size_t>(icon)];
}

std::string_view toString(IconStyle style) noexcept {
    return style == IconStyle::Filled ? "filled" : "stroked";
}

std::string_view toString(Contour contour) noexcept {
    switch (contour) {
    case Contour::None: return "none";
    case Contour::OctagonSolid: return "octagonSolid";
    case Contour::HexagonDashed: return "hexagonDashed";
    }
    return "?";
}

std::string_view toString(Effect effect) noexcept {
    switch (effect) {
    case Effect::None: return "none";
    case Effect::Smoke: return "smoke";
    case Effect::Fire: return "fire";
    }
    return "?";
}

const std::array<std::string_view, 14>& colorKeys() noexcept { return kColorKeys; }

std::string_view colorKey(const Entity& entity) noexcept {
    if (entity.kind == EntityKind::Type && entity.typeKind) return toString(*entity.typeKind);
    return toString(entity.kind);
}

bool isHexColor(std::string_view text) noexcept {
    return text.size() == 7 && text[0] == '#' &&
           std::all_of(text.begin() + 1, text.end(),
                       [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; });
}

// Key order: solution project package namespace class struct enum interface delegate
//            field method property event parameter
ColorPreset ColorPreset::vs() {
    return {"VS", makeMap({"#68217A", "#5C2D91", "#004880", "#7F7F7F", "#C27D1A", "#00539C",
                           "#C27D1A", "#1BA1E2", "#652D90", "#1E8AC9", "#6C3FA0", "#424242",
                           "#C27D1A", "#8A8A8A"})};
}

ColorPreset ColorPreset::universal() {
    return {"Universal", makeMap({"#7B4FA0", "#3E7CB1", "#A0522D", "#2E9E6A", "#D9822B", "#C0392B",
                                  "#8C9A2E", "#17A2B8", "#B8579F", "#4A6FE3", "#E0B000", "#6BBF59",
                                  "#E35D6A", "#8E7CC3"})};
}

ColorPreset ColorPreset::typeFocus() {
    return {"TypeFocus", makeMap({"#404040", "#555555", "#6A6A6A", "#808080", "#E6550D", "#3182BD",
                                  "#31A354", "#756BB1", "#D6616B", "#959595", "#AAAAAA", "#B5B5B5",
                                  "#C0C0C0", "#CCCCCC"})};
}

ColorPreset ColorPreset::custom(const ColorPreset& base, const ColorMap& overrides) {
    ColorPreset preset = base;
    preset.name = "custom";
    for (const auto& [key, color] : overrides) preset.colors[key] = color;
    return preset;
}

ColorPreset ColorPreset::byName(std::string_view name) {
    if (name == "VS") return vs();
    if (name == "Universal") return universal();
    if (name == "TypeFocus") return typeFocus();
    throw Error(ErrorCode::UnknownPreset, "unknown color preset '" + std::string(name) + "'");
}

double scaleMemberCount(double memberCount, ScalingMode mode, const GlyphConstants& c) {
    switch (mode) {
    case ScalingMode::Linear: return c.linearCoefficient * memberCount;
    case ScalingMode::Sqrt: return c.sqrtCoefficient * std::sqrt(memberCount);
    case ScalingMode::Log: return c.logCoefficient * std::log1p(memberCount);
    }
    return 0.0;
}

double computeRadius(const EntityGraph& graph, NodeIndex node, ScalingMode mode,
                     const GlyphConstants& constants) {
    const auto& e = graph.entity(node);
    double radius = constants.base(e.kind);
    if (isStructuralKind(e.kind)) {
        radius += constants.structuralBonusPerLevel * graph.subtreeHeight(node);
    }
    if (e.kind == EntityKind::Type) {
        radius += scaleMemberCount(graph.memberCounts(node).total(), mode, constants);
    }
    return radius;
}

double computeRadius(const EntityGraph& graph, std::string_view id, ScalingMode mode,
                     const GlyphConstants& constants) {
    return computeRadius(graph, graph.indexOf(id), mode, constants);
}

IconChoice resolveIcon(const Entity& e) {
    switch (e.kind) {
    case EntityKind::Solution: return {IconId::Solution, {}};
    case EntityKind::Project: return {IconId::Project, {}};
    case EntityKind::Package: return {IconId::Package, {}};
    case EntityKind::Namespace: return {IconId::Namespace, {}};
    case EntityKind::Type:
        switch (e.typeKind.value_or(TypeKind::Class)) {
        case TypeKind::Class: return {e.isRecord ? IconId::RecordClass : IconId::Class, {}};
        case TypeKind::Struct: return {e.isRecord ? IconId::RecordStruct : IconId::Struct, {}};
        case TypeKind::Enum: return {IconId::Enum, {}};
        case TypeKind::Interface: return {IconId::Interface, {}};
        case TypeKind::Delegate: return {IconId::Delegate, {}};
        }
        break;
    case EntityKind::Field: return {IconId::Field, {}};
    case EntityKind::Method: {
        IconChoice choice{IconId::Method, {}};
        if (e.methodKind && *e.methodKind != MethodKind::Ordinary) choice.methodBadge = e.methodKind;
        return choice;
    }
    case EntityKind::Property: return {IconId::Property, {}};
    case EntityKind::Event: return {IconId::Event, {}};
    case EntityKind::Parameter: return {IconId::Parameter, {}};
    }
    return {IconId::Solution, {}};
}

std::string resolveColor(const Entity& entity, const ColorPreset& preset) {
    if (auto it = preset.colors.find(colorKey(entity)); it != preset.colors.end()) return it->second;
    // Incomplete custom maps fall back to the Universal palette.
    return ColorPreset::universal().colors.find(colorKey(entity))->second;
}

double donutWidth(int memberTotal, const GlyphConstants& c) {
    return std::min(c.donutBaseWidth + c.donutWidthPerMember * memberTotal, c.donutMaxWidth);
}

GlyphSpec computeGlyph(const EntityGraph& graph, NodeIndex node, const GlyphStyle& style,
                       GlyphViewState view) {
    const auto& e = graph.entity(node);
    GlyphSpec g;
    g.radius = computeRadius(graph, node, style.scaling, style.constants);

    auto icon = resolveIcon(e);
    g.icon = icon.icon;
    g.methodBadge = icon.methodBadge;
    g.iconStyle = e.modifiers.isStatic ? IconStyle::Filled : IconStyle::Stroked;
    if (e.accessibility && *e.accessibility != Accessibility::Public) {
        g.accessibilityBadge = e.accessibility;
    }

    if (e.modifiers.isSealed) {
        g.contour = Contour::OctagonSolid;
    } else if (e.modifiers.isAbstract) {
        g.contour = Contour::HexagonDashed;
    }

    if (e.kind == EntityKind::Type) {
        const auto counts = graph.memberCounts(node);
        if (const int total = counts.total(); total > 0) {
            Donut donut;
            donut.staticFraction = static_cast<double>(counts.staticCount) / total;
            donut.instanceFraction = static_cast<double>(counts.instanceCount) / total;
            donut.width = donutWidth(total, style.constants);
            g.donut = donut;
        }
    }
    g.hatchInstanceSector = style.hatchInstanceSector;

    if (e.hasDiagnostic(Severity::Error)) {
        g.effect = Effect::Fire;
    } else if (e.hasDiagnostic(Severity::Warning)) {
        g.effect = Effect::Smoke;
    }

    const auto rollup = graph.diagnosticRollup(node);
    g.indicators.collapsedShadow = view.isCollapsed && !graph.children(node).empty();
    g.indicators.subtreeError = rollup.errorInSubtree;
    g.indicators.subtreeWarning = rollup.warningInSubtree;

    g.fillColor = resolveColor(e, style.preset);
    return g;
}

GlyphSpec computeGlyph(const EntityGraph& graph, std::string_view id, const GlyphStyle& style,
                       GlyphViewState view) {
    return computeGlyph(graph, graph.indexOf(id), style, view);
}

nlohmann::json toJson(const GlyphSpec& g) {
    nlohmann::json out{
        {"radius", g.radius},
        {"iconId", toString(g.icon)},
        {"iconStyle", toString(g.iconStyle)},
        {"contour", toString(g.contour)},
        {"effect", toString(g.effect)},
        {"hatchInstanceSector", g.hatchInstanceSector},
        {"fillColor", g.fillColor},
    };
    out["methodBadge"] = g.methodBadge ? nlohmann::json(toString(*g.methodBadge)) : nlohmann::json();
    out["accessibilityBadge"] =
        g.accessibilityBadge ? nlohmann::json(toString(*g.accessibilityBadge)) : nlohmann::json();
    if (g.donut) {
        out["donut"] = {{"staticFraction", g.donut->staticFraction},
                        {"instanceFraction", g.donut->instanceFraction},
                        {"width", g.donut->width}};
    } else {
        out["donut"] = nullptr;
    }
    auto indicators = nlohmann::json::array();
    if (g.indicators.collapsedShadow) indicators.push_back("collapsedShadow");
    if (g.indicators.subtreeError) indicators.push_back("subtreeError");
    if (g.indicators.subtreeWarning) indicators.push_back("subtreeWarning");
    out["indicators"] = std::move(indicators);
    return out;
}

} // namespace helgraph
