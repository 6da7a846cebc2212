#pragma once

#include "helgraph/entity_graph.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace helgraph {

enum class ScalingMode : std::uint8_t { Linear, Sqrt, Log };

std::string_view toString(ScalingMode mode) noexcept;
std::optional<ScalingMode> parseScalingMode(std::string_view text) noexcept;

/// Canonical icon identifiers. Method variants share the method icon and carry a
/// methodKind badge instead.
enum class IconId : std::uint8_t {
    Solution,
    Project,
    Package,
    Namespace,
    Class,
    RecordClass,
    Struct,
    RecordStruct,
    Enum,
    Interface,
    Delegate,
    Field,
    Method,
    Property,
    Event,
    Parameter,
};

inline constexpr std::size_t kIconCount = 16;

std::string_view toString(IconId icon) noexcept;

enum class IconStyle : std::uint8_t { Stroked, Filled };
enum class Contour : std::uint8_t { None, OctagonSolid, HexagonDashed };
enum class Effect : std::uint8_t { None, Smoke, Fire };

std::string_view toString(IconStyle style) noexcept;
std::string_view toString(Contour contour) noexcept;
std::string_view toString(Effect effect) noexcept;

struct Donut {
    double staticFraction = 0.0;
    double instanceFraction = 0.0;
    double width = 0.0;

    friend bool operator==(const Donut&, const Donut&) = default;
};

struct Indicators {
    bool collapsedShadow = false;
    bool subtreeError = false;
    bool subtreeWarning = false;

    friend bool operator==(const Indicators&, const Indicators&) = default;
};

struct IconChoice {
    IconId icon = IconId::Solution;
    /// Set for constructor/getter/setter/operator methods.
    std::optional<MethodKind> methodBadge;

    friend bool operator==(const IconChoice&, const IconChoice&) = default;
};

/// Every visual attribute of one node; the renderer derives nothing on its own.
struct GlyphSpec {
    double radius = 0.0;
    IconId icon = IconId::Solution;
    IconStyle iconStyle = IconStyle::Stroked;
    std::optional<MethodKind> methodBadge;
    /// Absent for public entities and for kinds without accessibility.
    std::optional<Accessibility> accessibilityBadge;
    Contour contour = Contour::None;
    std::optional<Donut> donut;
    bool hatchInstanceSector = true;
    Effect effect = Effect::None;
    Indicators indicators;
    std::string fillColor;

    friend bool operator==(const GlyphSpec&, const GlyphSpec&) = default;
};

/// Numeric constants of the radius and donut rules. All overridable from configuration.
struct GlyphConstants {
    std::array<double, 10> baseRadius{14, 12, 10, 10, 8, 5, 5, 5, 5, 4}; // indexed by EntityKind
    double structuralBonusPerLevel = 2.0;
    double linearCoefficient = 0.25;
    double sqrtCoefficient = 1.5;
    double logCoefficient = 3.0;
    double donutBaseWidth = 2.0;
    double donutWidthPerMember = 0.25;
    double donutMaxWidth = 12.0;

    double base(EntityKind kind) const { return baseRadius[static_cast<std::size_t>(kind)]; }
    friend bool operator==(const GlyphConstants&, const GlyphConstants&) = default;
};

/// Maps color keys (entity kind names, type kind names for types) to "#RRGGBB".
struct ColorPreset {
    std::string name;
    std::map<std::string, std::string, std::less<>> colors;

    static ColorPreset vs();
    static ColorPreset universal();
    static ColorPreset typeFocus();
    /// Starts from `base` and replaces the given keys verbatim.
    static ColorPreset custom(const ColorPreset& base,
                              const std::map<std::string, std::string, std::less<>>& overrides);
    /// VS, Universal or TypeFocus; throws UnknownPreset otherwise.
    static ColorPreset byName(std::string_view name);

    friend bool operator==(const ColorPreset&, const ColorPreset&) = default;
};

/// The fourteen keys every preset defines.
const std::array<std::string_view, 14>& colorKeys() noexcept;
/// "class", "struct", ... for types; the entity kind name otherwise.
std::string_view colorKey(const Entity& entity) noexcept;
bool isHexColor(std::string_view text) noexcept;

struct GlyphStyle {
    ColorPreset preset = ColorPreset::universal();
    ScalingMode scaling = ScalingMode::Sqrt;
    GlyphConstants constants;
    bool hatchInstanceSector = true;

    friend bool operator==(const GlyphStyle&, const GlyphStyle&) = default;
};

struct GlyphViewState {
    bool isCollapsed = false;
};

double scaleMemberCount(double memberCount, ScalingMode mode, const GlyphConstants& constants);

double computeRadius(const EntityGraph& graph, NodeIndex node, ScalingMode mode,
                     const GlyphConstants& constants = {});
double computeRadius(const EntityGraph& graph, std::string_view id, ScalingMode mode,
                     const GlyphConstants& constants = {});

IconChoice resolveIcon(const Entity& entity);

std::string resolveColor(const Entity& entity, const ColorPreset& preset);

double donutWidth(int memberTotal, const GlyphConstants& constants = {});

GlyphSpec computeGlyph(const EntityGraph& graph, NodeIndex node, const GlyphStyle& style,
                       GlyphViewState view = {});
GlyphSpec computeGlyph(const EntityGraph& graph, std::string_view id, const GlyphStyle& style,
                       GlyphViewState view = {});

nlohmann::json toJson(const GlyphSpec& glyph);

} // namespace helgraph
