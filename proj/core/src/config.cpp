#include "helgraph/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace helgraph {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) {
    throw Error(ErrorCode::MalformedDocument, "config: " + message);
}

void checkKeys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
    if (!object.is_object()) bad(where + " must be an object");
    for (const auto& [key, value] : object.items()) {
        if (!allowed.contains(key)) bad("unknown key '" + key + "' in " + where);
    }
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) bad("'" + key + "' must be a number");
    return v.get<double>();
}

double positive(const json& v, const std::string& key) {
    const double x = number(v, key);
    if (!(x > 0.0)) bad("'" + key + "' must be positive");
    return x;
}

double nonNegative(const json& v, const std::string& key) {
    const double x = number(v, key);
    if (!(x >= 0.0)) bad("'" + key + "' must be non-negative");
    return x;
}

std::size_t count(const json& v, const std::string& key) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() > 0)) {
        bad("'" + key + "' must be a positive integer");
    }
    const auto x = v.get<std::uint64_t>();
    if (x == 0) bad("'" + key + "' must be a positive integer");
    return static_cast<std::size_t>(x);
}

std::string color(const json& v, const std::string& key) {
    if (!v.is_string() || !isHexColor(v.get<std::string>())) bad("'" + key + "' must be #RRGGBB");
    return v.get<std::string>();
}

} // namespace

json toJson(const EngineConfig& c) {
    json baseRadius = json::object();
    for (auto kind : kAllEntityKinds) baseRadius[std::string(toString(kind))] = c.glyph.constants.base(kind);
    json colors = json::object();
    for (const auto& [key, value] : c.glyph.preset.colors) colors[key] = value;
    json relationStyles = json::object();
    for (auto name : kAllRelations) {
        const auto& style = c.relationStyles[static_cast<std::size_t>(name)];
        relationStyles[std::string(toString(name))] = {{"color", style.color}, {"thickness", style.thickness}};
    }
    const auto& k = c.glyph.constants;
    const auto& f = c.force;
    return json{
        {"colorPreset", c.glyph.preset.name},
        {"colors", colors},
        {"scalingMode", toString(c.glyph.scaling)},
        {"hatchInstanceSector", c.glyph.hatchInstanceSector},
        {"glyphConstants",
         {{"baseRadius", baseRadius},
          {"structuralBonusPerLevel", k.structuralBonusPerLevel},
          {"linearCoefficient", k.linearCoefficient},
          {"sqrtCoefficient", k.sqrtCoefficient},
          {"logCoefficient", k.logCoefficient},
          {"donutBaseWidth", k.donutBaseWidth},
          {"donutWidthPerMember", k.donutWidthPerMember},
          {"donutMaxWidth", k.donutMaxWidth}}},
        {"layout",
         {{"repulsionScale", f.repulsionScale},
          {"gravity", f.gravity},
          {"edgeWeightInfluence", f.edgeWeightInfluence},
          {"tractionThreshold", f.tractionThreshold},
          {"maxIterations", f.maxIterations},
          {"barnesHutTheta", f.barnesHutTheta},
          {"barnesHutCutover", f.barnesHutCutover},
          {"jitterTolerance", f.jitterTolerance},
          {"seed", f.seed},
          {"ringGap", c.tree.ringGap},
          {"expansionJitter", c.expansionJitter}}},
        {"relationStyles", relationStyles},
        {"snapshotRate", c.snapshotRate},
    };
}

EngineConfig configFromJson(const json& j, const EngineConfig& base) {
    checkKeys(j,
              {"colorPreset", "colors", "scalingMode", "hatchInstanceSector", "glyphConstants", "layout",
               "relationStyles", "snapshotRate"},
              "config");
    EngineConfig c = base;

    if (auto it = j.find("colorPreset"); it != j.end()) {
        if (!it->is_string()) bad("'colorPreset' must be a string");
        const auto name = it->get<std::string>();
        if (name != "custom") c.glyph.preset = ColorPreset::byName(name);
    }
    if (auto it = j.find("colors"); it != j.end()) {
        checkKeys(*it, {colorKeys().begin(), colorKeys().end()}, "colors");
        std::map<std::string, std::string, std::less<>> overrides;
        for (const auto& [key, value] : it->items()) overrides[key] = color(value, key);
        auto custom = ColorPreset::custom(c.glyph.preset, overrides);
        if (custom.colors != c.glyph.preset.colors) c.glyph.preset = std::move(custom);
    }
    if (auto it = j.find("scalingMode"); it != j.end()) {
        auto mode = it->is_string() ? parseScalingMode(it->get<std::string>()) : std::nullopt;
        if (!mode) bad("'scalingMode' must be linear, sqrt or log");
        c.glyph.scaling = *mode;
    }
    if (auto it = j.find("hatchInstanceSector"); it != j.end()) {
        if (!it->is_boolean()) bad("'hatchInstanceSector' must be a boolean");
        c.glyph.hatchInstanceSector = it->get<bool>();
    }
    if (auto it = j.find("glyphConstants"); it != j.end()) {
        checkKeys(*it,
                  {"baseRadius", "structuralBonusPerLevel", "linearCoefficient", "sqrtCoefficient",
                   "logCoefficient", "donutBaseWidth", "donutWidthPerMember", "donutMaxWidth"},
                  "glyphConstants");
        auto& k = c.glyph.constants;
        if (auto b = it->find("baseRadius"); b != it->end()) {
            if (!b->is_object()) bad("'baseRadius' must be an object");
            for (const auto& [key, value] : b->items()) {
                auto kind = parseEntityKind(key);
                if (!kind) bad("unknown entity kind '" + key + "' in baseRadius");
                k.baseRadius[static_cast<std::size_t>(*kind)] = positive(value, key);
            }
        }
        auto set = [&](const char* key, double& field) {
            if (auto v = it->find(key); v != it->end()) field = nonNegative(*v, key);
        };
        set("structuralBonusPerLevel", k.structuralBonusPerLevel);
        set("linearCoefficient", k.linearCoefficient);
        set("sqrtCoefficient", k.sqrtCoefficient);
        set("logCoefficient", k.logCoefficient);
        set("donutBaseWidth", k.donutBaseWidth);
        set("donutWidthPerMember", k.donutWidthPerMember);
        set("donutMaxWidth", k.donutMaxWidth);
    }
    if (auto it = j.find("layout"); it != j.end()) {
        checkKeys(*it,
                  {"repulsionScale", "gravity", "edgeWeightInfluence", "tractionThreshold", "maxIterations",
                   "barnesHutTheta", "barnesHutCutover", "jitterTolerance", "seed", "ringGap",
                   "expansionJitter"},
                  "layout");
        auto& f = c.force;
        const auto& l = *it;
        if (l.contains("repulsionScale")) f.repulsionScale = positive(l["repulsionScale"], "repulsionScale");
        if (l.contains("gravity")) f.gravity = nonNegative(l["gravity"], "gravity");
        if (l.contains("edgeWeightInfluence")) {
            f.edgeWeightInfluence = number(l["edgeWeightInfluence"], "edgeWeightInfluence");
        }
        // Zero is accepted: it disables auto-stop so every run uses maxIterations.
        if (l.contains("tractionThreshold")) {
            f.tractionThreshold = nonNegative(l["tractionThreshold"], "tractionThreshold");
        }
        if (l.contains("maxIterations")) f.maxIterations = count(l["maxIterations"], "maxIterations");
        if (l.contains("barnesHutTheta")) f.barnesHutTheta = positive(l["barnesHutTheta"], "barnesHutTheta");
        if (l.contains("barnesHutCutover")) f.barnesHutCutover = count(l["barnesHutCutover"], "barnesHutCutover");
        if (l.contains("jitterTolerance")) f.jitterTolerance = positive(l["jitterTolerance"], "jitterTolerance");
        if (l.contains("seed")) {
            if (!l["seed"].is_number_integer()) bad("'seed' must be an integer");
            f.seed = l["seed"].get<std::uint64_t>();
        }
        if (l.contains("ringGap")) c.tree.ringGap = positive(l["ringGap"], "ringGap");
        if (l.contains("expansionJitter")) c.expansionJitter = nonNegative(l["expansionJitter"], "expansionJitter");
    }
    if (auto it = j.find("relationStyles"); it != j.end()) {
        if (!it->is_object()) bad("'relationStyles' must be an object");
        for (const auto& [key, value] : it->items()) {
            auto name = parseRelationName(key);
            if (!name) bad("unknown relation '" + key + "' in relationStyles");
            checkKeys(value, {"color", "thickness"}, "relationStyles." + key);
            auto& style = c.relationStyles[static_cast<std::size_t>(*name)];
            if (value.contains("color")) style.color = color(value["color"], key + ".color");
            if (value.contains("thickness")) style.thickness = positive(value["thickness"], key + ".thickness");
        }
    }
    if (auto it = j.find("snapshotRate"); it != j.end()) c.snapshotRate = positive(*it, "snapshotRate");
    return c;
}

std::optional<std::filesystem::path> resolveConfigPath(const std::optional<std::filesystem::path>& explicitPath) {
    if (const char* env = std::getenv(kConfigEnvironmentVariable); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    return explicitPath;
}

EngineConfig loadConfig(const std::optional<std::filesystem::path>& explicitPath) {
    auto path = resolveConfigPath(explicitPath);
    if (!path) return {};
    std::ifstream in(*path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open config " + path->string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, "config " + path->string() + ": " + e.what());
    }
    return configFromJson(j);
}

} // namespace helgraph
