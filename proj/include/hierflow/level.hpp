#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hierflow/errors.hpp"

namespace hierflow {

// Five-level hierarchy, totally ordered from background context up to the
// proof goal.
enum class HierLevel : int {
    Context = 0,
    Case = 1,
    Type = 2,
    Instance = 3,
    Goal = 4,
};

inline constexpr int kLevelCount = 5;

inline constexpr std::array<std::string_view, kLevelCount> kLevelNames = {
    "context", "case", "type", "instance", "goal"};

inline int level_rank(HierLevel l) { return static_cast<int>(l); }

inline std::string_view level_name(HierLevel l) {
    return kLevelNames[static_cast<std::size_t>(l)];
}

inline HierLevel level_from_rank(int rank) {
    if (rank < 0 || rank >= kLevelCount)
        throw Error("level rank out of range: " + std::to_string(rank));
    return static_cast<HierLevel>(rank);
}

inline HierLevel level_from_name(std::string_view name) {
    for (int i = 0; i < kLevelCount; ++i)
        if (kLevelNames[static_cast<std::size_t>(i)] == name)
            return static_cast<HierLevel>(i);
    throw Error("unknown level name: " + std::string(name));
}

// Half-open byte range [start, end) of the input carrying one level.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;
    HierLevel level = HierLevel::Context;

    bool operator==(const Segment&) const = default;
};

// Parsed text with its level segmentation. Segments are sorted, disjoint,
// and cover [0, text.size()) exactly.
struct LevelAssignment {
    std::string text;
    std::vector<Segment> segments;
    std::optional<std::vector<HierLevel>> token_levels;

    bool operator==(const LevelAssignment& o) const {
        return text == o.text && segments == o.segments && token_levels == o.token_levels;
    }

    nlohmann::json to_json() const {
        nlohmann::json segs = nlohmann::json::array();
        for (const Segment& s : segments) {
            segs.push_back({{"start", s.start}, {"end", s.end}, {"level", level_rank(s.level)}});
        }
        return {{"text", text}, {"segments", segs}};
    }

    static LevelAssignment from_json(const nlohmann::json& j) {
        LevelAssignment a;
        a.text = j.at("text").get<std::string>();
        for (const auto& s : j.at("segments")) {
            a.segments.push_back(Segment{s.at("start").get<std::size_t>(),
                                         s.at("end").get<std::size_t>(),
                                         level_from_rank(s.at("level").get<int>())});
        }
        return a;
    }
};

}  // namespace hierflow
