#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hierflow/errors.hpp"
#include "hierflow/level.hpp"

namespace hierflow {

// Classification of attention flow between an ordered pair of levels.
enum class FlowType : int {
    Unrestricted = 0,  // equal levels
    Guided = 1,        // low -> high
    Limited = 2,       // high -> low
};

inline constexpr std::array<std::string_view, 3> kFlowNames = {"unrestricted", "guided",
                                                               "limited"};

inline std::string_view flow_name(FlowType f) {
    return kFlowNames[static_cast<std::size_t>(f)];
}

inline FlowType classify_flow(int src_rank, int dst_rank) {
    if (src_rank == dst_rank) return FlowType::Unrestricted;
    return src_rank < dst_rank ? FlowType::Guided : FlowType::Limited;
}

inline FlowType classify_flow(HierLevel src, HierLevel dst) {
    return classify_flow(level_rank(src), level_rank(dst));
}

// Binary permission matrix. bits(i, j) == 1 iff the level of source token i
// is <= the level of target token j, i.e. the flow is not Limited.
class FlowMask {
public:
    FlowMask() = default;
    explicit FlowMask(std::size_t n) : n_(n), bits_(n * n, 0) {}

    std::size_t n() const { return n_; }

    std::uint8_t operator()(std::size_t src, std::size_t dst) const {
        return bits_[src * n_ + dst];
    }
    void set(std::size_t src, std::size_t dst, bool allowed) {
        bits_[src * n_ + dst] = allowed ? 1 : 0;
    }

    bool operator==(const FlowMask&) const = default;

    nlohmann::json to_json() const {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < n_; ++i) {
            std::string row(n_, '0');
            for (std::size_t j = 0; j < n_; ++j)
                if ((*this)(i, j)) row[j] = '1';
            rows.push_back(row);
        }
        return {{"n", n_}, {"rows", rows}};
    }

    static FlowMask from_json(const nlohmann::json& j) {
        FlowMask m(j.at("n").get<std::size_t>());
        const auto& rows = j.at("rows");
        for (std::size_t i = 0; i < m.n_; ++i) {
            const std::string row = rows.at(i).get<std::string>();
            for (std::size_t jj = 0; jj < m.n_; ++jj) m.set(i, jj, row.at(jj) == '1');
        }
        return m;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

inline FlowMask build_mask(const std::vector<int>& ranks) {
    FlowMask mask(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i)
        for (std::size_t j = 0; j < ranks.size(); ++j)
            mask.set(i, j, ranks[i] <= ranks[j]);
    return mask;
}

inline FlowMask build_mask(const std::vector<HierLevel>& levels) {
    std::vector<int> ranks(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) ranks[i] = level_rank(levels[i]);
    return build_mask(ranks);
}

// Order-preserving map from hierarchy levels to merged ranks.
struct LevelMergeScheme {
    std::array<int, kLevelCount> mapping;

    // Coarse variant: case/type/instance collapse into one middle rank.
    static LevelMergeScheme coarse() { return LevelMergeScheme{{0, 1, 1, 1, 2}}; }
    static LevelMergeScheme identity() { return LevelMergeScheme{{0, 1, 2, 3, 4}}; }

    bool monotone() const {
        for (int i = 1; i < kLevelCount; ++i)
            if (mapping[i] < mapping[i - 1]) return false;
        return true;
    }
};

inline std::vector<int> merge_levels(const std::vector<HierLevel>& levels,
                                     const LevelMergeScheme& scheme) {
    if (!scheme.monotone())
        throw NonMonotoneScheme("level merge scheme must be order-preserving");
    std::vector<int> merged(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
        merged[i] = scheme.mapping[static_cast<std::size_t>(level_rank(levels[i]))];
    return merged;
}

// Per-layer penalty factors. With adaptation on, alpha_l = max(0, 1 - l/L)
// for 1-based layer l; the raw formula would go negative past the horizon,
// which would reward violations, so it is clamped at zero. With adaptation
// off, layers up to the horizon get full weight and the rest none.
struct LayerSchedule {
    std::size_t L_total = 0;
    std::size_t L = 0;
    bool adaptation_enabled = true;
    std::vector<double> alphas;

    double alpha(std::size_t layer_index0) const { return alphas[layer_index0]; }
    bool constrained(std::size_t layer_index0) const { return alphas[layer_index0] != 0.0; }
};

inline LayerSchedule layer_schedule(std::size_t L, std::size_t L_total,
                                    bool adaptation_enabled = true) {
    if (L < 1 || L > L_total)
        throw InvalidHorizon("constraint horizon L must satisfy 1 <= L <= L_total (got L=" +
                             std::to_string(L) + ", L_total=" + std::to_string(L_total) + ")");
    LayerSchedule s;
    s.L_total = L_total;
    s.L = L;
    s.adaptation_enabled = adaptation_enabled;
    s.alphas.resize(L_total);
    for (std::size_t l = 1; l <= L_total; ++l) {
        if (adaptation_enabled) {
            double a = 1.0 - static_cast<double>(l) / static_cast<double>(L);
            s.alphas[l - 1] = std::max(0.0, a);
        } else {
            s.alphas[l - 1] = l <= L ? 1.0 : 0.0;
        }
    }
    return s;
}

}  // namespace hierflow
