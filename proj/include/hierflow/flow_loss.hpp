#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hierflow/attention.hpp"
#include "hierflow/errors.hpp"
#include "hierflow/flow.hpp"

namespace hierflow {

// Flow regularization result. per_layer holds the unnormalized per-layer
// sums; total = sum(per_layer) / token_count.
struct FlowLossReport {
    double total = 0.0;
    std::vector<double> per_layer;
    double lambda = 0.0;
    std::size_t token_count = 0;
};

namespace detail {

inline void check_flow_shapes(const AttentionBatch& att, const FlowMask& mask,
                              const LayerSchedule& schedule,
                              const std::optional<std::vector<std::size_t>>& region) {
    if (mask.n() != att.n())
        throw ShapeMismatch("mask is " + std::to_string(mask.n()) + " tokens, attention is " +
                            std::to_string(att.n()));
    if (schedule.alphas.size() != att.L_total())
        throw ShapeMismatch("schedule covers " + std::to_string(schedule.alphas.size()) +
                            " layers, attention has " + std::to_string(att.L_total()));
    if (region) {
        for (std::size_t idx : *region)
            if (idx >= att.n()) throw ShapeMismatch("region index out of range");
    }
}

inline std::vector<std::size_t> region_or_all(const std::optional<std::vector<std::size_t>>& region,
                                              std::size_t n) {
    if (region) return *region;
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
}

}  // namespace detail

// Penalty on attention mass placed on Limited flows:
//   total = (1/|T|) sum_l alpha_l sum_{i,j in T} mean_h ReLU(att_l(t_i,t_j) * (1 - M_ij))
// where |T| is the size of the constrained region. The ReLU is a no-op on
// softmax outputs but kept so perturbed or pre-softmax inputs cannot earn a
// negative penalty.
inline FlowLossReport flow_loss(const AttentionBatch& att, const FlowMask& mask,
                                const LayerSchedule& schedule, double lambda = 0.0,
                                const std::optional<std::vector<std::size_t>>& region = {}) {
    detail::check_flow_shapes(att, mask, schedule, region);
    const std::vector<std::size_t> tokens = detail::region_or_all(region, att.n());

    FlowLossReport report;
    report.lambda = lambda;
    report.token_count = tokens.size();
    report.per_layer.assign(att.L_total(), 0.0);
    if (tokens.empty()) return report;

    const double inv_h = 1.0 / static_cast<double>(att.H());
    for (std::size_t l = 0; l < att.L_total(); ++l) {
        const double alpha = schedule.alpha(l);
        if (alpha == 0.0) continue;
        double layer_sum = 0.0;
        for (std::size_t src : tokens) {
            for (std::size_t dst : tokens) {
                if (mask(src, dst)) continue;
                for (std::size_t h = 0; h < att.H(); ++h) {
                    double invalid = att.at(l, h, dst, src);
                    if (invalid > 0.0) layer_sum += invalid * inv_h;
                }
            }
        }
        report.per_layer[l] = alpha * layer_sum;
    }
    double sum = 0.0;
    for (double v : report.per_layer) sum += v;
    report.total = sum / static_cast<double>(report.token_count);
    return report;
}

// Exact derivative of flow_loss with respect to the attention values:
//   d total / d values[l][h][q][k] = alpha_l * (1 - M_kq) * 1[value > 0] / (H * |T|)
// for source k and target q both inside the region, zero elsewhere.
inline std::vector<double> flow_loss_grad(
    const AttentionBatch& att, const FlowMask& mask, const LayerSchedule& schedule,
    const std::optional<std::vector<std::size_t>>& region = {}) {
    detail::check_flow_shapes(att, mask, schedule, region);
    const std::vector<std::size_t> tokens = detail::region_or_all(region, att.n());

    std::vector<double> grad(att.values().size(), 0.0);
    if (tokens.empty()) return grad;

    const double scale =
        1.0 / (static_cast<double>(att.H()) * static_cast<double>(tokens.size()));
    for (std::size_t l = 0; l < att.L_total(); ++l) {
        const double alpha = schedule.alpha(l);
        if (alpha == 0.0) continue;
        for (std::size_t src : tokens) {
            for (std::size_t dst : tokens) {
                if (mask(src, dst)) continue;
                for (std::size_t h = 0; h < att.H(); ++h) {
                    if (att.at(l, h, dst, src) > 0.0) {
                        std::size_t flat = ((l * att.H() + h) * att.n() + dst) * att.n() + src;
                        grad[flat] = alpha * scale;
                    }
                }
            }
        }
    }
    return grad;
}

// L = L_LM + lambda * L_flow.
inline double combined_loss(double lm_loss, const FlowLossReport& flow) {
    return lm_loss + flow.lambda * flow.total;
}

}  // namespace hierflow
