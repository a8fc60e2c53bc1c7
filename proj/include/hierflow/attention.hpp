#pragma once

#include <cstddef>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hierflow/errors.hpp"
#include "hierflow/util.hpp"

namespace hierflow {

// Post-softmax attention for a whole forward pass. values[l][h][q][k] is the
// weight with which key/source token k contributes to query/target token q.
// In flow terms att_l(t_i, t_j) lives at values[l][h][j][i]: i is the source,
// j the target.
class AttentionBatch {
public:
    AttentionBatch() = default;
    AttentionBatch(std::size_t L_total, std::size_t H, std::size_t n)
        : L_total_(L_total), H_(H), n_(n), values_(L_total * H * n * n, 0.0) {}

    std::size_t L_total() const { return L_total_; }
    std::size_t H() const { return H_; }
    std::size_t n() const { return n_; }

    double& at(std::size_t l, std::size_t h, std::size_t q, std::size_t k) {
        return values_[((l * H_ + h) * n_ + q) * n_ + k];
    }
    double at(std::size_t l, std::size_t h, std::size_t q, std::size_t k) const {
        return values_[((l * H_ + h) * n_ + q) * n_ + k];
    }

    // att_l(t_src, t_dst) averaged over heads.
    double flow_mean(std::size_t l, std::size_t src, std::size_t dst) const {
        double s = 0.0;
        for (std::size_t h = 0; h < H_; ++h) s += at(l, h, dst, src);
        return s / static_cast<double>(H_);
    }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::size_t L_total_ = 0;
    std::size_t H_ = 0;
    std::size_t n_ = 0;
    std::vector<double> values_;
};

// Dump format shared with the analyzer: one JSON header line, then one line
// of base64-encoded row-major little-endian f32 values.
inline void write_attention_dump(std::ostream& os, const AttentionBatch& att) {
    nlohmann::json header = {
        {"L_total", att.L_total()}, {"H", att.H()}, {"n", att.n()}, {"dtype", "f32"}};
    os << header.dump() << '\n';
    std::vector<unsigned char> raw(att.values().size() * 4);
    for (std::size_t i = 0; i < att.values().size(); ++i) {
        float f = static_cast<float>(att.values()[i]);
        std::memcpy(raw.data() + i * 4, &f, 4);
    }
    os << base64::encode(raw) << '\n';
}

inline void write_attention_dump(const std::string& path, const AttentionBatch& att) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoFailure("cannot open attention dump for writing: " + path);
    write_attention_dump(os, att);
}

inline AttentionBatch read_attention_dump(std::istream& is) {
    std::string header_line, data_line;
    if (!std::getline(is, header_line)) throw IoFailure("attention dump: missing header line");
    if (!std::getline(is, data_line)) throw IoFailure("attention dump: missing data line");
    nlohmann::json header = nlohmann::json::parse(header_line, nullptr, false);
    if (header.is_discarded()) throw IoFailure("attention dump: header is not valid JSON");
    if (header.value("dtype", "") != std::string("f32"))
        throw IoFailure("attention dump: unsupported dtype");
    AttentionBatch att(header.at("L_total").get<std::size_t>(), header.at("H").get<std::size_t>(),
                       header.at("n").get<std::size_t>());
    std::vector<unsigned char> raw = base64::decode(data_line);
    if (raw.size() != att.values().size() * 4)
        throw IoFailure("attention dump: payload size does not match header shape");
    for (std::size_t i = 0; i < att.values().size(); ++i) {
        float f;
        std::memcpy(&f, raw.data() + i * 4, 4);
        att.values()[i] = static_cast<double>(f);
    }
    return att;
}

inline AttentionBatch read_attention_dump(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoFailure("cannot open attention dump: " + path);
    return read_attention_dump(is);
}

}  // namespace hierflow
