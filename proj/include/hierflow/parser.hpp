#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hierflow/errors.hpp"
#include "hierflow/level.hpp"

namespace hierflow {

namespace detail {

inline constexpr std::string_view kTurnstile = "⊢";  // U+22A2

inline bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

inline bool contains_word(std::string_view line, std::string_view word) {
    std::size_t pos = 0;
    while ((pos = line.find(word, pos)) != std::string_view::npos) {
        bool left_ok = pos == 0 || !is_word_char(line[pos - 1]);
        std::size_t after = pos + word.size();
        bool right_ok = after >= line.size() || !is_word_char(line[after]);
        if (left_ok && right_ok) return true;
        pos += 1;
    }
    return false;
}

inline std::string_view ltrim(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

inline bool is_fence_line(std::string_view line) {
    return ltrim(line).substr(0, 3) == "```";
}

}  // namespace detail

// Classifies one line of Lean tactic-state text. Rule order follows the
// turnstile > case > Type > colon precedence; a line matching no rule keeps
// the level of the line before it (continuation).
inline HierLevel classify_line(std::string_view line, HierLevel current) {
    using namespace detail;
    if (line.find(kTurnstile) != std::string_view::npos) return HierLevel::Goal;
    std::string_view body = ltrim(line);
    if (body.substr(0, 4) == "case" && (body.size() == 4 || !is_word_char(body[4])))
        return HierLevel::Case;
    bool has_colon = line.find(':') != std::string_view::npos;
    if (has_colon && contains_word(line, "Type")) return HierLevel::Type;
    if (has_colon) return HierLevel::Instance;
    return current;
}

namespace detail {

inline void append_segment(std::vector<Segment>& segs, std::size_t start,
                           std::size_t end, HierLevel level) {
    if (start >= end) return;
    if (!segs.empty() && segs.back().end == start && segs.back().level == level) {
        segs.back().end = end;  // coalesce adjacent equal-level spans
    } else {
        segs.push_back(Segment{start, end, level});
    }
}

// Yields (line_start, line_end_including_newline) pairs over [begin, end).
template <typename Fn>
inline void for_each_line(std::string_view text, std::size_t begin, std::size_t end, Fn&& fn) {
    std::size_t pos = begin;
    while (pos < end) {
        std::size_t nl = text.find('\n', pos);
        std::size_t line_end = (nl == std::string_view::npos || nl >= end) ? end : nl + 1;
        fn(pos, line_end);
        pos = line_end;
    }
}

}  // namespace detail

// Splits the input into level segments. Material outside ``` fenced blocks
// (and the fence lines themselves) is context; lines inside a block are
// classified with classify_line, carrying the level across continuation
// lines. Without any fence the whole input is treated as code. An opening
// fence with no closing fence raises MalformedFence.
inline LevelAssignment parse_theorem_text(const std::string& text) {
    using namespace detail;
    LevelAssignment out;
    out.text = text;
    if (text.empty()) return out;

    // Locate fenced code blocks as [content_begin, content_end) byte ranges.
    struct Block {
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Block> blocks;
    bool any_fence = false;
    {
        bool in_block = false;
        std::size_t content_begin = 0;
        for_each_line(text, 0, text.size(), [&](std::size_t ls, std::size_t le) {
            if (!is_fence_line(std::string_view(text).substr(ls, le - ls))) return;
            any_fence = true;
            if (!in_block) {
                in_block = true;
                content_begin = le;
            } else {
                in_block = false;
                blocks.push_back(Block{content_begin, ls});
            }
        });
        if (in_block) throw MalformedFence("opening ``` fence without a closing fence");
    }
    if (!any_fence) blocks.push_back(Block{0, text.size()});

    std::size_t cursor = 0;
    for (const Block& b : blocks) {
        append_segment(out.segments, cursor, b.begin, HierLevel::Context);
        HierLevel current = HierLevel::Context;
        for_each_line(text, b.begin, b.end, [&](std::size_t ls, std::size_t le) {
            std::string_view line(text.data() + ls, le - ls);
            if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
            current = classify_line(line, current);
            append_segment(out.segments, ls, le, current);
        });
        cursor = b.end;
    }
    append_segment(out.segments, cursor, text.size(), HierLevel::Context);
    return out;
}

// Maps tokenizer spans onto segment levels. A token takes the level of the
// segment containing its first byte.
inline std::vector<HierLevel> align_tokens(
    const LevelAssignment& assignment,
    const std::vector<std::pair<std::size_t, std::size_t>>& token_spans) {
    std::vector<HierLevel> levels;
    levels.reserve(token_spans.size());
    std::size_t seg = 0;
    for (const auto& [start, end] : token_spans) {
        if (start > end || end > assignment.text.size() || start >= assignment.text.size())
            throw SpanOutOfBounds("token span [" + std::to_string(start) + ", " +
                                  std::to_string(end) + ") outside text of length " +
                                  std::to_string(assignment.text.size()));
        while (seg < assignment.segments.size() && assignment.segments[seg].end <= start) ++seg;
        if (seg >= assignment.segments.size())
            throw SpanOutOfBounds("token span start not covered by any segment");
        levels.push_back(assignment.segments[seg].level);
    }
    return levels;
}

// Rewrites the text with every segment wrapped in an explicit level tag,
// e.g. <goal>...</goal>. Stripping the tags recovers the input exactly.
inline std::string render_explicit_tags(const LevelAssignment& assignment) {
    std::string out;
    for (const Segment& s : assignment.segments) {
        std::string_view name = level_name(s.level);
        out += '<';
        out += name;
        out += '>';
        out += assignment.text.substr(s.start, s.end - s.start);
        out += "</";
        out += name;
        out += '>';
    }
    return out;
}

// Removes every level tag produced by render_explicit_tags.
inline std::string strip_level_tags(std::string_view tagged) {
    std::string out;
    out.reserve(tagged.size());
    std::size_t i = 0;
    while (i < tagged.size()) {
        bool matched = false;
        if (tagged[i] == '<') {
            for (std::string_view name : kLevelNames) {
                for (bool closing : {false, true}) {
                    std::string tag = closing ? "</" : "<";
                    tag += name;
                    tag += '>';
                    if (tagged.substr(i, tag.size()) == tag) {
                        i += tag.size();
                        matched = true;
                        break;
                    }
                }
                if (matched) break;
            }
        }
        if (!matched) out += tagged[i++];
    }
    return out;
}

// Builds an assignment over prefix + inner.text + suffix, keeping the inner
// segmentation and marking the surrounding material as context. Used to
// place a parsed proof state inside a prompt template.
inline LevelAssignment embed_assignment(const std::string& prefix,
                                        const LevelAssignment& inner,
                                        const std::string& suffix) {
    LevelAssignment out;
    out.text = prefix + inner.text + suffix;
    detail::append_segment(out.segments, 0, prefix.size(), HierLevel::Context);
    for (const Segment& s : inner.segments)
        detail::append_segment(out.segments, s.start + prefix.size(), s.end + prefix.size(),
                               s.level);
    detail::append_segment(out.segments, prefix.size() + inner.text.size(), out.text.size(),
                           HierLevel::Context);
    return out;
}

}  // namespace hierflow
