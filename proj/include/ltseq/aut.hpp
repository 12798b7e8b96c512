/*
 * Copyright 2026 The ltseq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LTSEQ_AUT_HPP
#define LTSEQ_AUT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lts.hpp"

namespace ltseq {

/// Error in a textual input document; line numbers are 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
        ++pos;
}

inline bool eat(std::string_view s, std::size_t& pos, char c) {
    skip_ws(s, pos);
    if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
    }
    return false;
}

inline std::uint64_t parse_number(std::string_view s, std::size_t& pos, std::size_t line,
                                  const char* what) {
    skip_ws(s, pos);
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
        throw parse_error(line, std::string("expected ") + what);
    std::uint64_t value = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(s[pos] - '0');
        if (value > std::numeric_limits<state_t>::max())
            throw parse_error(line, std::string(what) + " too large");
        ++pos;
    }
    return value;
}

/// Splits into lines, accepting both "\n" and "\r\n" endings.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size())
                lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

} // namespace detail

/// Parses an Aldebaran (.aut) document:
///
///     des (first_state,nr_transitions,nr_states)
///     (src,"label",tgt)
///     ...
///
/// Whitespace around commas and parentheses is tolerated, blank lines are
/// skipped, and the label token "tau" (case-sensitive) denotes the silent
/// action. All failures carry the offending line number.
inline Lts parse_aut(std::string_view text) {
    using detail::eat;
    using detail::parse_number;
    using detail::skip_ws;

    const auto lines = detail::split_lines(text);
    if (lines.empty())
        throw parse_error(1, "empty document, expected 'des' header");

    std::size_t header_line = 0;
    std::string_view header = lines[0];
    std::size_t pos = 0;
    skip_ws(header, pos);
    if (header.substr(pos, 3) != "des")
        throw parse_error(1, "malformed header: expected 'des (init,transitions,states)'");
    pos += 3;
    if (!eat(header, pos, '('))
        throw parse_error(1, "malformed header: expected '(' after 'des'");
    std::uint64_t first_state = parse_number(header, pos, 1, "initial state");
    if (!eat(header, pos, ','))
        throw parse_error(1, "malformed header: expected ','");
    std::uint64_t nr_transitions = parse_number(header, pos, 1, "transition count");
    if (!eat(header, pos, ','))
        throw parse_error(1, "malformed header: expected ','");
    std::uint64_t nr_states = parse_number(header, pos, 1, "state count");
    if (!eat(header, pos, ')'))
        throw parse_error(1, "malformed header: expected ')'");
    skip_ws(header, pos);
    if (pos != header.size())
        throw parse_error(1, "malformed header: trailing characters");
    if (nr_states == 0)
        throw parse_error(1, "state count must be at least 1");
    if (first_state >= nr_states)
        throw parse_error(1, "initial state " + std::to_string(first_state) +
                                 " not below state count " + std::to_string(nr_states));

    std::vector<Lts::raw_transition> transitions;
    transitions.reserve(nr_transitions);
    std::unordered_set<std::string> seen;
    seen.reserve(nr_transitions * 2);

    std::size_t last_line = header_line + 1;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = lines[i];
        std::size_t p = 0;
        skip_ws(line, p);
        if (p == line.size())
            continue;
        last_line = line_no;

        if (!eat(line, p, '('))
            throw parse_error(line_no, "expected '(src,\"label\",tgt)'");
        std::uint64_t src = parse_number(line, p, line_no, "source state");
        if (!eat(line, p, ','))
            throw parse_error(line_no, "expected ',' after source state");
        skip_ws(line, p);
        if (p >= line.size() || line[p] != '"')
            throw parse_error(line_no, "expected '\"' opening the label");
        ++p;
        std::size_t close = line.find('"', p);
        if (close == std::string_view::npos)
            throw parse_error(line_no, "unterminated quote in label");
        std::string label(line.substr(p, close - p));
        if (label.empty())
            throw parse_error(line_no, "empty label");
        p = close + 1;
        if (!eat(line, p, ','))
            throw parse_error(line_no, "expected ',' after label");
        std::uint64_t tgt = parse_number(line, p, line_no, "target state");
        if (!eat(line, p, ')'))
            throw parse_error(line_no, "expected ')'");
        skip_ws(line, p);
        if (p != line.size())
            throw parse_error(line_no, "trailing characters after transition");

        if (src >= nr_states)
            throw parse_error(line_no, "source state " + std::to_string(src) +
                                           " not below state count " + std::to_string(nr_states));
        if (tgt >= nr_states)
            throw parse_error(line_no, "target state " + std::to_string(tgt) +
                                           " not below state count " + std::to_string(nr_states));
        if (transitions.size() + 1 > nr_transitions)
            throw parse_error(line_no, "transition count mismatch: header declares " +
                                           std::to_string(nr_transitions));

        std::string key = std::to_string(src) + "\x1f" + label + "\x1f" + std::to_string(tgt);
        if (!seen.insert(std::move(key)).second)
            throw parse_error(line_no, "duplicate transition");

        transitions.emplace_back(static_cast<state_t>(src), std::move(label),
                                 static_cast<state_t>(tgt));
    }

    if (transitions.size() != nr_transitions)
        throw parse_error(last_line, "transition count mismatch: header declares " +
                                         std::to_string(nr_transitions) + ", found " +
                                         std::to_string(transitions.size()));

    return Lts(static_cast<state_t>(nr_states), static_cast<state_t>(first_state), transitions);
}

/// Canonical .aut form: header, then transitions sorted by
/// (source, label name, target), "\n" line endings. parse_aut(write_aut(L))
/// reproduces L exactly.
inline std::string write_aut(const Lts& lts) {
    std::string out = "des (" + std::to_string(lts.initial()) + "," +
                      std::to_string(lts.transitions().size()) + "," +
                      std::to_string(lts.num_states()) + ")\n";
    for (const Transition& t : lts.transitions()) {
        out += "(" + std::to_string(t.src) + ",\"" + lts.label(t.label).name() + "\"," +
               std::to_string(t.tgt) + ")\n";
    }
    return out;
}

/// Partition text format: one block per line, members as space-separated
/// state indices. Accepts members in any order; write_partition emits blocks
/// sorted by minimum member and members ascending.
inline Partition parse_partition(std::string_view text, state_t num_states) {
    std::vector<std::vector<state_t>> blocks;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = lines[i];
        std::size_t p = 0;
        detail::skip_ws(line, p);
        if (p == line.size())
            continue;
        std::vector<state_t> block;
        while (p < line.size()) {
            std::uint64_t v = detail::parse_number(line, p, line_no, "state index");
            if (v >= num_states)
                throw parse_error(line_no, "state index " + std::to_string(v) +
                                               " not below state count " +
                                               std::to_string(num_states));
            block.push_back(static_cast<state_t>(v));
            detail::skip_ws(line, p);
        }
        blocks.push_back(std::move(block));
    }
    try {
        return Partition::from_blocks(num_states, blocks);
    } catch (const std::invalid_argument& e) {
        throw parse_error(lines.size(), e.what());
    }
}

inline std::string write_partition(const Partition& p) {
    std::string out;
    for (const auto& block : p.blocks()) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(block[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace ltseq

#endif // LTSEQ_AUT_HPP
