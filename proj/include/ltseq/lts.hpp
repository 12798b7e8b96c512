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

#ifndef LTSEQ_LTS_HPP
#define LTSEQ_LTS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace ltseq {

using state_t = std::uint32_t;
using label_id_t = std::uint32_t;

inline constexpr const char* tau_name = "tau";

/// An action label. The silent action is the one named "tau"; no alias is
/// recognized. Names must be nonempty and free of '"' and newline characters
/// so that every label survives a round trip through the .aut syntax.
class Label {
public:
    explicit Label(std::string name) : name_(std::move(name)) {
        if (name_.empty())
            throw std::invalid_argument("label name must be nonempty");
        if (name_.find('"') != std::string::npos || name_.find('\n') != std::string::npos)
            throw std::invalid_argument("label name must not contain '\"' or newline: " + name_);
    }

    const std::string& name() const noexcept { return name_; }
    bool is_tau() const noexcept { return name_ == tau_name; }

    friend bool operator==(const Label& a, const Label& b) noexcept { return a.name_ == b.name_; }
    friend auto operator<=>(const Label& a, const Label& b) noexcept { return a.name_ <=> b.name_; }

private:
    std::string name_;
};

/// One transition, with the label resolved to an index into the owning
/// Lts label table. Label ids are assigned in name order, so comparing
/// transitions lexicographically equals comparing by (src, label name, tgt).
struct Transition {
    state_t src;
    label_id_t label;
    state_t tgt;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// A finite labelled transition system. Immutable after construction:
/// all member functions are const and safe to call concurrently.
class Lts {
public:
    using raw_transition = std::tuple<state_t, std::string, state_t>;

    /// Builds an LTS from (source, label name, target) triples. Duplicate
    /// triples collapse (the transition relation is a set). extra_labels adds
    /// alphabet entries that need not occur on any transition.
    Lts(state_t num_states, state_t initial, const std::vector<raw_transition>& transitions,
        const std::vector<std::string>& extra_labels = {})
        : num_states_(num_states), initial_(initial) {
        if (num_states_ == 0)
            throw std::invalid_argument("an LTS needs at least one state");
        if (initial_ >= num_states_)
            throw std::invalid_argument("initial state out of range");

        std::vector<std::string> names;
        names.reserve(transitions.size() + extra_labels.size());
        for (const auto& [src, name, tgt] : transitions)
            names.push_back(name);
        for (const auto& name : extra_labels)
            names.push_back(name);
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        labels_.reserve(names.size());
        for (auto& name : names) {
            if (name == tau_name)
                tau_id_ = static_cast<label_id_t>(labels_.size());
            labels_.emplace_back(std::move(name));
        }

        transitions_.reserve(transitions.size());
        for (const auto& [src, name, tgt] : transitions) {
            if (src >= num_states_ || tgt >= num_states_)
                throw std::invalid_argument("transition endpoint out of range");
            transitions_.push_back(Transition{src, *label_id(name), tgt});
        }
        std::sort(transitions_.begin(), transitions_.end());
        transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                           transitions_.end());

        out_offsets_.assign(num_states_ + 1, 0);
        for (const auto& t : transitions_)
            ++out_offsets_[t.src + 1];
        for (state_t s = 0; s < num_states_; ++s)
            out_offsets_[s + 1] += out_offsets_[s];
    }

    state_t num_states() const noexcept { return num_states_; }
    state_t initial() const noexcept { return initial_; }

    /// All transitions, sorted by (src, label name, tgt), duplicate-free.
    std::span<const Transition> transitions() const noexcept { return transitions_; }

    /// Outgoing transitions of s, in label-name order.
    std::span<const Transition> out(state_t s) const {
        require_state(s);
        return {transitions_.data() + out_offsets_[s], out_offsets_[s + 1] - out_offsets_[s]};
    }

    const std::vector<Label>& labels() const noexcept { return labels_; }
    const Label& label(label_id_t id) const { return labels_.at(id); }
    std::optional<label_id_t> tau_id() const noexcept { return tau_id_; }

    bool is_tau(label_id_t id) const noexcept { return tau_id_ && *tau_id_ == id; }

    std::optional<label_id_t> label_id(std::string_view name) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), name,
                                   [](const Label& l, std::string_view n) { return l.name() < n; });
        if (it == labels_.end() || it->name() != name)
            return std::nullopt;
        return static_cast<label_id_t>(it - labels_.begin());
    }

    void require_state(state_t s) const {
        if (s >= num_states_)
            throw std::out_of_range("state index " + std::to_string(s) + " out of range (num_states = " +
                                    std::to_string(num_states_) + ")");
    }

    /// Structural equality: same state count, initial state, and transition
    /// set compared with resolved label names. Unused alphabet entries are
    /// ignored.
    friend bool operator==(const Lts& a, const Lts& b) {
        if (a.num_states_ != b.num_states_ || a.initial_ != b.initial_ ||
            a.transitions_.size() != b.transitions_.size())
            return false;
        for (std::size_t i = 0; i < a.transitions_.size(); ++i) {
            const Transition& x = a.transitions_[i];
            const Transition& y = b.transitions_[i];
            if (x.src != y.src || x.tgt != y.tgt ||
                a.labels_[x.label].name() != b.labels_[y.label].name())
                return false;
        }
        return true;
    }

private:
    state_t num_states_;
    state_t initial_;
    std::vector<Label> labels_;
    std::optional<label_id_t> tau_id_;
    std::vector<Transition> transitions_;
    std::vector<std::size_t> out_offsets_;
};

/// A set of state indices drawn from a fixed universe [0, universe_size).
class StateSet {
public:
    explicit StateSet(state_t universe) : bits_(universe, false) {}

    StateSet(state_t universe, std::initializer_list<state_t> members) : StateSet(universe) {
        for (state_t s : members)
            insert(s);
    }

    state_t universe_size() const noexcept { return static_cast<state_t>(bits_.size()); }

    bool contains(state_t s) const {
        check(s);
        return bits_[s];
    }

    void insert(state_t s) {
        check(s);
        bits_[s] = true;
    }

    void erase(state_t s) {
        check(s);
        bits_[s] = false;
    }

    bool empty() const { return std::find(bits_.begin(), bits_.end(), true) == bits_.end(); }

    std::size_t count() const {
        return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
    }

    /// Members in ascending order.
    std::vector<state_t> indices() const {
        std::vector<state_t> out;
        for (state_t s = 0; s < bits_.size(); ++s)
            if (bits_[s])
                out.push_back(s);
        return out;
    }

    StateSet& operator&=(const StateSet& o) {
        check_universe(o);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            bits_[i] = bits_[i] && o.bits_[i];
        return *this;
    }

    StateSet& operator|=(const StateSet& o) {
        check_universe(o);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            bits_[i] = bits_[i] || o.bits_[i];
        return *this;
    }

    StateSet complement() const {
        StateSet r(*this);
        r.bits_.flip();
        return r;
    }

    bool subset_of(const StateSet& o) const {
        check_universe(o);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] && !o.bits_[i])
                return false;
        return true;
    }

    friend bool operator==(const StateSet&, const StateSet&) = default;

private:
    void check(state_t s) const {
        if (s >= bits_.size())
            throw std::out_of_range("state index out of StateSet universe");
    }
    void check_universe(const StateSet& o) const {
        if (o.bits_.size() != bits_.size())
            throw std::invalid_argument("StateSet universe mismatch");
    }

    std::vector<bool> bits_;
};

/// A partition of the state space into blocks. Canonical form: the block
/// identifier of every block is its minimum member, so equal partitions
/// compare equal and all derived output is deterministic.
class Partition {
public:
    /// Takes any block labelling (equal label = same block) and canonicalizes.
    explicit Partition(std::vector<state_t> block_of) : block_of_(std::move(block_of)) {
        if (block_of_.empty())
            throw std::invalid_argument("partition of an empty state space");
        std::vector<state_t> representative(block_of_.size(), unset);
        for (state_t s = 0; s < block_of_.size(); ++s) {
            state_t b = block_of_[s];
            if (b >= block_of_.size())
                throw std::invalid_argument("block label out of range");
            if (representative[b] == unset)
                representative[b] = s;
        }
        for (auto& b : block_of_)
            b = representative[b];
    }

    static Partition identity(state_t n) {
        std::vector<state_t> v(n);
        for (state_t s = 0; s < n; ++s)
            v[s] = s;
        return Partition(std::move(v));
    }

    static Partition single_block(state_t n) { return Partition(std::vector<state_t>(n, 0)); }

    /// Builds from explicit member lists; every state must occur exactly once.
    static Partition from_blocks(state_t n, const std::vector<std::vector<state_t>>& blocks) {
        std::vector<state_t> block_of(n, unset);
        for (const auto& block : blocks) {
            if (block.empty())
                throw std::invalid_argument("empty block");
            state_t min = *std::min_element(block.begin(), block.end());
            for (state_t s : block) {
                if (s >= n)
                    throw std::invalid_argument("block member out of range");
                if (block_of[s] != unset)
                    throw std::invalid_argument("state " + std::to_string(s) + " occurs in two blocks");
                block_of[s] = min;
            }
        }
        for (state_t s = 0; s < n; ++s)
            if (block_of[s] == unset)
                throw std::invalid_argument("state " + std::to_string(s) + " missing from partition");
        return Partition(std::move(block_of));
    }

    state_t size() const noexcept { return static_cast<state_t>(block_of_.size()); }

    state_t block_of(state_t s) const {
        if (s >= block_of_.size())
            throw std::out_of_range("state index out of range");
        return block_of_[s];
    }

    bool same_block(state_t s, state_t t) const { return block_of(s) == block_of(t); }

    std::size_t num_blocks() const {
        std::size_t n = 0;
        for (state_t s = 0; s < block_of_.size(); ++s)
            if (block_of_[s] == s)
                ++n;
        return n;
    }

    /// Blocks ordered by minimum member; members ascending.
    std::vector<std::vector<state_t>> blocks() const {
        std::vector<std::vector<state_t>> by_rep(block_of_.size());
        for (state_t s = 0; s < block_of_.size(); ++s)
            by_rep[block_of_[s]].push_back(s);
        std::vector<std::vector<state_t>> out;
        for (auto& b : by_rep)
            if (!b.empty())
                out.push_back(std::move(b));
        return out;
    }

    /// True iff every block of this partition is contained in a block of c.
    bool refines(const Partition& coarser) const {
        if (coarser.size() != size())
            throw std::invalid_argument("partition size mismatch");
        for (state_t s = 0; s < block_of_.size(); ++s)
            if (coarser.block_of_[block_of_[s]] != coarser.block_of_[s])
                return false;
        return true;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    static constexpr state_t unset = std::numeric_limits<state_t>::max();
    std::vector<state_t> block_of_;
};

namespace detail {

/// Per-state lists of tau-successors.
inline std::vector<std::vector<state_t>> tau_adjacency(const Lts& lts) {
    std::vector<std::vector<state_t>> adj(lts.num_states());
    for (const Transition& t : lts.transitions())
        if (lts.is_tau(t.label))
            adj[t.src].push_back(t.tgt);
    return adj;
}

struct SccResult {
    std::vector<state_t> scc_of;       // state -> component id, ids in reverse topological order
    state_t num_sccs = 0;
    std::vector<bool> has_cycle;       // per component: size >= 2 or a self-loop
};

/// Iterative Tarjan over an adjacency list. Component ids are assigned in
/// order of completion, so edges between distinct components always go from a
/// higher id to a lower one.
inline SccResult strongly_connected_components(const std::vector<std::vector<state_t>>& adj) {
    const state_t n = static_cast<state_t>(adj.size());
    constexpr state_t undef = std::numeric_limits<state_t>::max();
    SccResult res;
    res.scc_of.assign(n, undef);

    std::vector<state_t> index(n, undef), lowlink(n, undef);
    std::vector<bool> on_stack(n, false);
    std::vector<state_t> stack;
    state_t next_index = 0;

    struct Frame {
        state_t v;
        std::size_t child;
    };
    std::vector<Frame> call;

    for (state_t root = 0; root < n; ++root) {
        if (index[root] != undef)
            continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < adj[f.v].size()) {
                state_t w = adj[f.v][f.child++];
                if (index[w] == undef) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                state_t v = f.v;
                call.pop_back();
                if (!call.empty())
                    lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
                if (lowlink[v] == index[v]) {
                    state_t id = res.num_sccs++;
                    std::size_t members = 0;
                    for (;;) {
                        state_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        res.scc_of[w] = id;
                        ++members;
                        if (w == v)
                            break;
                    }
                    res.has_cycle.push_back(members >= 2);
                }
            }
        }
    }

    // Upgrade components with a self-loop.
    for (state_t v = 0; v < n; ++v)
        for (state_t w : adj[v])
            if (w == v)
                res.has_cycle[res.scc_of[v]] = true;
    return res;
}

} // namespace detail

/// States reachable from s by zero or more tau-steps. Always contains s.
inline StateSet tau_reach(const Lts& lts, state_t s) {
    lts.require_state(s);
    StateSet seen(lts.num_states());
    std::vector<state_t> work{s};
    seen.insert(s);
    while (!work.empty()) {
        state_t v = work.back();
        work.pop_back();
        for (const Transition& t : lts.out(v))
            if (lts.is_tau(t.label) && !seen.contains(t.tgt)) {
                seen.insert(t.tgt);
                work.push_back(t.tgt);
            }
    }
    return seen;
}

/// States reachable from s by one or more tau-steps. Contains s itself
/// exactly when s lies on a tau-cycle reachable from s.
inline StateSet tau_reach_plus(const Lts& lts, state_t s) {
    lts.require_state(s);
    StateSet seen(lts.num_states());
    std::vector<state_t> work;
    for (const Transition& t : lts.out(s))
        if (lts.is_tau(t.label) && !seen.contains(t.tgt)) {
            seen.insert(t.tgt);
            work.push_back(t.tgt);
        }
    while (!work.empty()) {
        state_t v = work.back();
        work.pop_back();
        for (const Transition& t : lts.out(v))
            if (lts.is_tau(t.label) && !seen.contains(t.tgt)) {
                seen.insert(t.tgt);
                work.push_back(t.tgt);
            }
    }
    return seen;
}

/// States admitting an infinite tau-path: those that tau-reach a state inside
/// a nontrivial tau-SCC or a tau-self-loop.
inline StateSet divergent_states(const Lts& lts) {
    auto adj = detail::tau_adjacency(lts);
    auto scc = detail::strongly_connected_components(adj);

    StateSet result(lts.num_states());
    std::vector<state_t> work;
    for (state_t s = 0; s < lts.num_states(); ++s)
        if (scc.has_cycle[scc.scc_of[s]]) {
            result.insert(s);
            work.push_back(s);
        }

    // Backward closure over tau-edges.
    std::vector<std::vector<state_t>> pred(lts.num_states());
    for (state_t s = 0; s < lts.num_states(); ++s)
        for (state_t t : adj[s])
            pred[t].push_back(s);
    while (!work.empty()) {
        state_t v = work.back();
        work.pop_back();
        for (state_t p : pred[v])
            if (!result.contains(p)) {
                result.insert(p);
                work.push_back(p);
            }
    }
    return result;
}

/// States with no outgoing transitions of any label.
inline StateSet deadlock_states(const Lts& lts) {
    StateSet result(lts.num_states());
    for (state_t s = 0; s < lts.num_states(); ++s)
        if (lts.out(s).empty())
            result.insert(s);
    return result;
}

/// Pure interleaving product. State (i, j) gets index i * n2 + j; no
/// synchronization, no reachability pruning.
inline Lts parallel_compose(const Lts& l1, const Lts& l2) {
    const std::uint64_t n1 = l1.num_states(), n2 = l2.num_states();
    if (n1 * n2 > std::numeric_limits<state_t>::max())
        throw std::overflow_error("parallel composition exceeds the state index space");
    const state_t n = static_cast<state_t>(n1 * n2);

    std::vector<Lts::raw_transition> trans;
    trans.reserve((l1.transitions().size() * n2) + (l2.transitions().size() * n1));
    for (const Transition& t : l1.transitions()) {
        const std::string& name = l1.label(t.label).name();
        for (state_t j = 0; j < n2; ++j)
            trans.emplace_back(t.src * static_cast<state_t>(n2) + j, name,
                               t.tgt * static_cast<state_t>(n2) + j);
    }
    for (const Transition& t : l2.transitions()) {
        const std::string& name = l2.label(t.label).name();
        for (state_t i = 0; i < n1; ++i)
            trans.emplace_back(i * static_cast<state_t>(n2) + t.src, name,
                               i * static_cast<state_t>(n2) + t.tgt);
    }

    std::vector<std::string> alphabet;
    for (const Label& l : l1.labels())
        alphabet.push_back(l.name());
    for (const Label& l : l2.labels())
        alphabet.push_back(l.name());

    state_t initial = l1.initial() * static_cast<state_t>(n2) + l2.initial();
    return Lts(n, initial, trans, alphabet);
}

/// Side-by-side union: l2's states are renumbered after l1's. The initial
/// state is l1's.
inline Lts disjoint_union(const Lts& l1, const Lts& l2) {
    const std::uint64_t total = static_cast<std::uint64_t>(l1.num_states()) + l2.num_states();
    if (total > std::numeric_limits<state_t>::max())
        throw std::overflow_error("disjoint union exceeds the state index space");

    std::vector<Lts::raw_transition> trans;
    trans.reserve(l1.transitions().size() + l2.transitions().size());
    for (const Transition& t : l1.transitions())
        trans.emplace_back(t.src, l1.label(t.label).name(), t.tgt);
    const state_t shift = l1.num_states();
    for (const Transition& t : l2.transitions())
        trans.emplace_back(t.src + shift, l2.label(t.label).name(), t.tgt + shift);

    std::vector<std::string> alphabet;
    for (const Label& l : l1.labels())
        alphabet.push_back(l.name());
    for (const Label& l : l2.labels())
        alphabet.push_back(l.name());

    return Lts(static_cast<state_t>(total), l1.initial(), trans, alphabet);
}

/// Quotient of an LTS by a partition. Blocks become states, numbered by
/// ascending minimum member. A tau-transition inside a block is dropped
/// unless the block contains a tau-cycle of the original system, in which
/// case the block keeps a single tau-self-loop; this preserves the
/// divergence class of every state when the partition is a stable
/// divergence-preserving branching bisimulation.
inline Lts quotient(const Lts& lts, const Partition& p) {
    if (p.size() != lts.num_states())
        throw std::invalid_argument("partition does not match the LTS state count");

    const auto blocks = p.blocks();
    std::vector<state_t> block_index(lts.num_states());
    for (state_t i = 0; i < blocks.size(); ++i)
        for (state_t s : blocks[i])
            block_index[s] = i;

    // A block is divergent-within iff the tau-graph restricted to same-block
    // edges has a cycle through one of its members.
    std::vector<std::vector<state_t>> restricted(lts.num_states());
    for (const Transition& t : lts.transitions())
        if (lts.is_tau(t.label) && p.same_block(t.src, t.tgt))
            restricted[t.src].push_back(t.tgt);
    auto scc = detail::strongly_connected_components(restricted);
    std::vector<bool> divergent_block(blocks.size(), false);
    for (state_t s = 0; s < lts.num_states(); ++s)
        if (scc.has_cycle[scc.scc_of[s]])
            divergent_block[block_index[s]] = true;

    std::vector<Lts::raw_transition> trans;
    for (const Transition& t : lts.transitions()) {
        state_t bs = block_index[t.src], bt = block_index[t.tgt];
        if (lts.is_tau(t.label) && bs == bt)
            continue;
        trans.emplace_back(bs, lts.label(t.label).name(), bt);
    }
    for (state_t b = 0; b < blocks.size(); ++b)
        if (divergent_block[b])
            trans.emplace_back(b, tau_name, b);

    std::vector<std::string> alphabet;
    for (const Label& l : lts.labels())
        alphabet.push_back(l.name());

    return Lts(static_cast<state_t>(blocks.size()), block_index[lts.initial()], trans, alphabet);
}

} // namespace ltseq

#endif // LTSEQ_LTS_HPP
