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

#ifndef LTSEQ_EQUIV_HPP
#define LTSEQ_EQUIV_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lts.hpp"

namespace ltseq {

enum class Variant { bb, dpbb, dsbb, rooted_dpbb };

inline std::string_view variant_name(Variant v) {
    switch (v) {
    case Variant::bb: return "bb";
    case Variant::dpbb: return "dpbb";
    case Variant::dsbb: return "dsbb";
    case Variant::rooted_dpbb: return "rooted-dpbb";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(std::string_view name) {
    if (name == "bb") return Variant::bb;
    if (name == "dpbb") return Variant::dpbb;
    if (name == "dsbb") return Variant::dsbb;
    if (name == "rooted-dpbb") return Variant::rooted_dpbb;
    return std::nullopt;
}

/// A symmetric relation on states, stored as a bit matrix. insert/erase keep
/// symmetry by always touching both orientations.
class PairRelation {
public:
    explicit PairRelation(state_t n, bool full = false)
        : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64),
          bits_(words_ * n, full ? ~std::uint64_t{0} : 0) {
        if (full) {
            // Clear padding bits so whole-row comparisons stay meaningful.
            const std::size_t spare = words_ * 64 - n;
            if (spare > 0 && words_ > 0) {
                const std::uint64_t mask = ~std::uint64_t{0} >> spare;
                for (state_t s = 0; s < n_; ++s)
                    bits_[static_cast<std::size_t>(s) * words_ + words_ - 1] &= mask;
            }
        }
    }

    state_t num_states() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return words_; }

    bool contains(state_t s, state_t t) const {
        check(s);
        check(t);
        return (bits_[static_cast<std::size_t>(s) * words_ + t / 64] >> (t % 64)) & 1;
    }

    void insert(state_t s, state_t t) {
        check(s);
        check(t);
        bits_[static_cast<std::size_t>(s) * words_ + t / 64] |= std::uint64_t{1} << (t % 64);
        bits_[static_cast<std::size_t>(t) * words_ + s / 64] |= std::uint64_t{1} << (s % 64);
    }

    void erase(state_t s, state_t t) {
        check(s);
        check(t);
        bits_[static_cast<std::size_t>(s) * words_ + t / 64] &= ~(std::uint64_t{1} << (t % 64));
        bits_[static_cast<std::size_t>(t) * words_ + s / 64] &= ~(std::uint64_t{1} << (s % 64));
    }

    const std::uint64_t* row(state_t s) const { return bits_.data() + static_cast<std::size_t>(s) * words_; }

    bool rows_intersect(const std::uint64_t* a, const std::uint64_t* b) const {
        for (std::size_t i = 0; i < words_; ++i)
            if (a[i] & b[i])
                return true;
        return false;
    }

    /// Related pairs with s <= t, in ascending order.
    std::vector<std::pair<state_t, state_t>> pairs() const {
        std::vector<std::pair<state_t, state_t>> out;
        for (state_t s = 0; s < n_; ++s)
            for (state_t t = s; t < n_; ++t)
                if (contains(s, t))
                    out.emplace_back(s, t);
        return out;
    }

    /// Reflexive, plus every two related states have identical rows
    /// (with symmetry this implies transitivity).
    bool is_equivalence() const {
        for (state_t s = 0; s < n_; ++s) {
            if (!contains(s, s))
                return false;
            for (state_t t = s + 1; t < n_; ++t) {
                if (!contains(s, t))
                    continue;
                const std::uint64_t *rs = row(s), *rt = row(t);
                for (std::size_t i = 0; i < words_; ++i)
                    if (rs[i] != rt[i])
                        return false;
            }
        }
        return true;
    }

    /// Equivalence classes as a partition. Requires is_equivalence().
    Partition to_partition() const {
        if (!is_equivalence())
            throw std::invalid_argument("relation is not an equivalence");
        std::vector<state_t> block_of(n_);
        for (state_t s = 0; s < n_; ++s)
            for (state_t t = 0; t <= s; ++t)
                if (contains(s, t)) {
                    block_of[s] = t;
                    break;
                }
        return Partition(std::move(block_of));
    }

    static PairRelation from_partition(const Partition& p) {
        PairRelation r(p.size());
        for (const auto& block : p.blocks())
            for (state_t s : block)
                for (state_t t : block)
                    r.insert(s, t);
        return r;
    }

    friend bool operator==(const PairRelation&, const PairRelation&) = default;

private:
    void check(state_t s) const {
        if (s >= n_)
            throw std::out_of_range("state index out of relation universe");
    }

    state_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// One failed condition at one pair, with a witness that replays against the
/// LTS. For T/R1/R2 the witness is the unmatched transition; for D it is a
/// tau-path from s (stem) into a tau-cycle whose states are all related to t
/// but not to any proper tau-descendant of t.
struct Violation {
    enum class Kind { T, D, R1, R2 };

    Kind kind;
    state_t s;
    state_t t;
    std::string label;          // T/R1/R2: label of the unmatched transition
    state_t target = 0;         // T/R1/R2: its target
    std::vector<state_t> stem;  // D: path from s to the cycle entry (starts with s; empty if s is on the cycle)
    std::vector<state_t> cycle; // D: the cycle states in order

    std::string describe() const {
        switch (kind) {
        case Kind::T:
        case Kind::R1:
        case Kind::R2: {
            const char* k = kind == Kind::T ? "T" : (kind == Kind::R1 ? "R1" : "R2");
            state_t src = kind == Kind::R2 ? t : s;
            return std::string(k) + " (" + std::to_string(s) + "," + std::to_string(t) +
                   "): unmatched (" + std::to_string(src) + ",\"" + label + "\"," +
                   std::to_string(target) + ")";
        }
        case Kind::D: {
            std::string out = "D (" + std::to_string(s) + "," + std::to_string(t) + "):";
            if (!stem.empty()) {
                out += " stem";
                for (state_t v : stem)
                    out += ' ' + std::to_string(v);
                out += " |";
            }
            out += " cycle";
            for (state_t v : cycle)
                out += ' ' + std::to_string(v);
            return out;
        }
        }
        return {};
    }
};

namespace detail {

/// Shared per-LTS precomputation for the condition checkers.
struct EquivContext {
    const Lts& lts;
    std::vector<std::vector<state_t>> tau_adj;
    std::vector<std::vector<state_t>> tau_star; // ascending member lists, includes the state itself
    std::vector<std::vector<state_t>> tau_plus;

    explicit EquivContext(const Lts& l) : lts(l), tau_adj(tau_adjacency(l)) {
        const state_t n = l.num_states();
        tau_star.resize(n);
        tau_plus.resize(n);
        std::vector<state_t> work;
        std::vector<bool> seen(n);
        for (state_t s = 0; s < n; ++s) {
            std::fill(seen.begin(), seen.end(), false);
            work.clear();
            for (state_t u : tau_adj[s])
                if (!seen[u]) {
                    seen[u] = true;
                    work.push_back(u);
                }
            for (std::size_t i = 0; i < work.size(); ++i)
                for (state_t u : tau_adj[work[i]])
                    if (!seen[u]) {
                        seen[u] = true;
                        work.push_back(u);
                    }
            for (state_t u = 0; u < n; ++u)
                if (seen[u])
                    tau_plus[s].push_back(u);
            tau_star[s] = tau_plus[s];
            if (!seen[s]) {
                tau_star[s].insert(
                    std::lower_bound(tau_star[s].begin(), tau_star[s].end(), s), s);
            }
        }
    }

    /// Successors of state u under a given label, as a transition span slice.
    std::span<const Transition> out_with_label(state_t u, label_id_t lab) const {
        auto all = lts.out(u);
        auto lo = std::lower_bound(all.begin(), all.end(), lab,
                                   [](const Transition& t, label_id_t l) { return t.label < l; });
        auto hi = std::upper_bound(all.begin(), all.end(), lab,
                                   [](label_id_t l, const Transition& t) { return l < t.label; });
        return {lo, hi};
    }
};

/// DFS for a tau-cycle reachable from start while staying inside the state
/// set accepted by in_x. Fills stem (path from start up to, excluding, the
/// cycle entry) and cycle on success.
template <class Pred>
bool find_restricted_divergence(const std::vector<std::vector<state_t>>& tau_adj, state_t start,
                                Pred in_x, std::vector<state_t>& stem, std::vector<state_t>& cycle) {
    const state_t n = static_cast<state_t>(tau_adj.size());
    std::vector<std::uint8_t> color(n, 0); // 0 unvisited, 1 on path, 2 done
    std::vector<std::size_t> path_pos(n, 0);
    std::vector<state_t> path;
    struct Frame {
        state_t v;
        std::size_t child;
    };
    std::vector<Frame> frames;

    if (!in_x(start))
        return false;
    frames.push_back({start, 0});
    color[start] = 1;
    path_pos[start] = path.size();
    path.push_back(start);

    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.child < tau_adj[f.v].size()) {
            state_t w = tau_adj[f.v][f.child++];
            if (!in_x(w))
                continue;
            if (color[w] == 1) {
                // Back edge: path[path_pos[w]..] is the cycle.
                stem.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(path_pos[w]));
                cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(path_pos[w]), path.end());
                return true;
            }
            if (color[w] == 0) {
                color[w] = 1;
                path_pos[w] = path.size();
                path.push_back(w);
                frames.push_back({w, 0});
            }
        } else {
            color[f.v] = 2;
            path.pop_back();
            frames.pop_back();
        }
    }
    return false;
}

/// Everything recorded by the greatest-fixpoint deletion run. deleted_at
/// assigns each removed unordered pair the index of its deletion event
/// (kept pairs hold `kept`); reason tells, per ordered pair, on which
/// orientation the violation was found.
struct GfpTrace {
    static constexpr std::uint32_t kept = std::numeric_limits<std::uint32_t>::max();
    enum class Reason : std::uint8_t { none, t_condition, d_condition, mirror };

    PairRelation relation;
    std::vector<std::uint32_t> deleted_at; // n * n, symmetric
    std::vector<Reason> reason;            // n * n, per ordered pair

    explicit GfpTrace(state_t n)
        : relation(n, true), deleted_at(static_cast<std::size_t>(n) * n, kept),
          reason(static_cast<std::size_t>(n) * n, Reason::none) {}

    std::uint32_t index(state_t s, state_t t) const {
        return deleted_at[static_cast<std::size_t>(s) * relation.num_states() + t];
    }
    Reason reason_of(state_t s, state_t t) const {
        return reason[static_cast<std::size_t>(s) * relation.num_states() + t];
    }
    /// Membership in the relation as it stood when deletion event `event`
    /// was applied (the pair deleted by that event still counts as present).
    bool related_at(state_t s, state_t t, std::uint32_t event) const {
        return index(s, t) >= event;
    }
};

/// Transitive-closure bit rows of the tau-graph (proper closure, no implicit
/// reflexivity).
class TauPlusMatrix {
public:
    explicit TauPlusMatrix(const EquivContext& ctx)
        : n_(ctx.lts.num_states()), words_((static_cast<std::size_t>(n_) + 63) / 64),
          bits_(words_ * n_, 0) {
        for (state_t s = 0; s < n_; ++s)
            for (state_t u : ctx.tau_plus[s])
                bits_[static_cast<std::size_t>(s) * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
    }

    const std::uint64_t* row(state_t s) const { return bits_.data() + static_cast<std::size_t>(s) * words_; }

private:
    state_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// Condition (T) for the ordered pair (s, t) against relation R: every
/// s -a-> s' needs t'' and t' with t =>tau t'' -(a)-> t', s R t'' and
/// s' R t', where -(a)-> may be skipped when a is tau. Returns the first
/// unmatched transition.
inline std::optional<Transition> find_t_violation(const EquivContext& ctx, const PairRelation& rel,
                                                  state_t s, state_t t) {
    for (const Transition& tr : ctx.lts.out(s)) {
        const bool tau_move = ctx.lts.is_tau(tr.label);
        bool matched = false;
        for (state_t mid : ctx.tau_star[t]) {
            if (!rel.contains(s, mid))
                continue;
            if (tau_move && rel.contains(tr.tgt, mid)) {
                matched = true;
                break;
            }
            for (const Transition& cand : ctx.out_with_label(mid, tr.label))
                if (rel.contains(tr.tgt, cand.tgt)) {
                    matched = true;
                    break;
                }
            if (matched)
                break;
        }
        if (!matched)
            return tr;
    }
    return std::nullopt;
}

/// Condition (D) for the ordered pair (s, t) against relation R, in the
/// equivalent finite form: with V = { u : u R t } and
/// W = { u in V : exists t' with t ->tau+ t' and u R t' }, the pair violates
/// (D) iff s lies in V \ W and can reach a tau-cycle inside V \ W. Returns
/// the witnessing stem and cycle.
inline bool find_d_violation(const EquivContext& ctx, const PairRelation& rel,
                             const TauPlusMatrix& tau_plus, state_t s, state_t t,
                             std::vector<state_t>& stem, std::vector<state_t>& cycle) {
    if (rel.rows_intersect(rel.row(s), tau_plus.row(t)))
        return false; // s is in W
    auto in_x = [&](state_t u) {
        return rel.contains(u, t) && !rel.rows_intersect(rel.row(u), tau_plus.row(t));
    };
    return find_restricted_divergence(ctx.tau_adj, s, in_x, stem, cycle);
}

/// Greatest-fixpoint pair deletion. Starts from the universal relation and
/// sweeps unordered pairs in lexicographic order, deleting any pair (plus
/// mirror) whose either orientation violates (T) or, when preserve_divergence
/// is set, (D); repeats until a sweep deletes nothing. Diagonal pairs never
/// violate either condition and are skipped.
inline GfpTrace naive_gfp_traced(const Lts& lts, bool preserve_divergence) {
    const state_t n = lts.num_states();
    EquivContext ctx(lts);
    TauPlusMatrix tau_plus(ctx);
    GfpTrace trace(n);

    std::uint32_t next_event = 0;
    std::vector<state_t> stem, cycle;

    bool changed = true;
    while (changed) {
        changed = false;
        for (state_t s = 0; s < n; ++s) {
            for (state_t t = s + 1; t < n; ++t) {
                if (!trace.relation.contains(s, t))
                    continue;

                GfpTrace::Reason reason = GfpTrace::Reason::none;
                state_t vs = s, vt = t;
                if (find_t_violation(ctx, trace.relation, s, t)) {
                    reason = GfpTrace::Reason::t_condition;
                } else if (preserve_divergence) {
                    stem.clear();
                    cycle.clear();
                    if (find_d_violation(ctx, trace.relation, tau_plus, s, t, stem, cycle))
                        reason = GfpTrace::Reason::d_condition;
                }
                if (reason == GfpTrace::Reason::none) {
                    if (find_t_violation(ctx, trace.relation, t, s)) {
                        reason = GfpTrace::Reason::t_condition;
                        vs = t;
                        vt = s;
                    } else if (preserve_divergence) {
                        stem.clear();
                        cycle.clear();
                        if (find_d_violation(ctx, trace.relation, tau_plus, t, s, stem, cycle)) {
                            reason = GfpTrace::Reason::d_condition;
                            vs = t;
                            vt = s;
                        }
                    }
                }
                if (reason == GfpTrace::Reason::none)
                    continue;

                trace.relation.erase(s, t);
                const std::size_t fwd = static_cast<std::size_t>(vs) * n + vt;
                const std::size_t bwd = static_cast<std::size_t>(vt) * n + vs;
                trace.deleted_at[fwd] = trace.deleted_at[bwd] = next_event++;
                trace.reason[fwd] = reason;
                trace.reason[bwd] = GfpTrace::Reason::mirror;
                changed = true;
            }
        }
    }
    return trace;
}

/// The divergence-sensitive preprocessing: every deadlock state gets a
/// tau-self-loop, turning deadlock into livelock.
inline Lts deadlocks_to_livelocks(const Lts& lts) {
    std::vector<Lts::raw_transition> trans;
    trans.reserve(lts.transitions().size() + 4);
    for (const Transition& t : lts.transitions())
        trans.emplace_back(t.src, lts.label(t.label).name(), t.tgt);
    for (state_t s = 0; s < lts.num_states(); ++s)
        if (lts.out(s).empty())
            trans.emplace_back(s, tau_name, s);
    std::vector<std::string> alphabet;
    for (const Label& l : lts.labels())
        alphabet.push_back(l.name());
    return Lts(lts.num_states(), lts.initial(), trans, alphabet);
}

/// The LTS after collapsing every nontrivial tau-SCC to a single state.
/// Internal tau-edges disappear; whether a component contained a tau-cycle
/// is kept as a per-state divergence flag.
struct CollapsedLts {
    state_t num_states = 0;
    std::vector<state_t> scc_of;
    std::vector<bool> divergent;
    std::vector<std::vector<std::pair<label_id_t, state_t>>> out; // sorted, unique
    std::optional<label_id_t> tau;

    bool is_tau(label_id_t l) const { return tau && *tau == l; }
};

inline CollapsedLts collapse_tau_sccs(const Lts& lts) {
    auto scc = strongly_connected_components(tau_adjacency(lts));
    CollapsedLts col;
    col.num_states = scc.num_sccs;
    col.scc_of = std::move(scc.scc_of);
    col.divergent = std::move(scc.has_cycle);
    col.tau = lts.tau_id();
    col.out.resize(col.num_states);
    for (const Transition& t : lts.transitions()) {
        state_t cs = col.scc_of[t.src], ct = col.scc_of[t.tgt];
        if (lts.is_tau(t.label) && cs == ct)
            continue;
        col.out[cs].emplace_back(t.label, ct);
    }
    for (auto& edges : col.out) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    return col;
}

/// Coarsest partition stable under the branching-bisimulation signature
///
///   sig(s) = { (a, block(s')) : s ->tau ... ->tau u -a-> s', all
///              intermediate states in block(s), not (a = tau and
///              block(s') = block(s)) }
///
/// computed on the tau-SCC-collapsed system. When preserve_divergence is set,
/// states whose component contained a tau-cycle carry a synthetic marker
/// self-loop, which enters signatures like any visible label and thereby
/// separates states that can diverge within their class from states that
/// cannot. The collapsed tau-graph is acyclic, so signatures of a round are
/// computed in one pass, children before parents (Tarjan component ids give
/// that order for free).
inline Partition signature_refinement(const Lts& lts, bool preserve_divergence) {
    constexpr label_id_t marker = std::numeric_limits<label_id_t>::max();
    const CollapsedLts col = collapse_tau_sccs(lts);
    const state_t nc = col.num_states;

    std::vector<state_t> block(nc, 0);
    std::size_t num_blocks = 1;

    using Sig = std::vector<std::pair<label_id_t, state_t>>;
    std::vector<Sig> sig(nc);
    std::vector<std::vector<state_t>> members;

    for (;;) {
        for (state_t c = 0; c < nc; ++c) {
            Sig& s = sig[c];
            s.clear();
            for (auto [lab, tgt] : col.out[c]) {
                if (col.is_tau(lab) && block[tgt] == block[c]) {
                    // Inert step: inherit the target's signature (already
                    // computed; cross-component tau-edges point to smaller ids).
                    s.insert(s.end(), sig[tgt].begin(), sig[tgt].end());
                } else {
                    s.emplace_back(lab, block[tgt]);
                }
            }
            if (preserve_divergence && col.divergent[c])
                s.emplace_back(marker, block[c]);
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }

        members.assign(num_blocks, {});
        for (state_t c = 0; c < nc; ++c)
            members[block[c]].push_back(c);

        state_t next_id = 0;
        std::vector<state_t> new_block(nc);
        for (auto& blk : members) {
            std::sort(blk.begin(), blk.end(), [&](state_t a, state_t b) {
                return sig[a] != sig[b] ? sig[a] < sig[b] : a < b;
            });
            for (std::size_t i = 0; i < blk.size(); ++i) {
                if (i > 0 && sig[blk[i]] != sig[blk[i - 1]])
                    ++next_id;
                new_block[blk[i]] = next_id;
            }
            ++next_id;
        }

        if (next_id == num_blocks)
            break;
        num_blocks = next_id;
        block = std::move(new_block);
    }

    std::vector<state_t> block_of(lts.num_states());
    for (state_t v = 0; v < lts.num_states(); ++v)
        block_of[v] = block[col.scc_of[v]];
    return Partition(std::move(block_of));
}

/// Literal condition checker shared by the verify() overloads. `related`
/// is any symmetric membership predicate; `carrier` enumerates the ordered
/// pairs to examine.
template <class Related>
std::vector<Violation> collect_violations(const Lts& lts,
                                          const std::vector<std::pair<state_t, state_t>>& carrier,
                                          Related related, bool check_divergence) {
    EquivContext ctx(lts);
    std::vector<Violation> out;

    for (auto [s, t] : carrier) {
        for (const Transition& tr : lts.out(s)) {
            const bool tau_move = lts.is_tau(tr.label);
            bool matched = false;
            for (state_t mid : ctx.tau_star[t]) {
                if (!related(s, mid))
                    continue;
                if (tau_move && related(tr.tgt, mid)) {
                    matched = true;
                    break;
                }
                for (const Transition& cand : ctx.out_with_label(mid, tr.label))
                    if (related(tr.tgt, cand.tgt)) {
                        matched = true;
                        break;
                    }
                if (matched)
                    break;
            }
            if (!matched)
                out.push_back(Violation{Violation::Kind::T, s, t, lts.label(tr.label).name(),
                                        tr.tgt, {}, {}});
        }

        if (!check_divergence)
            continue;

        bool s_in_w = false;
        for (state_t td : ctx.tau_plus[t])
            if (related(s, td)) {
                s_in_w = true;
                break;
            }
        if (s_in_w)
            continue;
        auto in_x = [&](state_t u) {
            if (!related(u, t))
                return false;
            for (state_t td : ctx.tau_plus[t])
                if (related(u, td))
                    return false;
            return true;
        };
        std::vector<state_t> stem, cycle;
        if (find_restricted_divergence(ctx.tau_adj, s, in_x, stem, cycle)) {
            if (cycle.size() > lts.num_states())
                cycle.resize(lts.num_states());
            out.push_back(Violation{Violation::Kind::D, s, t, {}, 0, std::move(stem),
                                    std::move(cycle)});
        }
    }
    return out;
}

} // namespace detail

/// The greatest divergence-preserving branching bisimulation, by fixpoint
/// pair deletion from the universal relation. The result is an equivalence
/// and passes verify(..., Variant::dpbb) with no violations.
inline PairRelation naive_gfp_dpbb(const Lts& lts) {
    return detail::naive_gfp_traced(lts, true).relation;
}

/// The greatest plain branching bisimulation (condition (T) only).
inline PairRelation naive_gfp_bb(const Lts& lts) {
    return detail::naive_gfp_traced(lts, false).relation;
}

/// Partition of plain branching bisimilarity, via signature refinement.
inline Partition bb_partition(const Lts& lts) {
    return detail::signature_refinement(lts, false);
}

/// Partition of divergence-preserving branching bisimilarity, via tau-SCC
/// collapse, divergence marking, and signature refinement. Induces the same
/// relation as naive_gfp_dpbb.
inline Partition dpbb_partition(const Lts& lts) {
    return detail::signature_refinement(lts, true);
}

/// Partition of divergence-sensitive branching bisimilarity: dpbb after
/// turning every deadlock state into a livelock, reported on the original
/// state indices.
inline Partition dsbb_partition(const Lts& lts) {
    return detail::signature_refinement(detail::deadlocks_to_livelocks(lts), true);
}

/// Root-condition violations for the pair (s, t): every initial transition
/// of s must be matched by a single strong step of t into the same dpbb
/// class (R1), and symmetrically (R2).
inline std::vector<Violation> rooted_violations(const Lts& lts, state_t s, state_t t) {
    lts.require_state(s);
    lts.require_state(t);
    Partition classes = dpbb_partition(lts);
    std::vector<Violation> out;
    auto matches = [&](const Transition& move, state_t other) {
        for (const Transition& cand : lts.out(other))
            if (cand.label == move.label && classes.same_block(move.tgt, cand.tgt))
                return true;
        return false;
    };
    for (const Transition& tr : lts.out(s))
        if (!matches(tr, t))
            out.push_back(Violation{Violation::Kind::R1, s, t, lts.label(tr.label).name(), tr.tgt,
                                    {}, {}});
    for (const Transition& tr : lts.out(t))
        if (!matches(tr, s))
            out.push_back(Violation{Violation::Kind::R2, s, t, lts.label(tr.label).name(), tr.tgt,
                                    {}, {}});
    return out;
}

/// Rooted divergence-preserving branching bisimilarity of s and t.
inline bool rooted_dpbb(const Lts& lts, state_t s, state_t t) {
    return rooted_violations(lts, s, t).empty();
}

/// Checks a candidate relation against the defining conditions of the given
/// variant, literally and pair by pair. Returns the empty vector iff the
/// candidate is a branching bisimulation (bb), a divergence-preserving one
/// (dpbb), or one for the deadlock-to-livelock preprocessed system (dsbb).
inline std::vector<Violation> verify(const Lts& lts, const PairRelation& candidate, Variant v) {
    if (candidate.num_states() != lts.num_states())
        throw std::invalid_argument("candidate relation universe does not match the LTS");
    if (v == Variant::rooted_dpbb)
        throw std::invalid_argument("rooted verification is per pair; use rooted_violations");

    std::vector<std::pair<state_t, state_t>> carrier;
    for (state_t s = 0; s < candidate.num_states(); ++s)
        for (state_t t = 0; t < candidate.num_states(); ++t)
            if (candidate.contains(s, t))
                carrier.emplace_back(s, t);

    auto related = [&](state_t a, state_t b) { return candidate.contains(a, b); };
    if (v == Variant::dsbb) {
        Lts pre = detail::deadlocks_to_livelocks(lts);
        return detail::collect_violations(pre, carrier, related, true);
    }
    return detail::collect_violations(lts, carrier, related, v == Variant::dpbb);
}

inline std::vector<Violation> verify(const Lts& lts, const Partition& candidate, Variant v) {
    if (candidate.size() != lts.num_states())
        throw std::invalid_argument("candidate partition does not match the LTS");
    if (v == Variant::rooted_dpbb)
        throw std::invalid_argument("rooted verification is per pair; use rooted_violations");

    std::vector<std::pair<state_t, state_t>> carrier;
    for (const auto& block : candidate.blocks())
        for (state_t s : block)
            for (state_t t : block)
                carrier.emplace_back(s, t);
    std::sort(carrier.begin(), carrier.end());

    auto related = [&](state_t a, state_t b) { return candidate.same_block(a, b); };
    if (v == Variant::dsbb) {
        Lts pre = detail::deadlocks_to_livelocks(lts);
        return detail::collect_violations(pre, carrier, related, true);
    }
    return detail::collect_violations(lts, carrier, related, v == Variant::dpbb);
}

/// Facade: do s and t fall in the same class under the chosen variant?
inline bool check(const Lts& lts, state_t s, state_t t, Variant v) {
    lts.require_state(s);
    lts.require_state(t);
    switch (v) {
    case Variant::bb: return bb_partition(lts).same_block(s, t);
    case Variant::dpbb: return dpbb_partition(lts).same_block(s, t);
    case Variant::dsbb: return dsbb_partition(lts).same_block(s, t);
    case Variant::rooted_dpbb: return rooted_dpbb(lts, s, t);
    }
    return false;
}

} // namespace ltseq

#endif // LTSEQ_EQUIV_HPP
