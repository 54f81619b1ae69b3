#ifndef TRACETIME_REACH_HPP
#define TRACETIME_REACH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracetime/error.hpp"
#include "tracetime/scheduler.hpp"
#include "tracetime/system.hpp"
#include "tracetime/timed.hpp"

namespace tracetime {

/// Pairwise independent letters, in rank order, executed in one time unit.
struct Tick {
    std::vector<Letter> letters;

    friend bool operator==(const Tick&, const Tick&) = default;
};

template <class State>
struct Successor {
    Tick tick;
    TimedState<State> state;
};

struct SearchOptions {
    std::size_t max_states = 1'000'000;
    /// Only expand ticks that are not contained in a larger applicable tick.
    /// Faster, but not guaranteed to find the minimum time to a given state.
    bool maximal_ticks_only = false;
};

namespace detail {

// Independent subsets of `candidates`, as bitmasks over candidate positions.
inline void collect_cliques(const IndependenceAlphabet& alphabet, const std::vector<Letter>& candidates,
                            std::size_t next, std::uint64_t mask, std::vector<std::uint64_t>& out) {
    for (std::size_t i = next; i < candidates.size(); ++i) {
        bool compatible = true;
        for (std::size_t j = 0; j < i && compatible; ++j) {
            if ((mask >> j & 1U) != 0 && !alphabet.independent(candidates[j], candidates[i])) {
                compatible = false;
            }
        }
        if (compatible) {
            const std::uint64_t grown = mask | (std::uint64_t{1} << i);
            out.push_back(grown);
            collect_cliques(alphabet, candidates, i + 1, grown, out);
        }
    }
}

} // namespace detail

/// All one-tick moves from `state`, ordered by their bitmask over the
/// candidate letters (candidates in rank order).
template <SystemView V>
std::vector<Successor<typename V::state_type>> successors(const V& view, const TimeFunction& tau,
                                                          const TimedState<typename V::state_type>& state,
                                                          bool maximal_ticks_only = false) {
    const auto& alphabet = view.alphabet();
    std::vector<Letter> candidates;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (plan_micro_step(view, state, letter_at(i))) {
            candidates.push_back(letter_at(i));
        }
    }
    if (candidates.size() > 63) {
        throw Error(ErrorCode::InvalidArgument, "more than 63 simultaneously enabled letters");
    }
    std::vector<std::uint64_t> masks;
    detail::collect_cliques(alphabet, candidates, 0, 0, masks);
    std::sort(masks.begin(), masks.end());

    std::vector<Successor<typename V::state_type>> out;
    std::vector<std::uint64_t> applied;
    for (const std::uint64_t mask : masks) {
        std::optional<TimedState<typename V::state_type>> next = state;
        Tick tick;
        for (std::size_t i = 0; i < candidates.size() && next; ++i) {
            if ((mask >> i & 1U) != 0) {
                tick.letters.push_back(candidates[i]);
                next = micro_step(view, tau, *next, candidates[i]);
            }
        }
        if (next) {
            out.push_back({std::move(tick), std::move(*next)});
            applied.push_back(mask);
        }
    }
    if (maximal_ticks_only) {
        std::vector<Successor<typename V::state_type>> maximal;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const bool dominated = std::any_of(applied.begin(), applied.end(), [&](std::uint64_t other) {
                return other != applied[i] && (other & applied[i]) == applied[i];
            });
            if (!dominated) {
                maximal.push_back(std::move(out[i]));
            }
        }
        return maximal;
    }
    return out;
}

struct SearchResult {
    bool found = false;
    std::size_t time = 0;
    std::vector<Tick> schedule;
    std::size_t explored = 0;
};

/// Breadth-first tree over timed states: every vertex keeps the tick that
/// first discovered it and its parent.
template <class State>
struct SearchTree {
    static constexpr std::size_t no_parent = std::numeric_limits<std::size_t>::max();

    struct Vertex {
        TimedState<State> state;
        std::size_t parent;
        Tick tick;
        std::size_t level;
    };

    std::vector<Vertex> vertices;
    std::unordered_map<TimedState<State>, std::size_t> ids;

    [[nodiscard]] std::optional<std::size_t> find(const TimedState<State>& s) const {
        const auto it = ids.find(s);
        return it == ids.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    }
};

template <class State>
std::vector<Tick> reconstruct_schedule(const SearchTree<State>& tree, std::size_t target) {
    if (target >= tree.vertices.size()) {
        throw Error(ErrorCode::TargetNotReached, "target vertex was never reached");
    }
    std::vector<Tick> schedule;
    for (std::size_t v = target; tree.vertices[v].parent != SearchTree<State>::no_parent; v = tree.vertices[v].parent) {
        schedule.push_back(tree.vertices[v].tick);
    }
    std::reverse(schedule.begin(), schedule.end());
    return schedule;
}

template <class State>
std::vector<Tick> reconstruct_schedule(const SearchTree<State>& tree, const TimedState<State>& target) {
    const auto id = tree.find(target);
    if (!id) {
        throw Error(ErrorCode::TargetNotReached, "target state was never reached");
    }
    return reconstruct_schedule(tree, *id);
}

/// Level-by-level search from embed(source); stops when embed(target) is
/// dequeued. Returns the target's vertex id, or nullopt once the frontier is
/// exhausted. Throws StateBudgetExceeded when more than max_states timed
/// states are discovered.
template <SystemView V>
std::optional<std::size_t> bfs_search(const V& view, const TimeFunction& tau, const typename V::state_type& source,
                                      const typename V::state_type& target, const SearchOptions& options,
                                      SearchTree<typename V::state_type>& tree) {
    using State = typename V::state_type;
    tree = {};
    const TimedState<State> goal = embed(target);
    tree.vertices.push_back({embed(source), SearchTree<State>::no_parent, {}, 0});
    tree.ids.emplace(tree.vertices.front().state, 0);
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t current = frontier.front();
        frontier.pop_front();
        if (tree.vertices[current].state == goal) {
            return current;
        }
        const TimedState<State> from = tree.vertices[current].state;
        const std::size_t level = tree.vertices[current].level;
        for (auto& next : successors(view, tau, from, options.maximal_ticks_only)) {
            if (tree.ids.contains(next.state)) {
                continue;
            }
            if (tree.vertices.size() >= options.max_states) {
                throw Error(ErrorCode::StateBudgetExceeded,
                            "explored more than " + std::to_string(options.max_states) + " timed states");
            }
            const std::size_t id = tree.vertices.size();
            tree.ids.emplace(next.state, id);
            tree.vertices.push_back({std::move(next.state), current, std::move(next.tick), level + 1});
            frontier.push_back(id);
        }
    }
    return std::nullopt;
}

template <SystemView V>
SearchResult bfs_min_time(const V& view, const TimeFunction& tau, const typename V::state_type& source,
                          const typename V::state_type& target, const SearchOptions& options = {}) {
    SearchTree<typename V::state_type> tree;
    const auto reached = bfs_search(view, tau, source, target, options, tree);
    SearchResult result;
    result.explored = tree.vertices.size();
    if (reached) {
        result.found = true;
        result.time = tree.vertices[*reached].level;
        result.schedule = reconstruct_schedule(tree, *reached);
    }
    return result;
}

/// Applies each tick's letters in rank order; nullopt if any micro-step is undefined.
template <SystemView V>
std::optional<TimedState<typename V::state_type>> replay_schedule(const V& view, const TimeFunction& tau,
                                                                  const TimedState<typename V::state_type>& start,
                                                                  const std::vector<Tick>& schedule) {
    std::optional<TimedState<typename V::state_type>> state = start;
    for (const auto& tick : schedule) {
        state = run_micro_word(view, tau, *state, tick.letters);
        if (!state) {
            return std::nullopt;
        }
    }
    return state;
}

/// Start/run/complete phase of every letter of a search schedule.
template <SystemView V>
std::vector<std::vector<TickEntry>> annotate_schedule(const V& view, const TimeFunction& tau,
                                                      const typename V::state_type& source,
                                                      const std::vector<Tick>& schedule) {
    std::vector<std::vector<TickEntry>> annotated;
    auto state = embed(source);
    for (const auto& tick : schedule) {
        std::vector<TickEntry> entries;
        for (const Letter a : tick.letters) {
            Ticks elapsed = 0;
            for (const auto& f : state.in_flight) {
                if (f.letter == a) {
                    elapsed = f.progress;
                }
            }
            entries.push_back({a, phase_of(elapsed, tau(a))});
        }
        const auto next = run_micro_word(view, tau, state, tick.letters);
        if (!next) {
            throw Error(ErrorCode::InvalidArgument, "schedule does not replay");
        }
        state = *next;
        annotated.push_back(std::move(entries));
    }
    return annotated;
}

} // namespace tracetime

#endif
