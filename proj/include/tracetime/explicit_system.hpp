#ifndef TRACETIME_EXPLICIT_SYSTEM_HPP
#define TRACETIME_EXPLICIT_SYSTEM_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracetime/alphabet.hpp"
#include "tracetime/error.hpp"
#include "tracetime/system.hpp"

namespace tracetime {

enum class StateId : std::uint32_t {};

constexpr std::size_t index(StateId s) noexcept { return static_cast<std::size_t>(s); }
constexpr StateId state_at(std::size_t i) noexcept { return static_cast<StateId>(i); }

struct Transition {
    StateId from;
    Letter letter;
    StateId to;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// A finite asynchronous system given by its transition table. Condition 1
/// (determinism) is not enforced at construction so that validate_axioms can
/// report it; step() throws on a nondeterministic (state, letter).
class ExplicitSystem {
public:
    using state_type = StateId;

    ExplicitSystem(AlphabetPtr alphabet, std::vector<std::string> state_names, StateId initial,
                   std::vector<Transition> transitions)
        : alphabet_(std::move(alphabet)), names_(std::move(state_names)), initial_(initial) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!ids_.emplace(names_[i], i).second) {
                throw Error(ErrorCode::DuplicateState, "state '" + names_[i] + "' declared twice");
            }
        }
        check_state(initial_);
        std::sort(transitions.begin(), transitions.end());
        transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
        table_.resize(names_.size() * alphabet_->size());
        for (const auto& t : transitions) {
            check_state(t.from);
            check_state(t.to);
            alphabet_->check(t.letter);
            table_[slot(t.from, t.letter)].push_back(t.to);
        }
        transitions_ = std::move(transitions);
    }

    static ExplicitSystem create(AlphabetPtr alphabet, std::vector<std::string> states, const std::string& initial,
                                 const std::vector<std::array<std::string, 3>>& transitions) {
        std::unordered_map<std::string, std::size_t> ids;
        for (std::size_t i = 0; i < states.size(); ++i) {
            ids.emplace(states[i], i);
        }
        const auto lookup = [&](const std::string& name) {
            const auto it = ids.find(name);
            if (it == ids.end()) {
                throw Error(ErrorCode::UnknownState, "state '" + name + "' is not declared");
            }
            return state_at(it->second);
        };
        std::vector<Transition> triples;
        triples.reserve(transitions.size());
        for (const auto& [from, letter, to] : transitions) {
            triples.push_back({lookup(from), alphabet->letter(letter), lookup(to)});
        }
        const StateId start = lookup(initial);
        return ExplicitSystem(std::move(alphabet), std::move(states), start, std::move(triples));
    }

    [[nodiscard]] const IndependenceAlphabet& alphabet() const noexcept { return *alphabet_; }
    [[nodiscard]] const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }
    [[nodiscard]] StateId initial() const noexcept { return initial_; }
    [[nodiscard]] std::size_t state_count() const noexcept { return names_.size(); }
    [[nodiscard]] const std::vector<Transition>& transitions() const noexcept { return transitions_; }

    [[nodiscard]] const std::string& state_name(StateId s) const {
        check_state(s);
        return names_[index(s)];
    }

    [[nodiscard]] StateId state(const std::string& name) const {
        const auto it = ids_.find(name);
        if (it == ids_.end()) {
            throw Error(ErrorCode::UnknownState, "state '" + name + "' is not declared");
        }
        return state_at(it->second);
    }

    [[nodiscard]] std::span<const StateId> targets(StateId s, Letter a) const {
        check_state(s);
        alphabet_->check(a);
        return table_[slot(s, a)];
    }

    [[nodiscard]] std::optional<StateId> step(StateId s, Letter a) const {
        const auto next = targets(s, a);
        if (next.empty()) {
            return std::nullopt;
        }
        if (next.size() > 1) {
            throw Error(ErrorCode::NondeterministicTransition,
                        "state '" + names_[index(s)] + "' has several '" + alphabet_->name(a) + "' successors");
        }
        return next.front();
    }

private:
    [[nodiscard]] std::size_t slot(StateId s, Letter a) const noexcept {
        return index(s) * alphabet_->size() + tracetime::index(a);
    }

    void check_state(StateId s) const {
        if (index(s) >= names_.size()) {
            throw Error(ErrorCode::UnknownState, "state id " + std::to_string(index(s)) + " out of range");
        }
    }

    AlphabetPtr alphabet_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> ids_;
    StateId initial_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<StateId>> table_;
};

struct DeterminismViolation {
    StateId state;
    Letter letter;
    std::vector<StateId> targets;
};

/// (a,b) independent, s·a·b defined, but no s1 with s·b = s1 and s1·a = s·a·b.
struct DiamondViolation {
    StateId state;
    Letter first;
    Letter second;
};

struct AxiomReport {
    std::vector<DeterminismViolation> determinism;
    std::vector<DiamondViolation> diamond;

    [[nodiscard]] bool clean() const noexcept { return determinism.empty() && diamond.empty(); }
};

inline AxiomReport validate_axioms(const ExplicitSystem& system) {
    const auto& alphabet = system.alphabet();
    AxiomReport report;
    for (std::size_t si = 0; si < system.state_count(); ++si) {
        const StateId s = state_at(si);
        for (std::size_t ai = 0; ai < alphabet.size(); ++ai) {
            const auto next = system.targets(s, letter_at(ai));
            if (next.size() > 1) {
                report.determinism.push_back({s, letter_at(ai), {next.begin(), next.end()}});
            }
        }
    }
    for (std::size_t si = 0; si < system.state_count(); ++si) {
        const StateId s = state_at(si);
        for (std::size_t ai = 0; ai < alphabet.size(); ++ai) {
            for (std::size_t bi = 0; bi < alphabet.size(); ++bi) {
                const Letter a = letter_at(ai);
                const Letter b = letter_at(bi);
                if (!alphabet.independent(a, b)) {
                    continue;
                }
                bool violated = false;
                for (const StateId mid : system.targets(s, a)) {
                    for (const StateId end : system.targets(mid, b)) {
                        bool closed = false;
                        for (const StateId other : system.targets(s, b)) {
                            const auto back = system.targets(other, a);
                            if (std::find(back.begin(), back.end(), end) != back.end()) {
                                closed = true;
                                break;
                            }
                        }
                        violated = violated || !closed;
                    }
                }
                if (violated) {
                    report.diamond.push_back({s, a, b});
                }
            }
        }
    }
    return report;
}

/// Reachable part of any system as an explicit table, explored breadth first
/// from the initial state. Throws StateBudgetExceeded past `max_states`.
template <SystemView V>
ExplicitSystem to_explicit(const V& view, AlphabetPtr alphabet, std::size_t max_states,
                           const std::function<std::string(const typename V::state_type&)>& describe = {}) {
    using State = typename V::state_type;
    std::unordered_map<State, std::size_t> ids;
    std::vector<State> states;
    std::deque<std::size_t> queue;
    std::vector<Transition> transitions;
    const auto visit = [&](const State& s) {
        const auto [it, inserted] = ids.emplace(s, states.size());
        if (inserted) {
            if (states.size() >= max_states) {
                throw Error(ErrorCode::StateBudgetExceeded,
                            "more than " + std::to_string(max_states) + " reachable states");
            }
            states.push_back(s);
            queue.push_back(it->second);
        }
        return it->second;
    };
    visit(view.initial());
    while (!queue.empty()) {
        const std::size_t current = queue.front();
        queue.pop_front();
        for (std::size_t ai = 0; ai < alphabet->size(); ++ai) {
            if (const auto next = view.step(states[current], letter_at(ai))) {
                const std::size_t target = visit(*next);
                transitions.push_back({state_at(current), letter_at(ai), state_at(target)});
            }
        }
    }
    std::vector<std::string> names;
    names.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        names.push_back(describe ? describe(states[i]) : "s" + std::to_string(i));
    }
    return ExplicitSystem(std::move(alphabet), std::move(names), state_at(0), std::move(transitions));
}

} // namespace tracetime

#endif
