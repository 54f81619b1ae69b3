#ifndef TRACETIME_TIMED_HPP
#define TRACETIME_TIMED_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tracetime/alphabet.hpp"
#include "tracetime/error.hpp"
#include "tracetime/system.hpp"
#include "tracetime/trace.hpp"

namespace tracetime {

using Ticks = std::uint32_t;

/// Duration in ticks of every letter. Zero durations are rejected.
class TimeFunction {
public:
    TimeFunction(const IndependenceAlphabet& alphabet, std::vector<Ticks> durations) : durations_(std::move(durations)) {
        if (durations_.size() != alphabet.size()) {
            throw Error(ErrorCode::MissingDuration, "expected " + std::to_string(alphabet.size()) + " durations, got " +
                                                        std::to_string(durations_.size()));
        }
        for (std::size_t i = 0; i < durations_.size(); ++i) {
            if (durations_[i] == 0) {
                throw Error(ErrorCode::InvalidDuration, "letter '" + alphabet.name(letter_at(i)) + "' has duration 0");
            }
        }
    }

    static TimeFunction create(const IndependenceAlphabet& alphabet, const std::map<std::string, std::int64_t>& table) {
        std::vector<Ticks> durations(alphabet.size(), 0);
        for (const auto& [name, ticks] : table) {
            const Letter a = alphabet.letter(name);
            if (ticks <= 0 || ticks > std::int64_t{UINT32_MAX}) {
                throw Error(ErrorCode::InvalidDuration,
                            "letter '" + name + "' has duration " + std::to_string(ticks) + "; durations must be >= 1");
            }
            durations[index(a)] = static_cast<Ticks>(ticks);
        }
        for (std::size_t i = 0; i < durations.size(); ++i) {
            if (durations[i] == 0) {
                throw Error(ErrorCode::MissingDuration, "no duration for letter '" + alphabet.name(letter_at(i)) + "'");
            }
        }
        return TimeFunction(alphabet, std::move(durations));
    }

    /// Every letter takes one tick.
    static TimeFunction unit(const IndependenceAlphabet& alphabet) {
        return TimeFunction(alphabet, std::vector<Ticks>(alphabet.size(), 1));
    }

    [[nodiscard]] Ticks operator()(Letter a) const {
        if (index(a) >= durations_.size()) {
            throw Error(ErrorCode::MissingDuration, "no duration for letter rank " + std::to_string(index(a)));
        }
        return durations_[index(a)];
    }

    [[nodiscard]] std::size_t size() const noexcept { return durations_.size(); }

private:
    std::vector<Ticks> durations_;
};

/// Replaces every occurrence of e by tau(e) copies of e.
inline Word expand_word(std::span<const Letter> word, const TimeFunction& tau) {
    Word out;
    for (const Letter a : word) {
        out.insert(out.end(), tau(a), a);
    }
    return out;
}

inline Trace expand_trace(const Trace& trace, const TimeFunction& tau) {
    if (tau.size() != trace.alphabet().size()) {
        throw Error(ErrorCode::MissingDuration, "time function does not cover the trace alphabet");
    }
    return Trace(trace.alphabet_ptr(), expand_word(trace.canonical(), tau));
}

/// An instruction in progress: `progress` ticks of it have elapsed.
struct InFlight {
    Letter letter;
    Ticks progress;

    friend bool operator==(const InFlight&, const InFlight&) = default;
};

/*
 * A state of the timed system: a base state plus pairwise independent
 * in-flight instructions, sorted by letter rank, each with
 * 1 <= progress < tau(letter). The base must be able to complete every
 * in-flight instruction. Only normalized states are produced by this header.
 */
template <class State>
struct TimedState {
    State base;
    std::vector<InFlight> in_flight;

    [[nodiscard]] Word in_flight_letters() const {
        Word letters;
        letters.reserve(in_flight.size());
        for (const auto& f : in_flight) {
            letters.push_back(f.letter);
        }
        return letters;
    }

    friend bool operator==(const TimedState&, const TimedState&) = default;
};

template <class State>
TimedState<State> embed(const State& s) {
    return TimedState<State>{s, {}};
}

/// Applies the identification rules: entries at progress 0 are dropped and
/// entries at progress tau(letter) are folded into the base, in rank order.
template <SystemView V>
TimedState<typename V::state_type> normalize(const V& view, const TimeFunction& tau,
                                             const typename V::state_type& base, std::vector<InFlight> raw) {
    const auto& alphabet = view.alphabet();
    std::sort(raw.begin(), raw.end(), [](const InFlight& x, const InFlight& y) { return x.letter < y.letter; });
    for (std::size_t i = 0; i < raw.size(); ++i) {
        alphabet.check(raw[i].letter);
        if (raw[i].progress > tau(raw[i].letter)) {
            throw Error(ErrorCode::InvalidInFlight, "progress of '" + alphabet.name(raw[i].letter) + "' exceeds its duration");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!alphabet.independent(raw[j].letter, raw[i].letter)) {
                throw Error(ErrorCode::InvalidInFlight, "in-flight letters '" + alphabet.name(raw[j].letter) + "' and '" +
                                                            alphabet.name(raw[i].letter) + "' are dependent");
            }
        }
    }
    TimedState<typename V::state_type> out{base, {}};
    for (const auto& f : raw) {
        if (f.progress == 0) {
            continue;
        }
        if (f.progress == tau(f.letter)) {
            auto next = view.step(out.base, f.letter);
            if (!next) {
                throw Error(ErrorCode::UndefinedCompletion,
                            "base state cannot complete '" + alphabet.name(f.letter) + "'");
            }
            out.base = std::move(*next);
        } else {
            out.in_flight.push_back(f);
        }
    }
    const Word pending = out.in_flight_letters();
    if (!run_word(view, out.base, pending)) {
        throw Error(ErrorCode::UndefinedCompletion, "base state cannot complete in-flight letters");
    }
    return out;
}

enum class MicroStepKind { Start, Advance };

struct MicroStep {
    Letter letter;
    MicroStepKind kind;
};

/// Classifies what applying `a` to `state` would do, or nullopt when the
/// action is undefined: `a` is neither in flight nor startable.
template <SystemView V>
std::optional<MicroStep> plan_micro_step(const V& view, const TimedState<typename V::state_type>& state, Letter a) {
    const auto& alphabet = view.alphabet();
    alphabet.check(a);
    for (const auto& f : state.in_flight) {
        if (f.letter == a) {
            return MicroStep{a, MicroStepKind::Advance};
        }
    }
    for (const auto& f : state.in_flight) {
        if (!alphabet.independent(f.letter, a)) {
            return std::nullopt;
        }
    }
    Word completion = state.in_flight_letters();
    completion.insert(std::upper_bound(completion.begin(), completion.end(), a), a);
    if (!run_word(view, state.base, completion)) {
        return std::nullopt;
    }
    return MicroStep{a, MicroStepKind::Start};
}

template <SystemView V>
std::optional<TimedState<typename V::state_type>> micro_step(const V& view, const TimeFunction& tau,
                                                             const TimedState<typename V::state_type>& state, Letter a) {
    const auto plan = plan_micro_step(view, state, a);
    if (!plan) {
        return std::nullopt;
    }
    std::vector<InFlight> raw = state.in_flight;
    if (plan->kind == MicroStepKind::Advance) {
        for (auto& f : raw) {
            if (f.letter == a) {
                ++f.progress;
            }
        }
    } else {
        raw.push_back({a, 1});
    }
    return normalize(view, tau, state.base, std::move(raw));
}

template <SystemView V>
std::optional<TimedState<typename V::state_type>> run_micro_word(const V& view, const TimeFunction& tau,
                                                                 const TimedState<typename V::state_type>& start,
                                                                 std::span<const Letter> word) {
    view.alphabet().check(word);
    std::optional<TimedState<typename V::state_type>> state = start;
    for (const Letter a : word) {
        state = micro_step(view, tau, *state, a);
        if (!state) {
            return std::nullopt;
        }
    }
    return state;
}

} // namespace tracetime

template <class State>
struct std::hash<tracetime::TimedState<State>> {
    std::size_t operator()(const tracetime::TimedState<State>& s) const noexcept {
        std::size_t seed = std::hash<State>{}(s.base);
        for (const auto& f : s.in_flight) {
            seed = tracetime::hash_combine(seed, tracetime::index(f.letter));
            seed = tracetime::hash_combine(seed, f.progress);
        }
        return seed;
    }
};

#endif
