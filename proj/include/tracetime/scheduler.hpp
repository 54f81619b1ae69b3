#ifndef TRACETIME_SCHEDULER_HPP
#define TRACETIME_SCHEDULER_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracetime/alphabet.hpp"
#include "tracetime/timed.hpp"
#include "tracetime/trace.hpp"

namespace tracetime {

enum class Phase { Start, Run, Complete, StartComplete };

constexpr std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
        case Phase::Start: return "start";
        case Phase::Run: return "run";
        case Phase::Complete: return "complete";
        case Phase::StartComplete: return "start+complete";
    }
    return "?";
}

/// Phase of the k-th tick (0-based) of an instruction lasting `duration` ticks.
constexpr Phase phase_of(Ticks k, Ticks duration) noexcept {
    if (duration == 1) {
        return Phase::StartComplete;
    }
    if (k == 0) {
        return Phase::Start;
    }
    return k + 1 == duration ? Phase::Complete : Phase::Run;
}

struct TickEntry {
    Letter letter;
    Phase phase;

    friend bool operator==(const TickEntry&, const TickEntry&) = default;
};

struct TickSchedule {
    std::vector<std::vector<TickEntry>> ticks;

    [[nodiscard]] std::size_t makespan() const noexcept { return ticks.size(); }
};

/// Minimum parallel time of the trace of `word`: the Foata height of its expansion.
inline std::size_t min_runtime(std::span<const Letter> word, const IndependenceAlphabet& alphabet,
                               const TimeFunction& tau) {
    alphabet.check(word);
    return foata_height(expand_word(word, tau), alphabet);
}

/// The Foata steps of the expanded word, with each copy attributed to its
/// source occurrence: the c-th copy of e (counted left to right) is tick
/// c mod tau(e) of occurrence c / tau(e).
inline TickSchedule parallel_schedule(std::span<const Letter> word, const IndependenceAlphabet& alphabet,
                                      const TimeFunction& tau) {
    alphabet.check(word);
    const Word expanded = expand_word(word, tau);
    const auto levels = foata_levels(expanded, alphabet);
    std::vector<std::uint64_t> copies(alphabet.size(), 0);
    TickSchedule schedule;
    for (std::size_t i = 0; i < expanded.size(); ++i) {
        const Letter a = expanded[i];
        const Ticks k = static_cast<Ticks>(copies[index(a)]++ % tau(a));
        if (levels[i] > schedule.ticks.size()) {
            schedule.ticks.resize(levels[i]);
        }
        schedule.ticks[levels[i] - 1].push_back({a, phase_of(k, tau(a))});
    }
    for (auto& tick : schedule.ticks) {
        std::sort(tick.begin(), tick.end(), [](const TickEntry& x, const TickEntry& y) { return x.letter < y.letter; });
    }
    return schedule;
}

inline std::uint64_t sequential_runtime(std::span<const Letter> word, const TimeFunction& tau) {
    std::uint64_t total = 0;
    for (const Letter a : word) {
        total += tau(a);
    }
    return total;
}

struct SpeedupReport {
    std::uint64_t t_seq = 0;
    std::uint64_t t_par = 0;

    /// Reduced fraction t_seq / t_par; nullopt for the empty word.
    [[nodiscard]] std::optional<std::pair<std::uint64_t, std::uint64_t>> ratio() const {
        if (t_par == 0) {
            return std::nullopt;
        }
        const std::uint64_t g = std::gcd(t_seq, t_par);
        return std::pair{t_seq / g, t_par / g};
    }

    [[nodiscard]] std::optional<double> ratio_decimal() const {
        if (t_par == 0) {
            return std::nullopt;
        }
        return static_cast<double>(t_seq) / static_cast<double>(t_par);
    }
};

inline SpeedupReport speedup_report(std::span<const Letter> word, const IndependenceAlphabet& alphabet,
                                    const TimeFunction& tau) {
    return {sequential_runtime(word, tau), min_runtime(word, alphabet, tau)};
}

} // namespace tracetime

#endif
