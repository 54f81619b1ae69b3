#ifndef TRACETIME_SYSTEM_HPP
#define TRACETIME_SYSTEM_HPP

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "tracetime/alphabet.hpp"

namespace tracetime {

inline std::size_t hash_combine(std::size_t seed, std::size_t value) noexcept {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

/// A state space with a deterministic partial action of the alphabet's letters.
template <class V>
concept SystemView = requires(const V& view, const typename V::state_type& state, Letter a) {
    typename V::state_type;
    { view.alphabet() } -> std::convertible_to<const IndependenceAlphabet&>;
    { view.initial() } -> std::convertible_to<typename V::state_type>;
    { view.step(state, a) } -> std::same_as<std::optional<typename V::state_type>>;
    { std::hash<typename V::state_type>{}(state) } -> std::convertible_to<std::size_t>;
    { state == state } -> std::convertible_to<bool>;
};

/// Left-to-right action of a word; nullopt as soon as a letter is not enabled.
template <SystemView V>
std::optional<typename V::state_type> run_word(const V& view, const typename V::state_type& start,
                                               std::span<const Letter> word) {
    view.alphabet().check(word);
    std::optional<typename V::state_type> state = start;
    for (const Letter a : word) {
        state = view.step(*state, a);
        if (!state) {
            return std::nullopt;
        }
    }
    return state;
}

} // namespace tracetime

#endif
