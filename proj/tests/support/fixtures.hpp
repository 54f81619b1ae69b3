#ifndef TRACETIME_TESTS_FIXTURES_HPP
#define TRACETIME_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tracetime/system_file.hpp"
#include "tracetime/tracetime.hpp"

namespace tracetime::testing {

/// Three-stage pipeline a -> b -> c; a and c share no place.
inline AlphabetPtr pipeline_alphabet() { return validate_alphabet({"a", "b", "c"}, {{"a", "c"}}); }

inline TimeFunction pipeline_tau(const IndependenceAlphabet& alphabet) {
    return TimeFunction::create(alphabet, {{"a", 3}, {"b", 1}, {"c", 2}});
}

inline Word repeat(const Word& block, std::size_t n) {
    Word out;
    for (std::size_t i = 0; i < n; ++i) {
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

inline Word word_of(const IndependenceAlphabet& alphabet, const std::string& compact) {
    Word w;
    for (const char c : compact) {
        w.push_back(alphabet.letter(std::string(1, c)));
    }
    return w;
}

/// Bounded pipeline net with transitions a, b, c (times 3, 1, 2) and `jobs` source tokens.
inline PetriNet pipeline_net(std::int64_t jobs) {
    const auto doc = pipeline_document(3, {3, 1, 2}, jobs, {"a", "b", "c"});
    return std::get<PetriNet>(parse_system(doc.dump()).system);
}

inline Marking pipeline_final(const PetriNet& net, std::int64_t jobs) { return net.marking({{"sink", jobs}}); }

inline AlphabetPtr random_alphabet(std::mt19937& rng, std::size_t letters, double independence) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < letters; ++i) {
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    std::bernoulli_distribution coin(independence);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < letters; ++i) {
        for (std::size_t j = i + 1; j < letters; ++j) {
            if (coin(rng)) {
                pairs.emplace_back(names[i], names[j]);
            }
        }
    }
    return validate_alphabet(names, pairs);
}

inline Word random_word(std::mt19937& rng, const IndependenceAlphabet& alphabet, std::size_t length) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    Word w;
    for (std::size_t i = 0; i < length; ++i) {
        w.push_back(letter_at(pick(rng)));
    }
    return w;
}

inline TimeFunction random_tau(std::mt19937& rng, const IndependenceAlphabet& alphabet, Ticks max_ticks) {
    std::uniform_int_distribution<Ticks> pick(1, max_ticks);
    std::vector<Ticks> durations;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        durations.push_back(pick(rng));
    }
    return TimeFunction(alphabet, std::move(durations));
}

/// Same letters and transitions over a new alphabet keeping each
/// independent pair with probability `keep`. Dropping pairs preserves validity.
inline ExplicitSystem thin_independence(std::mt19937& rng, const ExplicitSystem& system, double keep) {
    const auto& alphabet = system.alphabet();
    std::bernoulli_distribution coin(keep);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [a, b] : alphabet.independent_pairs()) {
        if (coin(rng)) {
            pairs.emplace_back(alphabet.name(a), alphabet.name(b));
        }
    }
    auto thinned = validate_alphabet(alphabet.names(), pairs);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < system.state_count(); ++i) {
        names.push_back(system.state_name(state_at(i)));
    }
    return ExplicitSystem(thinned, names, system.initial(), system.transitions());
}

/// Reachable graph of a random place/transition net with at most
/// `max_states` markings; independence is the derived no-shared-place relation.
inline ExplicitSystem random_petri_system(std::mt19937& rng, std::size_t max_letters, std::size_t max_states) {
    std::uniform_int_distribution<std::size_t> letter_count(2, max_letters);
    std::uniform_int_distribution<std::size_t> place_count(2, 5);
    std::uniform_int_distribution<int> arcs(0, 2);
    std::uniform_int_distribution<int> weight(1, 2);
    std::uniform_int_distribution<int> tokens(0, 2);
    for (;;) {
        PetriNetDefinition def;
        const std::size_t letters = letter_count(rng);
        const std::size_t places = place_count(rng);
        for (std::size_t i = 0; i < letters; ++i) {
            def.transitions.push_back(std::string(1, static_cast<char>('a' + i)));
        }
        for (std::size_t p = 0; p < places; ++p) {
            def.places.push_back("p" + std::to_string(p));
        }
        std::uniform_int_distribution<std::size_t> pick_place(0, places - 1);
        for (const auto& t : def.transitions) {
            for (int k = arcs(rng); k > 0; --k) {
                def.consume[t][def.places[pick_place(rng)]] = weight(rng);
            }
            for (int k = arcs(rng); k > 0; --k) {
                def.produce[t][def.places[pick_place(rng)]] = weight(rng);
            }
        }
        for (const auto& p : def.places) {
            def.initial_marking[p] = tokens(rng);
        }
        const auto net = PetriNet::create(def);
        try {
            auto system = to_explicit(net, net.alphabet_ptr(), max_states,
                                      std::function<std::string(const Marking&)>(
                                          [&](const Marking& m) { return net.format(m); }));
            if (system.state_count() >= 2) {
                return system;
            }
        } catch (const Error&) {
            // unbounded or too large; draw again
        }
    }
}

/// Random deterministic table whose independence relation is a random subset
/// of the pairs that satisfy the diamond condition everywhere.
inline ExplicitSystem random_table_system(std::mt19937& rng, std::size_t max_letters, std::size_t max_states) {
    std::uniform_int_distribution<std::size_t> letter_count(2, max_letters);
    std::uniform_int_distribution<std::size_t> state_count(2, max_states);
    std::bernoulli_distribution defined(0.5);
    const std::size_t letters = letter_count(rng);
    const std::size_t states = state_count(rng);
    std::uniform_int_distribution<std::size_t> pick_state(0, states - 1);
    std::vector<Transition> transitions;
    for (std::size_t s = 0; s < states; ++s) {
        for (std::size_t a = 0; a < letters; ++a) {
            if (defined(rng)) {
                transitions.push_back({state_at(s), letter_at(a), state_at(pick_state(rng))});
            }
        }
    }
    std::vector<std::string> names;
    std::vector<std::string> state_names;
    for (std::size_t a = 0; a < letters; ++a) {
        names.push_back(std::string(1, static_cast<char>('a' + a)));
    }
    for (std::size_t s = 0; s < states; ++s) {
        state_names.push_back("s" + std::to_string(s));
    }
    std::vector<std::pair<std::string, std::string>> all_pairs;
    for (std::size_t a = 0; a < letters; ++a) {
        for (std::size_t b = a + 1; b < letters; ++b) {
            all_pairs.emplace_back(names[a], names[b]);
        }
    }
    const ExplicitSystem full(validate_alphabet(names, all_pairs), state_names, state_at(0), transitions);
    const auto report = validate_axioms(full);
    std::vector<std::pair<std::string, std::string>> valid;
    for (const auto& [x, y] : all_pairs) {
        const Letter a = full.alphabet().letter(x);
        const Letter b = full.alphabet().letter(y);
        const bool broken = std::any_of(report.diamond.begin(), report.diamond.end(), [&](const DiamondViolation& v) {
            return (v.first == a && v.second == b) || (v.first == b && v.second == a);
        });
        if (!broken && defined(rng)) {
            valid.emplace_back(x, y);
        }
    }
    return ExplicitSystem(validate_alphabet(names, valid), state_names, state_at(0), transitions);
}

/// Valid asynchronous system with at most 4 letters and 25 states.
inline ExplicitSystem random_valid_system(std::mt19937& rng) {
    std::bernoulli_distribution petri(0.7);
    if (petri(rng)) {
        return thin_independence(rng, random_petri_system(rng, 4, 25), 0.8);
    }
    return random_table_system(rng, 4, 25);
}

} // namespace tracetime::testing

#endif
