#ifndef TRACETIME_PETRI_NET_HPP
#define TRACETIME_PETRI_NET_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracetime/alphabet.hpp"
#include "tracetime/error.hpp"
#include "tracetime/system.hpp"

namespace tracetime {

using TokenCount = std::uint64_t;

/// Token counts indexed by place position in the owning net.
struct Marking {
    std::vector<TokenCount> tokens;

    [[nodiscard]] TokenCount total() const noexcept {
        TokenCount sum = 0;
        for (const TokenCount t : tokens) {
            sum += t;
        }
        return sum;
    }

    friend bool operator==(const Marking&, const Marking&) = default;
};

/// Name-level description of a place/transition net; PetriNet::create checks it.
struct PetriNetDefinition {
    std::vector<std::string> transitions;
    std::vector<std::string> places;
    std::map<std::string, std::map<std::string, std::int64_t>> consume;
    std::map<std::string, std::map<std::string, std::int64_t>> produce;
    std::map<std::string, std::int64_t> initial_marking;
};

class PetriNet {
public:
    using state_type = Marking;
    using Arc = std::pair<std::size_t, TokenCount>;

    static PetriNet create(const PetriNetDefinition& def) {
        PetriNet net;
        net.places_ = def.places;
        for (std::size_t i = 0; i < net.places_.size(); ++i) {
            if (!net.place_ids_.emplace(net.places_[i], i).second) {
                throw Error(ErrorCode::DuplicatePlace, "place '" + net.places_[i] + "' declared twice");
            }
        }
        // Transitions are validated as letters before independence is known.
        const auto plain = IndependenceAlphabet::create(def.transitions, {});
        for (const auto& [name, arcs] : def.consume) {
            (void)plain->letter(name);
        }
        for (const auto& [name, arcs] : def.produce) {
            (void)plain->letter(name);
        }
        const auto arcs_of = [&](const auto& table, const std::string& transition) {
            std::vector<Arc> arcs;
            const auto it = table.find(transition);
            if (it == table.end()) {
                return arcs;
            }
            for (const auto& [place, weight] : it->second) {
                if (weight <= 0) {
                    throw Error(ErrorCode::InvalidWeight, "arc " + transition + "/" + place + " has weight " +
                                                              std::to_string(weight) + "; weights must be positive");
                }
                arcs.emplace_back(net.place(place), static_cast<TokenCount>(weight));
            }
            std::sort(arcs.begin(), arcs.end());
            return arcs;
        };
        for (const auto& t : def.transitions) {
            net.consume_.push_back(arcs_of(def.consume, t));
            net.produce_.push_back(arcs_of(def.produce, t));
        }
        net.initial_.tokens.assign(net.places_.size(), 0);
        for (const auto& [place, count] : def.initial_marking) {
            if (count < 0) {
                throw Error(ErrorCode::InvalidWeight, "place '" + place + "' has a negative token count");
            }
            net.initial_.tokens[net.place(place)] = static_cast<TokenCount>(count);
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (std::size_t i = 0; i < def.transitions.size(); ++i) {
            for (std::size_t j = i + 1; j < def.transitions.size(); ++j) {
                if (net.disjoint_places(i, j)) {
                    pairs.emplace_back(def.transitions[i], def.transitions[j]);
                }
            }
        }
        net.alphabet_ = IndependenceAlphabet::create(def.transitions, pairs);
        return net;
    }

    [[nodiscard]] const IndependenceAlphabet& alphabet() const noexcept { return *alphabet_; }
    [[nodiscard]] const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }
    [[nodiscard]] const Marking& initial() const noexcept { return initial_; }
    [[nodiscard]] const std::vector<std::string>& places() const noexcept { return places_; }
    [[nodiscard]] const std::vector<Arc>& consume(Letter t) const { return consume_.at(checked(t)); }
    [[nodiscard]] const std::vector<Arc>& produce(Letter t) const { return produce_.at(checked(t)); }

    [[nodiscard]] std::size_t place(const std::string& name) const {
        const auto it = place_ids_.find(name);
        if (it == place_ids_.end()) {
            throw Error(ErrorCode::UnknownPlace, "place '" + name + "' is not declared");
        }
        return it->second;
    }

    /// Places read or written by the transition, sorted.
    [[nodiscard]] std::vector<std::size_t> touched_places(Letter t) const {
        std::vector<std::size_t> touched;
        for (const auto& [p, w] : consume(t)) {
            touched.push_back(p);
        }
        for (const auto& [p, w] : produce(t)) {
            touched.push_back(p);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        return touched;
    }

    /// Fires `t` when every input place holds enough tokens.
    [[nodiscard]] std::optional<Marking> step(const Marking& marking, Letter t) const {
        const std::size_t ti = checked(t);
        for (const auto& [p, w] : consume_[ti]) {
            if (marking.tokens[p] < w) {
                return std::nullopt;
            }
        }
        Marking next = marking;
        for (const auto& [p, w] : consume_[ti]) {
            next.tokens[p] -= w;
        }
        for (const auto& [p, w] : produce_[ti]) {
            next.tokens[p] += w;
        }
        return next;
    }

    [[nodiscard]] Marking marking(const std::map<std::string, std::int64_t>& counts) const {
        Marking m;
        m.tokens.assign(places_.size(), 0);
        for (const auto& [name, count] : counts) {
            if (count < 0) {
                throw Error(ErrorCode::InvalidWeight, "place '" + name + "' has a negative token count");
            }
            m.tokens[place(name)] = static_cast<TokenCount>(count);
        }
        return m;
    }

    /// "{p1:1,sink:2}" in place declaration order; empty places are omitted.
    [[nodiscard]] std::string format(const Marking& m) const {
        std::string out = "{";
        bool first = true;
        for (std::size_t p = 0; p < places_.size(); ++p) {
            if (m.tokens[p] == 0) {
                continue;
            }
            if (!first) {
                out += ',';
            }
            first = false;
            out += places_[p] + ":" + std::to_string(m.tokens[p]);
        }
        return out + "}";
    }

private:
    PetriNet() = default;

    [[nodiscard]] std::size_t checked(Letter t) const {
        if (index(t) >= consume_.size()) {
            throw Error(ErrorCode::UnknownTransition, "transition rank " + std::to_string(index(t)) + " out of range");
        }
        return index(t);
    }

    [[nodiscard]] bool disjoint_places(std::size_t i, std::size_t j) const {
        const auto a = touched_places(letter_at(i));
        const auto b = touched_places(letter_at(j));
        std::vector<std::size_t> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        return common.empty();
    }

    AlphabetPtr alphabet_;
    std::vector<std::string> places_;
    std::unordered_map<std::string, std::size_t> place_ids_;
    std::vector<std::vector<Arc>> consume_;
    std::vector<std::vector<Arc>> produce_;
    Marking initial_;
};

/// Transitions sharing no place, as (t1,t2) with t1 < t2.
inline std::vector<LetterPair> petri_independence(const PetriNet& net) { return net.alphabet().independent_pairs(); }

inline std::optional<Marking> petri_step(const PetriNet& net, const Marking& marking, Letter t) {
    return net.step(marking, t);
}

} // namespace tracetime

template <>
struct std::hash<tracetime::Marking> {
    std::size_t operator()(const tracetime::Marking& m) const noexcept {
        std::size_t seed = m.tokens.size();
        for (const auto t : m.tokens) {
            seed = tracetime::hash_combine(seed, std::hash<tracetime::TokenCount>{}(t));
        }
        return seed;
    }
};

#endif
