#ifndef TRACETIME_ALPHABET_HPP
#define TRACETIME_ALPHABET_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracetime/error.hpp"

namespace tracetime {

/// An instruction, identified by its rank in the alphabet's total order.
enum class Letter : std::uint32_t {};

constexpr std::size_t index(Letter a) noexcept { return static_cast<std::size_t>(a); }
constexpr Letter letter_at(std::size_t rank) noexcept { return static_cast<Letter>(rank); }

using Word = std::vector<Letter>;
using LetterPair = std::pair<Letter, Letter>;

/*
 * A finite instruction set with a fixed total order (declaration order) and an
 * irreflexive symmetric independence relation. Instances are immutable and are
 * shared between traces, systems and time functions through AlphabetPtr.
 */
class IndependenceAlphabet {
public:
    static std::shared_ptr<const IndependenceAlphabet>
    create(std::vector<std::string> letters,
           const std::vector<std::pair<std::string, std::string>>& independent_pairs) {
        auto alphabet = std::shared_ptr<IndependenceAlphabet>(new IndependenceAlphabet());
        alphabet->names_ = std::move(letters);
        for (std::size_t i = 0; i < alphabet->names_.size(); ++i) {
            if (!alphabet->ranks_.emplace(alphabet->names_[i], i).second) {
                throw Error(ErrorCode::DuplicateLetter, "letter '" + alphabet->names_[i] + "' declared twice");
            }
        }
        const std::size_t n = alphabet->names_.size();
        alphabet->independent_.assign(n * n, false);
        for (const auto& [first, second] : independent_pairs) {
            if (first == second) {
                throw Error(ErrorCode::ReflexivePair, "pair (" + first + "," + second + ") is reflexive");
            }
            const Letter a = alphabet->letter(first);
            const Letter b = alphabet->letter(second);
            alphabet->independent_[index(a) * n + index(b)] = true;
            alphabet->independent_[index(b) * n + index(a)] = true;
        }
        return alphabet;
    }

    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }

    [[nodiscard]] const std::string& name(Letter a) const {
        check(a);
        return names_[index(a)];
    }

    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

    [[nodiscard]] Letter letter(std::string_view name) const {
        const auto it = ranks_.find(std::string(name));
        if (it == ranks_.end()) {
            throw Error(ErrorCode::UnknownLetter, "'" + std::string(name) + "' is not in the alphabet");
        }
        return letter_at(it->second);
    }

    [[nodiscard]] bool contains(std::string_view name) const { return ranks_.contains(std::string(name)); }
    [[nodiscard]] bool contains(Letter a) const noexcept { return index(a) < names_.size(); }

    void check(Letter a) const {
        if (!contains(a)) {
            throw Error(ErrorCode::UnknownLetter, "letter rank " + std::to_string(index(a)) + " out of range");
        }
    }

    void check(std::span<const Letter> word) const {
        for (const Letter a : word) {
            check(a);
        }
    }

    [[nodiscard]] bool independent(Letter a, Letter b) const {
        check(a);
        check(b);
        return independent_[index(a) * size() + index(b)];
    }

    /// Negation of independent(); every letter depends on itself.
    [[nodiscard]] bool dependent(Letter a, Letter b) const { return !independent(a, b); }

    /// Independent pairs (a,b) with a < b, in rank order.
    [[nodiscard]] std::vector<LetterPair> independent_pairs() const {
        std::vector<LetterPair> pairs;
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = i + 1; j < size(); ++j) {
                if (independent_[i * size() + j]) {
                    pairs.emplace_back(letter_at(i), letter_at(j));
                }
            }
        }
        return pairs;
    }

    [[nodiscard]] Word parse_word(std::span<const std::string> names) const {
        Word word;
        word.reserve(names.size());
        for (const auto& n : names) {
            word.push_back(letter(n));
        }
        return word;
    }

    /// True when every name is a single character, so words can be written compactly.
    [[nodiscard]] bool single_char_names() const {
        return std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
    }

    [[nodiscard]] std::string format(std::span<const Letter> word, std::string_view separator = " ") const {
        std::string out;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (i > 0) {
                out += separator;
            }
            out += name(word[i]);
        }
        return out;
    }

    friend bool operator==(const IndependenceAlphabet& lhs, const IndependenceAlphabet& rhs) {
        return lhs.names_ == rhs.names_ && lhs.independent_ == rhs.independent_;
    }

private:
    IndependenceAlphabet() = default;

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> ranks_;
    std::vector<bool> independent_;
};

using AlphabetPtr = std::shared_ptr<const IndependenceAlphabet>;

inline AlphabetPtr validate_alphabet(std::vector<std::string> letters,
                                     const std::vector<std::pair<std::string, std::string>>& pairs) {
    return IndependenceAlphabet::create(std::move(letters), pairs);
}

inline bool same_alphabet(const IndependenceAlphabet& lhs, const IndependenceAlphabet& rhs) {
    return &lhs == &rhs || lhs == rhs;
}

} // namespace tracetime

#endif
