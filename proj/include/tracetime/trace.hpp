#ifndef TRACETIME_TRACE_HPP
#define TRACETIME_TRACE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tracetime/alphabet.hpp"
#include "tracetime/error.hpp"

namespace tracetime {

/// Lexicographically least word (by letter rank) in the trace class of `word`.
///
/// Occurrence i precedes occurrence j in every representative iff i < j and
/// their letters are dependent; the least linear extension of that order is
/// obtained by always emitting the smallest available letter. Two available
/// occurrences never share a letter, so the choice is unique.
inline Word canonical_word(const Word& word, const IndependenceAlphabet& alphabet) {
    alphabet.check(word);
    const std::size_t n = word.size();
    std::vector<std::size_t> pending(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (alphabet.dependent(word[i], word[j])) {
                ++pending[j];
            }
        }
    }
    std::vector<bool> emitted(n, false);
    Word out;
    out.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!emitted[j] && pending[j] == 0 && (best == n || word[j] < word[best])) {
                best = j;
            }
        }
        emitted[best] = true;
        out.push_back(word[best]);
        for (std::size_t j = best + 1; j < n; ++j) {
            if (!emitted[j] && alphabet.dependent(word[best], word[j])) {
                --pending[j];
            }
        }
    }
    return out;
}

/// An element of the trace monoid, stored as its canonical representative.
class Trace {
public:
    Trace(AlphabetPtr alphabet, const Word& word)
        : alphabet_(std::move(alphabet)), canonical_(canonical_word(word, *alphabet_)) {}

    /// The monoid unit.
    explicit Trace(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

    [[nodiscard]] const IndependenceAlphabet& alphabet() const noexcept { return *alphabet_; }
    [[nodiscard]] const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }
    [[nodiscard]] const Word& canonical() const noexcept { return canonical_; }
    [[nodiscard]] bool empty() const noexcept { return canonical_.empty(); }
    [[nodiscard]] std::size_t length() const noexcept { return canonical_.size(); }

    friend bool operator==(const Trace& lhs, const Trace& rhs) {
        return same_alphabet(*lhs.alphabet_, *rhs.alphabet_) && lhs.canonical_ == rhs.canonical_;
    }

private:
    AlphabetPtr alphabet_;
    Word canonical_;
};

inline Trace trace_of(const Word& word, const AlphabetPtr& alphabet) { return Trace(alphabet, word); }

inline void require_same_alphabet(const Trace& t1, const Trace& t2) {
    if (!same_alphabet(t1.alphabet(), t2.alphabet())) {
        throw Error(ErrorCode::AlphabetMismatch, "traces are over different alphabets");
    }
}

inline Trace trace_concat(const Trace& t1, const Trace& t2) {
    require_same_alphabet(t1, t2);
    Word joined = t1.canonical();
    joined.insert(joined.end(), t2.canonical().begin(), t2.canonical().end());
    return Trace(t1.alphabet_ptr(), joined);
}

inline Trace operator*(const Trace& t1, const Trace& t2) { return trace_concat(t1, t2); }

inline bool are_parallel(const Trace& t1, const Trace& t2) {
    require_same_alphabet(t1, t2);
    const auto& alphabet = t1.alphabet();
    for (const Letter a : t1.canonical()) {
        for (const Letter b : t2.canonical()) {
            if (!alphabet.independent(a, b)) {
                return false;
            }
        }
    }
    return true;
}

/// Sequence of steps; each step holds pairwise independent letters in rank order.
struct FoataForm {
    std::vector<std::vector<Letter>> steps;

    [[nodiscard]] std::size_t height() const noexcept { return steps.size(); }

    [[nodiscard]] Word flatten() const {
        Word out;
        for (const auto& step : steps) {
            out.insert(out.end(), step.begin(), step.end());
        }
        return out;
    }

    /// "[a][ac]..." for single-character alphabets, "[u_1 u_3]..." otherwise.
    [[nodiscard]] std::string to_string(const IndependenceAlphabet& alphabet) const {
        const std::string_view sep = alphabet.single_char_names() ? "" : " ";
        std::string out;
        for (const auto& step : steps) {
            out += '[';
            out += alphabet.format(step, sep);
            out += ']';
        }
        return out;
    }

    friend bool operator==(const FoataForm&, const FoataForm&) = default;
};

/// Foata level of every occurrence: one more than the deepest earlier
/// occurrence of a dependent letter.
inline std::vector<std::size_t> foata_levels(const Word& word, const IndependenceAlphabet& alphabet) {
    alphabet.check(word);
    std::vector<std::size_t> last_level(alphabet.size(), 0);
    std::vector<std::size_t> levels;
    levels.reserve(word.size());
    for (const Letter a : word) {
        std::size_t level = 0;
        for (std::size_t d = 0; d < alphabet.size(); ++d) {
            if (alphabet.dependent(a, letter_at(d))) {
                level = std::max(level, last_level[d]);
            }
        }
        ++level;
        last_level[index(a)] = level;
        levels.push_back(level);
    }
    return levels;
}

inline FoataForm foata_form(const Word& word, const IndependenceAlphabet& alphabet) {
    const auto levels = foata_levels(word, alphabet);
    FoataForm form;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (levels[i] > form.steps.size()) {
            form.steps.resize(levels[i]);
        }
        form.steps[levels[i] - 1].push_back(word[i]);
    }
    for (auto& step : form.steps) {
        std::sort(step.begin(), step.end());
    }
    return form;
}

inline std::size_t foata_height(const Word& word, const IndependenceAlphabet& alphabet) {
    const auto levels = foata_levels(word, alphabet);
    return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
}

inline FoataForm foata_form(const Trace& trace) { return foata_form(trace.canonical(), trace.alphabet()); }
inline std::size_t foata_height(const Trace& trace) { return foata_height(trace.canonical(), trace.alphabet()); }

} // namespace tracetime

#endif
