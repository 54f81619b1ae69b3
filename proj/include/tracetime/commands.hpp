#ifndef TRACETIME_COMMANDS_HPP
#define TRACETIME_COMMANDS_HPP

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tracetime/alphabet.hpp"
#include "tracetime/error.hpp"
#include "tracetime/explicit_system.hpp"
#include "tracetime/petri_net.hpp"
#include "tracetime/reach.hpp"
#include "tracetime/scheduler.hpp"
#include "tracetime/system_file.hpp"
#include "tracetime/trace.hpp"

// Subcommands of the tracetime tool. Each writes its report to `out`,
// diagnostics to `err`, and returns the process exit status:
// 0 success, 1 domain negative, 2 usage or parse error, 3 state budget.
namespace tracetime::cli {

inline constexpr int Ok = 0;
inline constexpr int Negative = 1;
inline constexpr int Usage = 2;
inline constexpr int Budget = 3;

inline int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Format:
        case ErrorCode::InvalidArgument: return Usage;
        case ErrorCode::StateBudgetExceeded: return Budget;
        default: return Negative;
    }
}

inline int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    }
}

/// Letter names separated by whitespace or commas. A token that is not a
/// letter name is read character by character when all names are one
/// character long, so "aaabcc" and "a a a b c c" are the same word.
inline Word parse_word(const IndependenceAlphabet& alphabet, const std::string& text) {
    Word word;
    std::string token;
    const auto flush = [&] {
        if (token.empty()) {
            return;
        }
        if (alphabet.contains(token)) {
            word.push_back(alphabet.letter(token));
        } else if (alphabet.single_char_names()) {
            for (const char c : token) {
                word.push_back(alphabet.letter(std::string(1, c)));
            }
        } else {
            (void)alphabet.letter(token);
        }
        token.clear();
    };
    for (const char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0 || c == ',') {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    return word;
}

inline std::string format_pairs(const IndependenceAlphabet& alphabet, const std::vector<LetterPair>& pairs) {
    std::string out = "{";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += "(" + alphabet.name(pairs[i].first) + "," + alphabet.name(pairs[i].second) + ")";
    }
    return out + "}";
}

inline std::string format_tick(const IndependenceAlphabet& alphabet, std::size_t t, const std::vector<TickEntry>& tick) {
    std::string line = "t=" + std::to_string(t) + ":";
    for (const auto& entry : tick) {
        line += " " + alphabet.name(entry.letter) + "(" + std::string(to_string(entry.phase)) + ")";
    }
    return line;
}

/// State argument: a state name for explicit systems; for Petri nets
/// "initial" or a marking such as "sink:2,p_1:1" (braces optional).
inline ExplicitSystem::state_type parse_state(const ExplicitSystem& system, const std::string& text) {
    return system.state(text);
}

inline Marking parse_state(const PetriNet& net, const std::string& text) {
    if (text == "initial") {
        return net.initial();
    }
    std::string body = text;
    if (body.size() >= 2 && body.front() == '{' && body.back() == '}') {
        body = body.substr(1, body.size() - 2);
    }
    std::map<std::string, std::int64_t> counts;
    std::string item;
    std::istringstream in(body);
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw Error(ErrorCode::InvalidArgument, "marking entry '" + item + "' is not place:count");
        }
        const std::string place = item.substr(0, colon);
        std::int64_t count = 0;
        try {
            std::size_t used = 0;
            count = std::stoll(item.substr(colon + 1), &used);
            if (used != item.size() - colon - 1) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "marking entry '" + item + "' has a bad count");
        }
        if (count < 0) {
            throw Error(ErrorCode::InvalidArgument, "marking entry '" + item + "' is negative");
        }
        counts[place] += count;
    }
    for (const auto& [place, count] : counts) {
        if (!std::count(net.places().begin(), net.places().end(), place)) {
            throw Error(ErrorCode::UnknownState, "marking names unknown place '" + place + "'");
        }
    }
    return net.marking(counts);
}

inline std::string describe(const ExplicitSystem& system, StateId s) { return system.state_name(s); }
inline std::string describe(const PetriNet& net, const Marking& m) { return net.format(m); }

inline void print_report(std::ostream& out, const ExplicitSystem& system, const AxiomReport& report,
                         const std::function<std::string(StateId)>& name) {
    const auto& alphabet = system.alphabet();
    out << "determinism_violations: " << report.determinism.size() << '\n';
    for (const auto& v : report.determinism) {
        out << "determinism: state " << name(v.state) << " letter " << alphabet.name(v.letter) << " targets";
        for (const auto t : v.targets) {
            out << ' ' << name(t);
        }
        out << '\n';
    }
    out << "diamond_violations: " << report.diamond.size() << '\n';
    for (const auto& v : report.diamond) {
        out << "diamond: state " << name(v.state) << " letters (" << alphabet.name(v.first) << ","
            << alphabet.name(v.second) << ")\n";
    }
}

inline int cmd_validate(const std::string& path, std::size_t max_states, std::ostream& out, std::ostream& err) {
    std::optional<SystemFile> file;
    try {
        file = load_system(path);
    } catch (const Error& e) {
        if (exit_code_for(e.code()) != Negative) {
            err << "error: " << e.what() << '\n';
            return exit_code_for(e.code());
        }
        out << "error: " << e.what() << '\n';
        out << "status: invalid\n";
        return Negative;
    }
    return guarded(err, [&] {
        bool clean = true;
        const auto& alphabet = *file->alphabet;
        if (const auto* net = std::get_if<PetriNet>(&file->system)) {
            out << "kind: petri\n";
            out << "independence: " << format_pairs(alphabet, petri_independence(*net)) << '\n';
            const auto reachable = to_explicit(*net, file->alphabet, max_states,
                                               std::function<std::string(const Marking&)>(
                                                   [&](const Marking& m) { return net->format(m); }));
            out << "reachable_states: " << reachable.state_count() << '\n';
            const auto report = validate_axioms(reachable);
            print_report(out, reachable, report, [&](StateId s) { return reachable.state_name(s); });
            clean = report.clean();
        } else {
            const auto& system = std::get<ExplicitSystem>(file->system);
            out << "kind: explicit\n";
            out << "independence: " << format_pairs(alphabet, alphabet.independent_pairs()) << '\n';
            out << "states: " << system.state_count() << '\n';
            const auto report = validate_axioms(system);
            print_report(out, system, report, [&](StateId s) { return system.state_name(s); });
            clean = report.clean();
        }
        if (file->time) {
            try {
                (void)file->time_function();
            } catch (const Error& e) {
                out << "error: " << e.what() << '\n';
                clean = false;
            }
        }
        out << "status: " << (clean ? "valid" : "invalid") << '\n';
        return clean ? Ok : Negative;
    });
}

inline int cmd_foata(const std::string& path, const std::string& word_text, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto file = load_system(path);
        const Word word = parse_word(*file.alphabet, word_text);
        const auto form = foata_form(word, *file.alphabet);
        out << "foata: " << form.to_string(*file.alphabet) << '\n';
        out << "height: " << form.height() << '\n';
        return Ok;
    });
}

inline int cmd_min_time(const std::string& path, const std::string& word_text, const std::optional<std::string>& from,
                        bool show_schedule, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto file = load_system(path);
        const auto& alphabet = *file.alphabet;
        const Word word = parse_word(alphabet, word_text);
        const TimeFunction tau = file.time_function();
        const auto schedule = parallel_schedule(word, alphabet, tau);
        out << "t_par: " << schedule.makespan() << '\n';
        if (show_schedule) {
            for (std::size_t t = 0; t < schedule.ticks.size(); ++t) {
                out << format_tick(alphabet, t + 1, schedule.ticks[t]) << '\n';
            }
        }
        if (!from) {
            return Ok;
        }
        return std::visit(
            [&](const auto& system) {
                const auto start = parse_state(system, *from);
                const auto reached = run_word(system, start, word);
                if (!reached) {
                    out << "word not executable from " << *from << '\n';
                    return Negative;
                }
                out << "reached: " << describe(system, *reached) << '\n';
                return Ok;
            },
            file.system);
    });
}

inline int cmd_reach(const std::string& path, const std::string& target_text, const std::optional<std::string>& from,
                     const SearchOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto file = load_system(path);
        const auto& alphabet = *file.alphabet;
        const TimeFunction tau = file.time_function();
        if (const auto* system = std::get_if<ExplicitSystem>(&file.system)) {
            if (!validate_axioms(*system).clean()) {
                throw Error(ErrorCode::InvalidSystem,
                            "system violates the asynchronous-system axioms; run 'validate' for details");
            }
        }
        return std::visit(
            [&](const auto& system) {
                const auto source = from ? parse_state(system, *from) : system.initial();
                const auto target = parse_state(system, target_text);
                const auto result = bfs_min_time(system, tau, source, target, options);
                if (!result.found) {
                    out << "unreachable\n";
                    out << "explored: " << result.explored << '\n';
                    return Negative;
                }
                out << "time: " << result.time << '\n';
                const auto ticks = annotate_schedule(system, tau, source, result.schedule);
                for (std::size_t t = 0; t < ticks.size(); ++t) {
                    out << format_tick(alphabet, t + 1, ticks[t]) << '\n';
                }
                out << "explored: " << result.explored << '\n';
                return Ok;
            },
            file.system);
    });
}

inline int cmd_speedup(const std::string& path, const std::string& word_text, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto file = load_system(path);
        const Word word = parse_word(*file.alphabet, word_text);
        const auto report = speedup_report(word, *file.alphabet, file.time_function());
        out << "T_1: " << report.t_seq << '\n';
        out << "T_min: " << report.t_par << '\n';
        if (const auto ratio = report.ratio()) {
            char decimal[32];
            std::snprintf(decimal, sizeof decimal, "%.4f", *report.ratio_decimal());
            out << "ratio: " << ratio->first << '/' << ratio->second << '\n';
            out << "ratio_decimal: " << decimal << '\n';
        } else {
            out << "ratio: n/a\n";
            out << "ratio_decimal: n/a\n";
        }
        return Ok;
    });
}

inline int cmd_pipeline_gen(std::size_t stages, const std::vector<std::int64_t>& times, std::int64_t jobs,
                            const std::vector<std::string>& names, const std::string& out_path, std::ostream& out,
                            std::ostream& err) {
    return guarded(err, [&] {
        const auto doc = pipeline_document(stages, times, jobs, names);
        if (out_path.empty() || out_path == "-") {
            out << doc.dump(2) << '\n';
            return Ok;
        }
        std::ofstream file(out_path);
        if (!file) {
            throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
        }
        file << doc.dump(2) << '\n';
        out << "wrote: " << out_path << '\n';
        return Ok;
    });
}

} // namespace tracetime::cli

#endif
