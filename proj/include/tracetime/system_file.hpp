#ifndef TRACETIME_SYSTEM_FILE_HPP
#define TRACETIME_SYSTEM_FILE_HPP

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "tracetime/alphabet.hpp"
#include "tracetime/error.hpp"
#include "tracetime/explicit_system.hpp"
#include "tracetime/petri_net.hpp"
#include "tracetime/timed.hpp"

namespace tracetime {

/*
 * System document (JSON):
 *
 *   {
 *     "alphabet": ["a", "b", "c"],
 *     "independence": [["a", "c"]],          // explicit systems only
 *     "time": {"a": 3, "b": 1, "c": 2},      // optional
 *     "system": {"kind": "explicit", "states": [...], "initial": "s0",
 *                "transitions": [["s0", "a", "s1"], ...]}
 *            or {"kind": "petri", "places": [...], "initial_marking": {"p": 1},
 *                "transitions": {"a": {"consume": {...}, "produce": {...}}}}
 *   }
 *
 * Unknown members are rejected. Structural problems raise ErrorCode::Format
 * with a JSON-pointer-like path; semantic problems keep their own codes.
 */
struct SystemFile {
    AlphabetPtr alphabet;
    std::optional<std::map<std::string, std::int64_t>> time;
    std::variant<ExplicitSystem, PetriNet> system;

    [[nodiscard]] bool is_petri() const noexcept { return std::holds_alternative<PetriNet>(system); }

    /// Throws MissingDuration when the document has no "time" member.
    [[nodiscard]] TimeFunction time_function() const {
        if (!time) {
            throw Error(ErrorCode::MissingDuration, "document has no \"time\" member");
        }
        return TimeFunction::create(*alphabet, *time);
    }
};

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void format_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::Format, (path.empty() ? std::string("/") : path) + ": " + what);
}

inline void only_members(const json& node, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!node.is_object()) {
        format_error(path, "expected an object");
    }
    for (const auto& [key, value] : node.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
            format_error(path + "/" + key, "unknown member");
        }
    }
}

inline const json& member(const json& node, const std::string& path, const char* key) {
    const auto it = node.find(key);
    if (it == node.end()) {
        format_error(path + "/" + key, "missing member");
    }
    return *it;
}

inline std::string as_string(const json& node, const std::string& path) {
    if (!node.is_string()) {
        format_error(path, "expected a string");
    }
    return node.get<std::string>();
}

inline std::int64_t as_integer(const json& node, const std::string& path) {
    if (!node.is_number_integer()) {
        format_error(path, "expected an integer");
    }
    return node.get<std::int64_t>();
}

inline std::vector<std::string> as_strings(const json& node, const std::string& path) {
    if (!node.is_array()) {
        format_error(path, "expected an array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(as_string(node[i], path + "/" + std::to_string(i)));
    }
    return out;
}

inline std::map<std::string, std::int64_t> as_counts(const json& node, const std::string& path) {
    if (!node.is_object()) {
        format_error(path, "expected an object of integers");
    }
    std::map<std::string, std::int64_t> out;
    for (const auto& [key, value] : node.items()) {
        out.emplace(key, as_integer(value, path + "/" + key));
    }
    return out;
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Format, e.what());
    }
}

} // namespace detail

inline SystemFile parse_system(const std::string& text) {
    using detail::json;
    const json doc = detail::parse_json(text);
    detail::only_members(doc, "", {"alphabet", "independence", "time", "system"});
    const auto letters = detail::as_strings(detail::member(doc, "", "alphabet"), "/alphabet");
    const json& system = detail::member(doc, "", "system");
    const std::string kind = detail::as_string(detail::member(system, "/system", "kind"), "/system/kind");

    std::optional<std::map<std::string, std::int64_t>> time;
    if (doc.contains("time")) {
        time = detail::as_counts(doc["time"], "/time");
    }

    if (kind == "explicit") {
        detail::only_members(system, "/system", {"kind", "states", "initial", "transitions"});
        const json& independence = detail::member(doc, "", "independence");
        if (!independence.is_array()) {
            detail::format_error("/independence", "expected an array of pairs");
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (std::size_t i = 0; i < independence.size(); ++i) {
            const auto pair = detail::as_strings(independence[i], "/independence/" + std::to_string(i));
            if (pair.size() != 2) {
                detail::format_error("/independence/" + std::to_string(i), "expected exactly two names");
            }
            pairs.emplace_back(pair[0], pair[1]);
        }
        auto states = detail::as_strings(detail::member(system, "/system", "states"), "/system/states");
        const auto initial = detail::as_string(detail::member(system, "/system", "initial"), "/system/initial");
        const json& transitions = detail::member(system, "/system", "transitions");
        if (!transitions.is_array()) {
            detail::format_error("/system/transitions", "expected an array of triples");
        }
        std::vector<std::array<std::string, 3>> triples;
        for (std::size_t i = 0; i < transitions.size(); ++i) {
            const std::string path = "/system/transitions/" + std::to_string(i);
            const auto triple = detail::as_strings(transitions[i], path);
            if (triple.size() != 3) {
                detail::format_error(path, "expected [state, letter, state]");
            }
            triples.push_back({triple[0], triple[1], triple[2]});
        }
        auto alphabet = IndependenceAlphabet::create(letters, pairs);
        auto explicit_system = ExplicitSystem::create(alphabet, std::move(states), initial, triples);
        return SystemFile{std::move(alphabet), std::move(time), std::move(explicit_system)};
    }

    if (kind == "petri") {
        detail::only_members(system, "/system", {"kind", "places", "initial_marking", "transitions"});
        if (doc.contains("independence")) {
            detail::format_error("/independence", "not allowed for Petri nets; independence is derived from shared places");
        }
        PetriNetDefinition def;
        def.transitions = letters;
        def.places = detail::as_strings(detail::member(system, "/system", "places"), "/system/places");
        if (system.contains("initial_marking")) {
            def.initial_marking = detail::as_counts(system["initial_marking"], "/system/initial_marking");
        }
        const json& transitions = detail::member(system, "/system", "transitions");
        if (!transitions.is_object()) {
            detail::format_error("/system/transitions", "expected an object keyed by transition name");
        }
        for (const auto& [name, arcs] : transitions.items()) {
            const std::string path = "/system/transitions/" + name;
            detail::only_members(arcs, path, {"consume", "produce"});
            def.consume[name] = arcs.contains("consume") ? detail::as_counts(arcs["consume"], path + "/consume")
                                                         : std::map<std::string, std::int64_t>{};
            def.produce[name] = arcs.contains("produce") ? detail::as_counts(arcs["produce"], path + "/produce")
                                                         : std::map<std::string, std::int64_t>{};
        }
        for (const auto& letter : letters) {
            if (!transitions.contains(letter)) {
                detail::format_error("/system/transitions/" + letter, "missing transition for alphabet letter");
            }
        }
        auto net = PetriNet::create(def);
        auto alphabet = net.alphabet_ptr();
        return SystemFile{std::move(alphabet), std::move(time), std::move(net)};
    }

    detail::format_error("/system/kind", "expected \"explicit\" or \"petri\", got \"" + kind + "\"");
}

inline SystemFile load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Format, "cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_system(buffer.str());
}

/// A k-stage pipeline net bounded to `jobs` inputs: u_1 consumes from "src",
/// stage i passes a token to stage i+1 through p_i, u_k produces into "sink".
inline nlohmann::ordered_json pipeline_document(std::size_t stages, const std::vector<std::int64_t>& times,
                                                std::int64_t jobs, std::vector<std::string> names = {}) {
    if (stages == 0) {
        throw Error(ErrorCode::InvalidArgument, "pipeline needs at least one stage");
    }
    if (times.size() != stages) {
        throw Error(ErrorCode::InvalidArgument,
                    "expected " + std::to_string(stages) + " stage times, got " + std::to_string(times.size()));
    }
    if (jobs < 1) {
        throw Error(ErrorCode::InvalidArgument, "jobs must be >= 1");
    }
    if (names.empty()) {
        for (std::size_t i = 1; i <= stages; ++i) {
            names.push_back("u_" + std::to_string(i));
        }
    }
    if (names.size() != stages) {
        throw Error(ErrorCode::InvalidArgument,
                    "expected " + std::to_string(stages) + " stage names, got " + std::to_string(names.size()));
    }
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
        throw Error(ErrorCode::InvalidArgument, "stage names must be distinct");
    }
    for (const auto t : times) {
        if (t < 1) {
            throw Error(ErrorCode::InvalidArgument, "stage times must be >= 1");
        }
    }

    using ojson = nlohmann::ordered_json;
    const auto link = [](std::size_t i) { return "p_" + std::to_string(i); };
    ojson places = ojson::array({"src"});
    for (std::size_t i = 1; i < stages; ++i) {
        places.push_back(link(i));
    }
    places.push_back("sink");

    ojson transitions = ojson::object();
    ojson time = ojson::object();
    for (std::size_t i = 1; i <= stages; ++i) {
        const std::string in = i == 1 ? "src" : link(i - 1);
        const std::string out = i == stages ? "sink" : link(i);
        transitions[names[i - 1]] = {{"consume", {{in, 1}}}, {"produce", {{out, 1}}}};
        time[names[i - 1]] = times[i - 1];
    }

    ojson doc;
    doc["alphabet"] = names;
    doc["time"] = time;
    doc["system"] = {{"kind", "petri"},
                     {"places", places},
                     {"initial_marking", {{"src", jobs}}},
                     {"transitions", transitions}};
    return doc;
}

} // namespace tracetime

#endif
