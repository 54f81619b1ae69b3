#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tracetime/tracetime.hpp"

using namespace tracetime;
using namespace tracetime::testing;

namespace {

/// Unbounded pipeline: a feeds p1, b moves p1 to p2, c drains p2.
PetriNet open_pipeline() {
    PetriNetDefinition def;
    def.transitions = {"a", "b", "c"};
    def.places = {"p1", "p2"};
    def.produce["a"] = {{"p1", 1}};
    def.consume["b"] = {{"p1", 1}};
    def.produce["b"] = {{"p2", 1}};
    def.consume["c"] = {{"p2", 1}};
    return PetriNet::create(def);
}

std::string marking_name(const PetriNet& net, const Marking& m) { return net.format(m); }

} // namespace

TEST_CASE("ExplicitSystem construction checks names") {
    const auto alphabet = validate_alphabet({"a", "b"}, {{"a", "b"}});
    CHECK_THROWS_MATCHES(ExplicitSystem::create(alphabet, {"s"}, "t", {}), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("UnknownState")));
    CHECK_THROWS_MATCHES(ExplicitSystem::create(alphabet, {"s"}, "s", {{"s", "z", "s"}}), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("UnknownLetter")));
    CHECK_THROWS_MATCHES(ExplicitSystem::create(alphabet, {"s", "s"}, "s", {}), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("DuplicateState")));

    // A letter with no transitions at all is allowed and never enabled.
    const auto sys = ExplicitSystem::create(alphabet, {"s", "t"}, "s", {{"s", "a", "t"}});
    CHECK_FALSE(sys.step(sys.state("s"), alphabet->letter("b")));
    CHECK(validate_axioms(sys).clean());
}

TEST_CASE("validate_axioms reports determinism violations") {
    const auto alphabet = validate_alphabet({"a"}, {});
    const auto sys = ExplicitSystem::create(alphabet, {"s", "x", "y"}, "s", {{"s", "a", "x"}, {"s", "a", "y"}});
    const auto report = validate_axioms(sys);
    REQUIRE(report.determinism.size() == 1);
    CHECK(report.determinism[0].state == sys.state("s"));
    CHECK(report.determinism[0].targets.size() == 2);
    CHECK(report.diamond.empty());
    CHECK_THROWS_AS(sys.step(sys.state("s"), alphabet->letter("a")), Error);
}

TEST_CASE("validate_axioms reports diamond violations") {
    const auto alphabet = validate_alphabet({"a", "b"}, {{"a", "b"}});
    // s0 -a-> s1 -b-> s2, but b is not enabled at s0.
    const auto sys =
        ExplicitSystem::create(alphabet, {"s0", "s1", "s2", "s3"}, "s0", {{"s0", "a", "s1"}, {"s1", "b", "s2"}});
    const auto report = validate_axioms(sys);
    CHECK(report.determinism.empty());
    REQUIRE(report.diamond.size() == 1);
    CHECK(report.diamond[0].state == sys.state("s0"));
    CHECK(report.diamond[0].first == alphabet->letter("a"));
    CHECK(report.diamond[0].second == alphabet->letter("b"));

    // Closing the square with the wrong corner is still a violation.
    const auto skew = ExplicitSystem::create(
        alphabet, {"s0", "s1", "s2", "s3"}, "s0",
        {{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s0", "b", "s3"}, {"s3", "a", "s3"}});
    CHECK_FALSE(validate_axioms(skew).diamond.empty());

    const auto square = ExplicitSystem::create(
        alphabet, {"s0", "s1", "s2", "s3"}, "s0",
        {{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s0", "b", "s3"}, {"s3", "a", "s2"}});
    CHECK(validate_axioms(square).clean());
}

TEST_CASE("bounded pipeline net is a valid asynchronous system") {
    for (std::int64_t jobs = 1; jobs <= 3; ++jobs) {
        const auto net = pipeline_net(jobs);
        const auto sys = to_explicit(net, net.alphabet_ptr(), 1000,
                                     std::function<std::string(const Marking&)>(
                                         [&](const Marking& m) { return marking_name(net, m); }));
        CHECK(validate_axioms(sys).clean());
        // Direct enumeration of condition 2 on markings.
        const auto& alphabet = net.alphabet();
        for (std::size_t i = 0; i < sys.state_count(); ++i) {
            for (const auto& [a, b] : alphabet.independent_pairs()) {
                for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                    const StateId s = state_at(i);
                    const auto sx = sys.step(s, x);
                    const auto sxy = sx ? sys.step(*sx, y) : std::nullopt;
                    if (sxy) {
                        const auto sy = sys.step(s, y);
                        REQUIRE(sy);
                        REQUIRE(sys.step(*sy, x) == sxy);
                    }
                }
            }
        }
    }
}

TEST_CASE("to_explicit refuses unbounded nets past the budget") {
    const auto net = open_pipeline();
    CHECK_THROWS_MATCHES(to_explicit(net, net.alphabet_ptr(), 50), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("StateBudgetExceeded")));
}

TEST_CASE("petri_independence is the no-shared-place relation") {
    const auto fig1 = open_pipeline();
    const auto& alphabet = fig1.alphabet();
    CHECK(petri_independence(fig1) == std::vector<LetterPair>{{alphabet.letter("a"), alphabet.letter("c")}});

    const auto bounded = pipeline_net(1);
    CHECK(petri_independence(bounded).size() == 1);

    PetriNetDefinition shared;
    shared.transitions = {"x", "y", "z"};
    shared.places = {"hub"};
    shared.consume["x"] = {{"hub", 1}};
    shared.produce["y"] = {{"hub", 1}};
    shared.consume["z"] = {{"hub", 2}};
    CHECK(petri_independence(PetriNet::create(shared)).empty());

    std::mt19937 rng(23);
    for (int round = 0; round < 200; ++round) {
        PetriNetDefinition def;
        std::uniform_int_distribution<int> count(1, 4);
        std::bernoulli_distribution coin(0.35);
        const int transitions = count(rng);
        const int places = count(rng);
        for (int p = 0; p < places; ++p) {
            def.places.push_back("p" + std::to_string(p));
        }
        std::map<std::string, std::set<std::string>> touched;
        for (int t = 0; t < transitions; ++t) {
            const std::string name = "t" + std::to_string(t);
            def.transitions.push_back(name);
            for (const auto& p : def.places) {
                if (coin(rng)) {
                    def.consume[name][p] = 1;
                    touched[name].insert(p);
                }
                if (coin(rng)) {
                    def.produce[name][p] = 2;
                    touched[name].insert(p);
                }
            }
        }
        const auto net = PetriNet::create(def);
        std::set<std::pair<std::string, std::string>> expected;
        for (int i = 0; i < transitions; ++i) {
            for (int j = i + 1; j < transitions; ++j) {
                const auto& ti = touched["t" + std::to_string(i)];
                const auto& tj = touched["t" + std::to_string(j)];
                const bool disjoint =
                    std::none_of(ti.begin(), ti.end(), [&](const std::string& p) { return tj.contains(p); });
                if (disjoint) {
                    expected.emplace("t" + std::to_string(i), "t" + std::to_string(j));
                }
            }
        }
        std::set<std::pair<std::string, std::string>> actual;
        for (const auto& [a, b] : petri_independence(net)) {
            actual.emplace(net.alphabet().name(a), net.alphabet().name(b));
        }
        REQUIRE(actual == expected);
    }
}

TEST_CASE("PetriNet::create rejects malformed definitions") {
    PetriNetDefinition def;
    def.transitions = {"t"};
    def.places = {"p", "p"};
    CHECK_THROWS_MATCHES(PetriNet::create(def), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("DuplicatePlace")));
    def.places = {"p"};
    def.consume["t"] = {{"q", 1}};
    CHECK_THROWS_MATCHES(PetriNet::create(def), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("UnknownPlace")));
    def.consume["t"] = {{"p", 0}};
    CHECK_THROWS_MATCHES(PetriNet::create(def), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("InvalidWeight")));
    def.consume.clear();
    def.produce["u"] = {{"p", 1}};
    CHECK_THROWS_MATCHES(PetriNet::create(def), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("UnknownLetter")));
}

TEST_CASE("petri_step firing rule") {
    const auto net = pipeline_net(1);
    const auto& alphabet = net.alphabet();
    const Letter a = alphabet.letter("a");

    const auto fired = petri_step(net, net.marking({{"src", 1}}), a);
    REQUIRE(fired);
    CHECK(net.format(*fired) == "{p_1:1}");
    CHECK_FALSE(petri_step(net, net.marking({}), a));
    CHECK_THROWS_MATCHES(petri_step(net, net.initial(), letter_at(9)), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("UnknownTransition")));

    PetriNetDefinition source;
    source.transitions = {"gen"};
    source.places = {"out"};
    source.produce["gen"] = {{"out", 1}};
    const auto gen = PetriNet::create(source);
    CHECK(gen.step(gen.marking({}), letter_at(0)));
    CHECK(gen.step(gen.marking({{"out", 5}}), letter_at(0)));
}

TEST_CASE("petri_step changes the token total by produce minus consume") {
    const auto net = GENERATE(pipeline_net(3), open_pipeline());
    std::mt19937 walk(31);
    Marking m = net.initial();
    for (int k = 0; k < 200; ++k) {
        const Letter t = letter_at(walk() % 3);
        const auto next = net.step(m, t);
        if (!next) {
            continue;
        }
        std::int64_t delta = 0;
        for (const auto& [p, w] : net.produce(t)) {
            delta += static_cast<std::int64_t>(w);
        }
        for (const auto& [p, w] : net.consume(t)) {
            delta -= static_cast<std::int64_t>(w);
        }
        REQUIRE(static_cast<std::int64_t>(next->total()) - static_cast<std::int64_t>(m.total()) == delta);
        m = *next;
    }
}

TEST_CASE("run_word on the bounded pipeline") {
    const auto net = pipeline_net(1);
    const auto& alphabet = net.alphabet();
    CHECK(run_word(net, net.initial(), Word{}) == net.initial());
    const auto done = run_word(net, net.initial(), word_of(alphabet, "abc"));
    REQUIRE(done);
    CHECK(net.format(*done) == "{sink:1}");
    CHECK_FALSE(run_word(net, net.initial(), word_of(alphabet, "ba")));
    CHECK_THROWS_AS(run_word(net, net.initial(), Word{letter_at(5)}), Error);
}

TEST_CASE("trace-equivalent words act identically on valid systems") {
    std::mt19937 rng(37);
    for (int round = 0; round < 150; ++round) {
        const auto sys = random_valid_system(rng);
        REQUIRE(validate_axioms(sys).clean());
        const auto& alphabet = sys.alphabet();
        const Word w = random_word(rng, alphabet, 1 + round % 6);
        for (std::size_t s = 0; s < sys.state_count(); ++s) {
            const auto expected = run_word(sys, state_at(s), w);
            for (const auto& other : oracle::swap_closure(w, alphabet)) {
                REQUIRE(run_word(sys, state_at(s), other) == expected);
            }
        }
    }
}

TEST_CASE("reachable graphs of random Petri nets satisfy the axioms") {
    std::mt19937 rng(41);
    for (int round = 0; round < 200; ++round) {
        const auto sys = random_petri_system(rng, 4, 40);
        const auto report = validate_axioms(sys);
        REQUIRE(report.determinism.empty());
        REQUIRE(report.diamond.empty());
    }
}
