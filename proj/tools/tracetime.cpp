#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tracetime/commands.hpp"

int main(int argc, char** argv) {
    namespace cli = tracetime::cli;

    CLI::App app{"tracetime: minimum parallel execution time of instruction traces"};
    app.require_subcommand(1);

    std::string file;
    std::string word;
    std::size_t max_states = 1'000'000;

    auto* validate = app.add_subcommand("validate", "check the asynchronous-system axioms of a system file");
    validate->add_option("file", file, "system document")->required();
    validate->add_option("--max-states", max_states, "exploration bound for Petri nets");

    auto* foata = app.add_subcommand("foata", "print the Foata normal form and height of a word");
    foata->add_option("file", file, "system document")->required();
    foata->add_option("--word,-w", word, "letters separated by spaces or commas")->required();

    std::optional<std::string> from;
    bool show_schedule = false;
    auto* min_time = app.add_subcommand("min-time", "minimum parallel runtime of a word's trace");
    min_time->add_option("file", file, "system document")->required();
    min_time->add_option("--word,-w", word, "letters separated by spaces or commas")->required();
    min_time->add_option("--from", from, "check that the word runs from this state");
    min_time->add_flag("--schedule", show_schedule, "print the tick-by-tick schedule");

    std::string target;
    bool maximal = false;
    auto* reach = app.add_subcommand("reach", "minimum time to reach a state over all traces");
    reach->add_option("file", file, "system document")->required();
    reach->add_option("--target", target, "state name, or marking place:count,...")->required();
    reach->add_option("--from", from, "source state (default: initial)");
    reach->add_option("--max-states", max_states, "exploration bound on timed states");
    reach->add_flag("--maximal-ticks", maximal, "expand only maximal ticks (faster, not always optimal)");

    auto* speedup = app.add_subcommand("speedup", "sequential vs minimum parallel time of a word");
    speedup->add_option("file", file, "system document")->required();
    speedup->add_option("--word,-w", word, "letters separated by spaces or commas")->required();

    std::size_t stages = 0;
    std::vector<std::int64_t> times;
    std::int64_t jobs = 1;
    std::vector<std::string> names;
    std::string out_path;
    auto* gen = app.add_subcommand("pipeline-gen", "write a bounded k-stage pipeline Petri net");
    gen->add_option("--stages", stages, "number of stages")->required();
    gen->add_option("--times", times, "stage durations")->required()->delimiter(',');
    gen->add_option("--jobs", jobs, "tokens in the source place");
    gen->add_option("--names", names, "transition names (default u_1..u_k)")->delimiter(',');
    gen->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : cli::Usage;
    }

    if (*validate) {
        return cli::cmd_validate(file, max_states, std::cout, std::cerr);
    }
    if (*foata) {
        return cli::cmd_foata(file, word, std::cout, std::cerr);
    }
    if (*min_time) {
        return cli::cmd_min_time(file, word, from, show_schedule, std::cout, std::cerr);
    }
    if (*reach) {
        return cli::cmd_reach(file, target, from, {max_states, maximal}, std::cout, std::cerr);
    }
    if (*speedup) {
        return cli::cmd_speedup(file, word, std::cout, std::cerr);
    }
    return cli::cmd_pipeline_gen(stages, times, jobs, names, out_path, std::cout, std::cerr);
}
