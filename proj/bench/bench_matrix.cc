#include "surrogate/bench.h"
#include "surrogate/report.h"

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

using namespace surrogate;

namespace {

RunSpec spec_of(const std::string &id, const std::vector<std::pair<std::string, std::string>> &kv) {
    RunSpec spec;
    spec.run_id = id;
    spec.record_wall_clock = false;
    for (const auto &[key, value] : kv)
        apply_setting(spec, key, value);
    return spec;
}

// Mixed workload: cycle traps of several sizes and small rendezvous tasks.
std::vector<RunSpec> workload(int k) {
    std::vector<RunSpec> specs;
    for (const char *eval : {"cost", "size", "cs-size", "hybrid"})
        for (const char *goal : {"-2", "1000", "3000"})
            specs.push_back(spec_of(std::string("cycle-") + eval + goal,
                                    {{"domain", "cycle"},
                                     {"k", std::to_string(k)},
                                     {"goal", goal},
                                     {"eval", eval}}));
    for (int p : {2, 3, 4})
        for (const char *eval : {"cost", "cs-size"})
            specs.push_back(spec_of("rendezvous-" + std::string(eval) + std::to_string(p),
                                    {{"domain", "rendezvous"},
                                     {"passengers", std::to_string(p)},
                                     {"eval", eval},
                                     {"heur", "rp-size-cheap"},
                                     {"max-expansions", "50000"}}));
    return specs;
}

template <class F>
double time_ms(F &&f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Compares the OpenMP matrix executor with the serial reference."};
    int jobs = 0;
    int repeat = 3;
    int k = 14;
    app.add_option("--jobs", jobs, "Worker threads (0: OpenMP default)");
    app.add_option("--repeat", repeat, "Timed repetitions per executor")
        ->check(CLI::PositiveNumber);
    app.add_option("--k", k, "Cycle trap size")->check(CLI::Range(4, 20));
    CLI11_PARSE(app, argc, argv);

    const std::vector<RunSpec> specs = workload(k);
    std::vector<RunRecord> serial, parallel;
    double serial_ms = 1e300, parallel_ms = 1e300;
    for (int i = 0; i < repeat; ++i) {
        serial_ms = std::min(serial_ms, time_ms([&] { serial = run_matrix_serial(specs); }));
        parallel_ms = std::min(parallel_ms, time_ms([&] { parallel = run_matrix(specs, jobs); }));
    }
    const bool same = runs_csv(summarize(serial)) == runs_csv(summarize(parallel)) &&
                      events_csv(summarize(serial)) == events_csv(summarize(parallel));

    std::cout << std::fixed << std::setprecision(1);
    std::cout << "runs: " << specs.size() << "\n";
    std::cout << "threads: " << (jobs > 0 ? jobs : omp_get_max_threads()) << "\n";
    std::cout << "serial_ms: " << serial_ms << "\n";
    std::cout << "parallel_ms: " << parallel_ms << "\n";
    std::cout << "speedup: " << std::setprecision(2) << serial_ms / parallel_ms << "\n";
    std::cout << "identical_output: " << (same ? "yes" : "no") << "\n";
    return same ? 0 : 1;
}
