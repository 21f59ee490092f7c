#ifndef TESTS_RANDOM_TASKS_H
#define TESTS_RANDOM_TASKS_H

#include "surrogate/grounded_task.h"

#include <algorithm>
#include <random>
#include <string>

namespace testing_support {

struct RandomTaskParams {
    int num_facts = 8;
    int num_actions = 12;
    int max_pre = 2;
    int max_add = 2;
    int max_del = 2;
    int max_cost = 20;
    int init_size = 2;
    int goal_size = 2;
};

inline std::vector<int> pick(std::mt19937 &rng, int universe, int count) {
    std::vector<int> all(universe);
    for (int i = 0; i < universe; ++i)
        all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(count, universe));
    std::sort(all.begin(), all.end());
    return all;
}

// Random valid STRIPS task; the reachable state space is at most 2^num_facts.
inline surrogate::GroundedTask random_task(unsigned seed, const RandomTaskParams &p = {}) {
    std::mt19937 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    surrogate::GroundedTask task;
    task.name = "random" + std::to_string(seed);
    for (int f = 0; f < p.num_facts; ++f)
        task.facts.push_back("f" + std::to_string(f));
    task.init = pick(rng, p.num_facts, p.init_size);
    task.goal = pick(rng, p.num_facts, p.goal_size);
    for (int a = 0; a < p.num_actions; ++a) {
        surrogate::TaskAction action;
        action.name = "a" + std::to_string(a);
        action.cost = uniform(1, p.max_cost);
        action.pre = pick(rng, p.num_facts, uniform(0, p.max_pre));
        action.add = pick(rng, p.num_facts, uniform(1, p.max_add));
        std::vector<int> del = pick(rng, p.num_facts, uniform(0, p.max_del));
        for (int f : del)
            if (!std::binary_search(action.add.begin(), action.add.end(), f))
                action.del.push_back(f);
        task.actions.push_back(std::move(action));
    }
    task.validate();
    return task;
}

} // namespace testing_support

#endif
