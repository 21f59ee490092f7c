#include "surrogate/grounded_task.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace surrogate {

TaskParseError::TaskParseError(int line, const std::string &message)
    : TaskError("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string> tokenize(const std::string &line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token)
        tokens.push_back(token);
    return tokens;
}

std::optional<std::int64_t> parse_decimal(const std::string &token) {
    if (token.empty() || !std::all_of(token.begin(), token.end(),
                                      [](unsigned char c) { return std::isdigit(c); }))
        return std::nullopt;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc())
        return std::nullopt;
    return value;
}

class Parser {
public:
    GroundedTask parse(const std::string &text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            ++line_no_;
            std::vector<std::string> tokens = tokenize(line);
            if (!tokens.empty())
                directive(tokens);
        }
        if (in_action_)
            fail("action '" + task_.actions.back().name + "' not closed by 'end'");
        if (!seen_task_)
            fail("missing 'task' directive");
        task_.canonicalize();
        return std::move(task_);
    }

private:
    [[noreturn]] void fail(const std::string &message) const {
        throw TaskParseError(line_no_, message);
    }

    void expect_arity(const std::vector<std::string> &tokens, std::size_t n) const {
        if (tokens.size() != n)
            fail("'" + tokens[0] + "' expects " + std::to_string(n - 1) + " argument(s)");
    }

    std::vector<FactId> fact_list(const std::vector<std::string> &tokens) const {
        std::vector<FactId> facts;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            std::optional<std::int64_t> index = parse_decimal(tokens[i]);
            if (!index)
                fail("malformed fact index '" + tokens[i] + "'");
            if (*index >= task_.num_facts())
                fail("fact index " + tokens[i] + " out of range (" +
                     std::to_string(task_.num_facts()) + " facts declared)");
            facts.push_back(static_cast<FactId>(*index));
        }
        std::sort(facts.begin(), facts.end());
        facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
        return facts;
    }

    void directive(const std::vector<std::string> &tokens) {
        const std::string &word = tokens[0];
        if (in_action_) {
            action_directive(tokens);
            return;
        }
        if (word == "task") {
            expect_arity(tokens, 2);
            if (seen_task_)
                fail("duplicate 'task' directive");
            seen_task_ = true;
            task_.name = tokens[1];
        } else if (word == "fact") {
            expect_arity(tokens, 3);
            std::optional<std::int64_t> index = parse_decimal(tokens[1]);
            if (!index || *index != task_.num_facts())
                fail("fact indices must be contiguous from 0; expected " +
                     std::to_string(task_.num_facts()));
            if (!fact_names_.insert(tokens[2]).second)
                fail("duplicate fact name '" + tokens[2] + "'");
            task_.facts.push_back(tokens[2]);
        } else if (word == "init") {
            if (seen_init_)
                fail("duplicate 'init' directive");
            seen_init_ = true;
            task_.init = fact_list(tokens);
        } else if (word == "goal") {
            if (seen_goal_)
                fail("duplicate 'goal' directive");
            seen_goal_ = true;
            task_.goal = fact_list(tokens);
        } else if (word == "action") {
            expect_arity(tokens, 3);
            if (!action_names_.insert(tokens[1]).second)
                fail("duplicate action name '" + tokens[1] + "'");
            std::optional<std::int64_t> cost = parse_decimal(tokens[2]);
            if (!cost)
                fail("malformed action cost '" + tokens[2] + "'");
            if (*cost < 1)
                fail("action cost must be >= 1, got " + tokens[2]);
            TaskAction action;
            action.name = tokens[1];
            action.cost = *cost;
            task_.actions.push_back(std::move(action));
            in_action_ = true;
            seen_pre_ = seen_add_ = seen_del_ = false;
        } else {
            fail("unknown directive '" + word + "'");
        }
    }

    void action_directive(const std::vector<std::string> &tokens) {
        const std::string &word = tokens[0];
        TaskAction &action = task_.actions.back();
        auto once = [&](bool &seen) {
            if (seen)
                fail("duplicate '" + word + "' in action '" + action.name + "'");
            seen = true;
        };
        if (word == "pre") {
            once(seen_pre_);
            action.pre = fact_list(tokens);
        } else if (word == "add") {
            once(seen_add_);
            action.add = fact_list(tokens);
        } else if (word == "del") {
            once(seen_del_);
            action.del = fact_list(tokens);
        } else if (word == "end") {
            expect_arity(tokens, 1);
            for (FactId f : action.add)
                if (std::binary_search(action.del.begin(), action.del.end(), f))
                    fail("action '" + action.name + "' both adds and deletes fact " +
                         std::to_string(f));
            in_action_ = false;
        } else {
            fail("unknown directive '" + word + "' inside action '" + action.name + "'");
        }
    }

    GroundedTask task_;
    int line_no_ = 0;
    bool seen_task_ = false;
    bool seen_init_ = false;
    bool seen_goal_ = false;
    bool in_action_ = false;
    bool seen_pre_ = false;
    bool seen_add_ = false;
    bool seen_del_ = false;
    std::unordered_set<std::string> fact_names_;
    std::unordered_set<std::string> action_names_;
};

void write_list(std::ostream &out, const char *directive, const std::vector<FactId> &facts) {
    out << directive;
    for (FactId f : facts)
        out << ' ' << f;
    out << '\n';
}

} // namespace

GroundedTask parse_task(const std::string &text) {
    return Parser().parse(text);
}

std::string serialize_task(const GroundedTask &task) {
    task.validate();
    std::ostringstream out;
    out << "task " << task.name << '\n';
    for (int f = 0; f < task.num_facts(); ++f)
        out << "fact " << f << ' ' << task.facts[f] << '\n';
    write_list(out, "init", task.init);
    write_list(out, "goal", task.goal);
    for (const TaskAction &action : task.actions) {
        out << "action " << action.name << ' ' << action.cost << '\n';
        write_list(out, "pre", action.pre);
        write_list(out, "add", action.add);
        write_list(out, "del", action.del);
        out << "end\n";
    }
    return out.str();
}

GroundedTask load_task_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw TaskError("cannot open task file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_task(buffer.str());
    } catch (const TaskParseError &e) {
        throw TaskError(path + ": " + std::string(e.what()));
    }
}

} // namespace surrogate
