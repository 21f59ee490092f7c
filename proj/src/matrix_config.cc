#include "surrogate/matrix_config.h"

#include "surrogate/report.h"

#include <set>
#include <sstream>
#include <utility>

namespace surrogate {

namespace {

using Settings = std::vector<std::pair<std::string, std::string>>;

struct Block {
    int line = 0;
    bool is_run = false;
    std::string id;
    Settings settings;
};

[[noreturn]] void fail(int line, const std::string &message) {
    throw ConfigError("line " + std::to_string(line) + ": " + message);
}

} // namespace

std::vector<RunSpec> parse_matrix_config(const std::string &text) {
    std::vector<Block> blocks;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words(line.substr(0, line.find('#')));
        std::vector<std::string> tokens;
        std::string token;
        while (words >> token)
            tokens.push_back(token);
        if (tokens.empty())
            continue;
        std::size_t first = 0;
        if (tokens[0] == "run" || tokens[0] == "defaults") {
            Block block;
            block.line = line_no;
            block.is_run = tokens[0] == "run";
            first = 1;
            if (tokens.size() > 1 && tokens[1].find('=') == std::string::npos) {
                if (!block.is_run)
                    fail(line_no, "'defaults' takes no id");
                block.id = tokens[1];
                first = 2;
            }
            blocks.push_back(std::move(block));
        } else if (blocks.empty()) {
            fail(line_no, "settings before the first 'run' or 'defaults' line");
        }
        for (std::size_t i = first; i < tokens.size(); ++i) {
            std::size_t eq = tokens[i].find('=');
            if (eq == std::string::npos || eq == 0)
                fail(line_no, "expected key=value, got '" + tokens[i] + "'");
            blocks.back().settings.emplace_back(tokens[i].substr(0, eq),
                                                tokens[i].substr(eq + 1));
        }
    }

    std::vector<RunSpec> specs;
    std::set<std::string> ids;
    Settings defaults;
    auto apply_all = [](RunSpec &spec, const Settings &settings, int line) {
        for (const auto &[key, value] : settings) {
            try {
                apply_setting(spec, key, value);
            } catch (const std::invalid_argument &e) {
                fail(line, e.what());
            }
        }
    };
    for (const Block &block : blocks) {
        if (!block.is_run) {
            RunSpec probe;
            apply_all(probe, block.settings, block.line);
            defaults.insert(defaults.end(), block.settings.begin(), block.settings.end());
            continue;
        }
        RunSpec spec;
        apply_all(spec, defaults, block.line);
        apply_all(spec, block.settings, block.line);
        spec.run_id = block.id.empty() ? "run" + std::to_string(specs.size() + 1) : block.id;
        if (!ids.insert(spec.run_id).second)
            fail(block.line, "duplicate run id '" + spec.run_id + "'");
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<RunSpec> load_matrix_config(const std::string &path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const ReportError &e) {
        throw ConfigError(e.what());
    }
    try {
        return parse_matrix_config(text);
    } catch (const ConfigError &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace surrogate
