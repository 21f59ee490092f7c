#ifndef SURROGATE_MATRIX_CONFIG_H
#define SURROGATE_MATRIX_CONFIG_H

#include "bench.h"

#include <stdexcept>
#include <string>
#include <vector>

namespace surrogate {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/*
  Line-oriented matrix description:

    # comment
    defaults max-expansions=100000 wall-clock=false
    run cyc-size domain=cycle k=14 goal=-2
        eval=size heur=zero

  A "run [ID]" line opens a run block and a "defaults" line a defaults
  block; following key=value lines extend the open block. Defaults apply
  to the runs after them. Missing ids become run1, run2, ... by position.
*/
std::vector<RunSpec> parse_matrix_config(const std::string &text);
std::vector<RunSpec> load_matrix_config(const std::string &path);

} // namespace surrogate

#endif
