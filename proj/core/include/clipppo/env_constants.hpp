#ifndef CLIPPPO_ENV_CONSTANTS_HPP_
#define CLIPPPO_ENV_CONSTANTS_HPP_

#include <map>
#include <string>

namespace clipppo::envs {

// Every dynamics constant, initial-state range, threshold and episode cap
// the environments are built from, keyed "<env>.<name>". A plain-text copy
// of this table is committed at core/data/env_constants.txt; tests pin the
// two against each other so no constant can drift silently.
std::map<std::string, double> constants_table();

// Parse a committed "key = value" table.
std::map<std::string, double> load_constants_table(const std::string& path);

}  // namespace clipppo::envs

#endif  // CLIPPPO_ENV_CONSTANTS_HPP_
