#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semlex::cli {

// Exit statuses: 0 success, 1 domain rejection (no parse, unknown answer
// inputs, invalid case), 2 input/schema error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semlex::cli
