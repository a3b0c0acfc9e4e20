#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace storyline::cli {

// Exit codes: 0 accept/success, 1 reject, 2 usage or validation failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace storyline::cli
