#pragma once

#include <iosfwd>

namespace vclab {
namespace cli {

// Full argv including the program name. Exit status: 0 success,
// 1 check failure, 2 usage/format error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace vclab
