#pragma once

// Command-line surface: model builders, grid emitters and the verification suites.

#include "rext/qpropagator.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rext::cli {

// Bad option text; the command line exits with code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GridText {
    double lo, hi;
    int n;
};

// "min:max:n"
GridText parse_grid(const std::string& text);
// "re,im"
Complex parse_time(const std::string& text);
// 17 significant digits; null for non-finite values.
std::string format_number(double v);

// Runs one command line (args exclude the program name) and returns the exit
// code: 0 ok, 1 check or domain failure, 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rext::cli
