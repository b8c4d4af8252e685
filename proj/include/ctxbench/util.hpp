#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace ctxbench {

// Builds an error/message string from any streamable pieces.
template <typename... Args>
std::string msg(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

// strtod-based; throws std::runtime_error naming `what` on garbage.
double parse_double(const std::string& s, const std::string& what);
long long parse_int(const std::string& s, const std::string& what);
unsigned long long parse_uint(const std::string& s, const std::string& what);

// Shortest decimal form that round-trips a double exactly (%.17g with
// downshift), used by every text format in the project.
std::string format_double(double v);

}  // namespace ctxbench
