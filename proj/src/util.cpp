#include "ctxbench/util.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ctxbench {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    std::string t = trim(s);
    if (t.empty()) throw std::runtime_error(msg("empty value for ", what));
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw std::runtime_error(msg("not a number for ", what, ": '", t, "'"));
    return v;
}

long long parse_int(const std::string& s, const std::string& what) {
    std::string t = trim(s);
    if (t.empty()) throw std::runtime_error(msg("empty value for ", what));
    char* end = nullptr;
    long long v = std::strtoll(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw std::runtime_error(msg("not an integer for ", what, ": '", t, "'"));
    return v;
}

unsigned long long parse_uint(const std::string& s, const std::string& what) {
    std::string t = trim(s);
    if (t.empty() || t[0] == '-')
        throw std::runtime_error(msg("not a non-negative integer for ", what, ": '", t, "'"));
    char* end = nullptr;
    unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw std::runtime_error(msg("not an integer for ", what, ": '", t, "'"));
    return v;
}

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace ctxbench
