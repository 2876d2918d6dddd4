#include "tropic/format.hpp"

#include "tropic/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace tropic {

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (x == 0.0)
        x = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double parse_double(std::string_view token) {
    token = trim(token);
    if (!token.empty() && token.front() == '+')
        token.remove_prefix(1);
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last || std::isnan(value))
        throw Error(ErrorKind::ParseError, "not a number: '" + std::string(token) + "'");
    return value;
}

long long parse_integer(std::string_view token) {
    token = trim(token);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(token) + "'");
    return value;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    for (auto field : split_fields(text))
        out.push_back(parse_double(field));
    if (out.empty())
        throw Error(ErrorKind::ParseError, "empty number list");
    return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n'; };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i]))
            ++i;
        std::size_t j = i;
        while (j < line.size() && !is_sep(line[j]))
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string_view trim(std::string_view s) noexcept {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace tropic
