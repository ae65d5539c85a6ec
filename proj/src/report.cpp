#include "omlkit/report.hpp"

#include <cstdio>

namespace oml {

void Report::add_timing_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", ms);
    timing_.push_back(buf);
}

std::string Report::body() const {
    std::string out;
    for (const auto& [key, value] : records_) {
        out += key;
        out += '\t';
        out += value;
        out += '\n';
    }
    return out;
}

std::string Report::full_text() const {
    std::string out = body();
    for (const std::string& ms : timing_) {
        out += "time_ms\t";
        out += ms;
        out += '\n';
    }
    return out;
}

} // namespace oml
