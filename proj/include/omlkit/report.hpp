#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oml {

// Machine-readable command report: one key<TAB>value record per line.
// Timing records are kept apart so the body is byte-stable across runs of
// the same seeded invocation.
class Report {
public:
    void add(std::string_view key, std::string_view value) {
        records_.emplace_back(key, value);
    }
    void add(std::string_view key, long long value) {
        records_.emplace_back(key, std::to_string(value));
    }
    void add_timing_ms(double ms);

    // All records except timing.
    std::string body() const;
    // Body plus the timing records.
    std::string full_text() const;

    int exit_code = 0;

private:
    std::vector<std::pair<std::string, std::string>> records_;
    std::vector<std::string> timing_;
};

} // namespace oml
