#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polyopt {

// Ordered key-value report rendered either as `key=value` lines or as a
// JSON object with the same key order.  Strings are quoted in JSON,
// numbers stay bare; doubles always print with six decimal places so a
// report is byte-stable for equal inputs.
class Report {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value);
    void add(const std::string& key, std::uint64_t value);
    void add(const std::string& key, std::int64_t value);
    void add(const std::string& key, int value);
    void add(const std::string& key, double value);

    std::string text() const;
    std::string json() const;

private:
    struct Field {
        std::string key;
        std::string value;
        bool quoted;
    };
    std::vector<Field> fields_;
};

} // namespace polyopt
