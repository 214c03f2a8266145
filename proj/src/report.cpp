#include "polyopt/report.hpp"

#include <cstdio>

namespace polyopt {

void Report::add(const std::string& key, const std::string& value) {
    fields_.push_back({key, value, true});
}

void Report::add(const std::string& key, const char* value) {
    fields_.push_back({key, std::string(value), true});
}

void Report::add(const std::string& key, std::uint64_t value) {
    fields_.push_back({key, std::to_string(value), false});
}

void Report::add(const std::string& key, std::int64_t value) {
    fields_.push_back({key, std::to_string(value), false});
}

void Report::add(const std::string& key, int value) {
    add(key, static_cast<std::int64_t>(value));
}

void Report::add(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    fields_.push_back({key, std::string(buf), false});
}

std::string Report::text() const {
    std::string out;
    for (const Field& f : fields_) {
        out += f.key;
        out += '=';
        out += f.value;
        out += '\n';
    }
    return out;
}

namespace {

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

} // namespace

std::string Report::json() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        out += "\n  ";
        append_json_string(out, fields_[i].key);
        out += ": ";
        if (fields_[i].quoted)
            append_json_string(out, fields_[i].value);
        else
            out += fields_[i].value;
    }
    if (!fields_.empty()) out += '\n';
    out += "}\n";
    return out;
}

} // namespace polyopt
