#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace selgraph {

/// Streaming JSON writer used for every file the toolkit emits. Floats are
/// written with 17 significant digits (lossless round-trip); non-finite
/// values become null. Output is fully deterministic: key order is the
/// order of the write calls.
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{', '}'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('[', ']'); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(std::string_view k) {
        comma();
        append_string(k);
        out_ += ':';
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        comma();
        if (!std::isfinite(v)) {
            out_ += "null";
        } else {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out_ += buf;
        }
        return *this;
    }

    JsonWriter& value(std::int64_t v) {
        comma();
        out_ += std::to_string(v);
        return *this;
    }

    JsonWriter& value(std::uint64_t v) {
        comma();
        out_ += std::to_string(v);
        return *this;
    }

    JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter& value(unsigned v) { return value(static_cast<std::uint64_t>(v)); }

    JsonWriter& value(bool v) {
        comma();
        out_ += v ? "true" : "false";
        return *this;
    }

    JsonWriter& value(std::string_view v) {
        comma();
        append_string(v);
        return *this;
    }

    JsonWriter& value(const char* v) { return value(std::string_view(v)); }

    JsonWriter& null() {
        comma();
        out_ += "null";
        return *this;
    }

    template <typename T>
    JsonWriter& array(const std::vector<T>& values) {
        begin_array();
        for (const auto& v : values) value(v);
        return end_array();
    }

    const std::string& str() const { return out_; }

private:
    JsonWriter& open(char c, char) {
        comma();
        out_ += c;
        stack_.push_back(c);
        fresh_ = true;
        return *this;
    }

    JsonWriter& close(char c) {
        out_ += c;
        stack_.pop_back();
        fresh_ = false;
        return *this;
    }

    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!fresh_ && !stack_.empty()) out_ += ',';
        fresh_ = false;
    }

    void append_string(std::string_view s) {
        out_ += '"';
        for (const char c : s) {
            switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            case '\r': out_ += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out_ += buf;
                } else {
                    out_ += c;
                }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<char> stack_;
    bool fresh_ = true;
    bool pending_value_ = false;
};

} // namespace selgraph
