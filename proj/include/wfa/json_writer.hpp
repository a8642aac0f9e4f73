#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wfa::json {

// Minimal ordered JSON value for report output. Keys keep insertion order
// and doubles are rendered with 17 significant digits, so identical inputs
// produce byte-identical documents.
class Value {
public:
    using Array = std::vector<Value>;
    using Object = std::vector<std::pair<std::string, Value>>;

    Value() : data_(nullptr) {}
    Value(bool b) : data_(b) {}
    Value(double d) : data_(d) {}
    Value(long long i) : data_(i) {}
    Value(int i) : data_(static_cast<long long>(i)) {}
    Value(unsigned long long i) : data_(static_cast<long long>(i)) {}
    Value(std::size_t i) : data_(static_cast<long long>(i)) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(Array a) : data_(std::move(a)) {}
    Value(Object o) : data_(std::move(o)) {}

    static Value array(std::vector<double> v) {
        Array a;
        a.reserve(v.size());
        for (double x : v) a.emplace_back(x);
        return Value(std::move(a));
    }

    // object builder
    Value& set(const std::string& key, Value v) {
        auto& obj = std::get<Object>(data_);
        obj.emplace_back(key, std::move(v));
        return *this;
    }
    static Value object() { return Value(Object{}); }

    std::string dump(int indent = 0) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

private:
    std::variant<std::nullptr_t, bool, double, long long, std::string, Array,
                 Object>
        data_;

    static void write_escaped(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    static void write_double(std::string& out, double d) {
        if (d != d || d == 1.0 / 0.0 || d == -1.0 / 0.0) {
            out += "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        out += buf;
    }

    void newline(std::string& out, int indent, int depth) const {
        if (indent <= 0) return;
        out.push_back('\n');
        out.append(static_cast<std::size_t>(indent * depth), ' ');
    }

    void write(std::string& out, int indent, int depth) const {
        if (std::holds_alternative<std::nullptr_t>(data_)) {
            out += "null";
        } else if (auto* b = std::get_if<bool>(&data_)) {
            out += *b ? "true" : "false";
        } else if (auto* d = std::get_if<double>(&data_)) {
            write_double(out, *d);
        } else if (auto* i = std::get_if<long long>(&data_)) {
            out += std::to_string(*i);
        } else if (auto* s = std::get_if<std::string>(&data_)) {
            write_escaped(out, *s);
        } else if (auto* a = std::get_if<Array>(&data_)) {
            out.push_back('[');
            for (std::size_t k = 0; k < a->size(); ++k) {
                if (k) out.push_back(',');
                newline(out, indent, depth + 1);
                (*a)[k].write(out, indent, depth + 1);
            }
            if (!a->empty()) newline(out, indent, depth);
            out.push_back(']');
        } else if (auto* o = std::get_if<Object>(&data_)) {
            out.push_back('{');
            for (std::size_t k = 0; k < o->size(); ++k) {
                if (k) out.push_back(',');
                newline(out, indent, depth + 1);
                write_escaped(out, (*o)[k].first);
                out += indent > 0 ? ": " : ":";
                (*o)[k].second.write(out, indent, depth + 1);
            }
            if (!o->empty()) newline(out, indent, depth);
            out.push_back('}');
        }
    }
};

}  // namespace wfa::json
