#include "kecalc/json_writer.hpp"

#include <cmath>

#include "kecalc/format.hpp"

namespace kecalc {

jvalue& jvalue::set(const std::string& key, jvalue val) {
    if (!std::holds_alternative<object_t>(v_)) v_ = object_t{};
    std::get<object_t>(v_)[key] = std::move(val);
    return *this;
}

jvalue& jvalue::push(jvalue val) {
    if (!std::holds_alternative<array_t>(v_)) v_ = array_t{};
    std::get<array_t>(v_).push_back(std::move(val));
    return *this;
}

namespace {

void escape_to(const std::string& s, std::string& out) {
    out += '"';
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
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

void jvalue::dump_to(std::string& out) const {
    if (std::holds_alternative<std::nullptr_t>(v_)) {
        out += "null";
    } else if (std::holds_alternative<bool>(v_)) {
        out += std::get<bool>(v_) ? "true" : "false";
    } else if (std::holds_alternative<long long>(v_)) {
        out += std::to_string(std::get<long long>(v_));
    } else if (std::holds_alternative<double>(v_)) {
        const double d = std::get<double>(v_);
        if (std::isfinite(d))
            out += format_sig12(d);
        else
            escape_to(format_sig12(d), out);
    } else if (std::holds_alternative<std::string>(v_)) {
        escape_to(std::get<std::string>(v_), out);
    } else if (std::holds_alternative<array_t>(v_)) {
        out += '[';
        bool first = true;
        for (const auto& e : std::get<array_t>(v_)) {
            if (!first) out += ',';
            e.dump_to(out);
            first = false;
        }
        out += ']';
    } else {
        out += '{';
        bool first = true;
        for (const auto& [k, e] : std::get<object_t>(v_)) {
            if (!first) out += ',';
            escape_to(k, out);
            out += ':';
            e.dump_to(out);
            first = false;
        }
        out += '}';
    }
}

std::string jvalue::dump() const {
    std::string out;
    dump_to(out);
    return out;
}

} // namespace kecalc
