#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace kecalc {

/**
 * Minimal JSON value with deterministic serialization: object keys come
 * out sorted (std::map order) and every double is printed with 12
 * significant digits.  Non-finite doubles serialize as strings.
 */
class jvalue {
public:
    jvalue() : v_(nullptr) {}
    jvalue(std::nullptr_t) : v_(nullptr) {}
    jvalue(bool b) : v_(b) {}
    jvalue(int i) : v_(static_cast<long long>(i)) {}
    jvalue(long long i) : v_(i) {}
    jvalue(double d) : v_(d) {}
    jvalue(const char* s) : v_(std::string(s)) {}
    jvalue(std::string s) : v_(std::move(s)) {}

    static jvalue object() { jvalue j; j.v_ = object_t{}; return j; }
    static jvalue array() { jvalue j; j.v_ = array_t{}; return j; }

    jvalue& set(const std::string& key, jvalue val); // makes this an object
    jvalue& push(jvalue val);                        // makes this an array

    std::string dump() const;

private:
    using array_t = std::vector<jvalue>;
    using object_t = std::map<std::string, jvalue>;
    std::variant<std::nullptr_t, bool, long long, double, std::string, array_t, object_t> v_;

    void dump_to(std::string& out) const;
};

} // namespace kecalc
