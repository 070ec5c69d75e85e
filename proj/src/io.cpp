#include "ilapf/io.hpp"

#include <cstdio>
#include <ostream>

namespace ilapf {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_kv(std::ostream& out, const std::string& name, double value) {
    out << name << '=' << format_double(value) << '\n';
}

void write_kv(std::ostream& out, const std::string& name, std::int64_t value) {
    out << name << '=' << value << '\n';
}

void write_kv(std::ostream& out, const std::string& name, const std::string& value) {
    out << name << '=' << value << '\n';
}

}  // namespace ilapf
