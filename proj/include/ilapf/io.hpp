#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ilapf {

/// Round-trip-exact decimal rendering of a double ("%.17g"). Used for every
/// CSV and summary value so outputs are byte-stable across runs.
std::string format_double(double v);

/// One `name=value` line of a summary document (UTF-8, LF endings).
void write_kv(std::ostream& out, const std::string& name, double value);
void write_kv(std::ostream& out, const std::string& name, std::int64_t value);
void write_kv(std::ostream& out, const std::string& name, const std::string& value);

}  // namespace ilapf
