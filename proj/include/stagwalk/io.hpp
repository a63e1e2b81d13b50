#pragma once

#include <functional>
#include <ostream>
#include <string>

namespace stagwalk {

// Doubles are printed with 17 significant digits (%.17g): enough to
// round-trip any value, and byte-stable across runs.
std::string fmt17(double x);

// Minimal JSON string escaping (field values here are label-like; this
// covers quotes, backslashes and control characters).
std::string json_escape(const std::string& s);

// Runs `writer` against the file at `path`, or against `fallback` (usually
// std::cout) when path is empty. I/O failures are reported with the path.
void write_output(const std::function<void(std::ostream&)>& writer,
                  const std::string& path, std::ostream& fallback);

}  // namespace stagwalk
