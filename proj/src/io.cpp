#include "stagwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace stagwalk {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
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
    return out;
}

void write_output(const std::function<void(std::ostream&)>& writer,
                  const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
        writer(fallback);
        if (!fallback) throw std::runtime_error("write failed on output stream");
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    writer(file);
    file.flush();
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace stagwalk
