// csv.hpp
//
// CSV emission with a fixed 17-significant-digit decimal format, enough to
// round-trip IEEE doubles.  Identical inputs produce byte-identical output.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>

namespace muzeta {

inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    // '#'-prefixed metadata lines must precede the header
    void meta(const std::string& key, const std::string& value) {
        out_ << "# " << key << "=" << value << "\n";
    }
    void header(const std::string& line) { out_ << line << "\n"; }

    void row_begin() { first_ = true; }
    void field(double x) {
        if (!first_) out_ << ",";
        out_ << format_g17(x);
        first_ = false;
    }
    void field(long long x) {
        if (!first_) out_ << ",";
        out_ << x;
        first_ = false;
    }
    void field(const std::string& s) {
        if (!first_) out_ << ",";
        out_ << s;
        first_ = false;
    }
    void row_end() { out_ << "\n"; }

  private:
    std::ostream& out_;
    bool first_ = true;
};

}  // namespace muzeta
