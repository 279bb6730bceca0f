// SPDX-License-Identifier: Apache-2.0
#include "core/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace avl {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& header)
    : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
    out_ << header << "\n";
    out_.flush();
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ",";
        out_ << cells[i];
    }
    out_ << "\n";
    out_.flush();
}

void CsvWriter::comment(const std::string& text) {
    out_ << "# " << text << "\n";
    out_.flush();
}

} // namespace avl
