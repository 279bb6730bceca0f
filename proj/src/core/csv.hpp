// SPDX-License-Identifier: Apache-2.0
#ifndef AVL_CORE_CSV_HPP
#define AVL_CORE_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace avl {

// %.17g rendering shared by every emitter.
std::string fmt17(double v);

// Line-buffered CSV writer: header row first, single-newline terminators,
// floats with 17 significant digits.  flush() after every row so aborted
// runs leave usable partial files.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header);

    void row(const std::vector<std::string>& cells);
    void comment(const std::string& text);  // "# ..." trailer line
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
};

} // namespace avl

#endif
