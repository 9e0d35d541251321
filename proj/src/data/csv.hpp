#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tlnid::data {

// Splits one CSV line: comma separator, optional double-quoted fields with ""
// escapes, CR tolerated. Throws DataError on an unterminated quote.
std::vector<std::string> split_csv_line(const std::string& line);

// Streams data rows of a file to `fn(row_number, fields)`; row numbers are
// 1-based file lines. Blank lines are skipped. Throws IoError when the file
// cannot be opened.
void for_each_csv_row(const std::string& path,
                      const std::function<void(size_t, std::vector<std::string>&&)>& fn);

std::string trim(const std::string& s);
std::string to_lower(const std::string& s);

} // namespace tlnid::data
