#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace negmass::scenario {

/// Shortest decimal form that parses back to the same double ("nan",
/// "inf" and "-inf" for non-finite values).
std::string format_number(double x);

/// Writes `contents` to a sibling temporary file and renames it over
/// `path`, so readers see either the old file or the complete new one.
/// Creates parent directories. Throws std::runtime_error on I/O failure.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

/// Comma-separated table with a header row and LF line endings.
class CsvTable
{
  public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<double>& row);
    std::size_t rows() const noexcept { return rows_; }
    const std::string& text() const noexcept { return text_; }

  private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

}  // namespace negmass::scenario
