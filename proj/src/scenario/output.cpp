#include "negmass/scenario/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace negmass::scenario {

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

void write_atomic(const std::filesystem::path& path, std::string_view contents)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out)
        {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
    {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": "
                                 + ec.message());
    }
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size())
{
    if (header.empty())
        throw std::invalid_argument("CsvTable: header must not be empty");
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        if (i)
            text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& row)
{
    if (row.size() != columns_)
        throw std::invalid_argument("CsvTable: row has " + std::to_string(row.size())
                                    + " columns, expected " + std::to_string(columns_));
    for (std::size_t i = 0; i < row.size(); ++i)
    {
        if (i)
            text_ += ',';
        text_ += format_number(row[i]);
    }
    text_ += '\n';
    ++rows_;
}

}  // namespace negmass::scenario
