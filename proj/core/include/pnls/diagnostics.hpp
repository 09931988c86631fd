#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pnls {

// Time-stamped rows with a fixed column set. Rows are checked on insertion.
class DiagnosticSeries {
public:
    DiagnosticSeries() = default;
    explicit DiagnosticSeries(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    // Throws SchemaError on a column-count mismatch or a non-finite value.
    void add_row(std::vector<double> row);

    std::size_t index_of(const std::string& column) const;
    std::vector<double> column(const std::string& name) const;
    double at(std::size_t row, const std::string& name) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

// Shortest round-trip decimal form of a double, locale independent.
std::string format_number(double x);

std::string to_csv(const DiagnosticSeries& series);
// Writes via a temporary file and rename.
void write_csv(const std::filesystem::path& path, const DiagnosticSeries& series);
DiagnosticSeries read_csv(const std::filesystem::path& path);

}  // namespace pnls
