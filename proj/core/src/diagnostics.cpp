#include "pnls/diagnostics.hpp"

#include "pnls/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pnls {

DiagnosticSeries::DiagnosticSeries(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw SchemaError("series needs at least one column");
}

void DiagnosticSeries::add_row(std::vector<double> row) {
    if (row.size() != columns_.size())
        throw SchemaError("row has " + std::to_string(row.size()) + " values, schema has " +
                          std::to_string(columns_.size()) + " columns");
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!std::isfinite(row[i]))
            throw SchemaError("non-finite value in column '" + columns_[i] + "' at row " +
                              std::to_string(rows_.size()));
    rows_.push_back(std::move(row));
}

std::size_t DiagnosticSeries::index_of(const std::string& column) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == column) return i;
    throw SchemaError("no column named '" + column + "'");
}

std::vector<double> DiagnosticSeries::column(const std::string& name) const {
    const std::size_t j = index_of(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[j]);
    return out;
}

double DiagnosticSeries::at(std::size_t row, const std::string& name) const { return rows_.at(row)[index_of(name)]; }

std::string format_number(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_csv(const DiagnosticSeries& series) {
    std::string out;
    for (std::size_t i = 0; i < series.columns().size(); ++i) {
        if (i) out += ',';
        out += series.columns()[i];
    }
    out += '\n';
    for (const auto& r : series.rows()) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += format_number(r[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const DiagnosticSeries& series) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp + " for writing");
        os << to_csv(series);
        if (!os) throw Error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

DiagnosticSeries read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path.string());
    std::string line;
    if (!std::getline(is, line)) throw SchemaError(path.string() + ": missing header");
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    DiagnosticSeries series(cols);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) {
            double v = 0;
            auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc()) throw SchemaError(path.string() + ": bad number '" + c + "'");
            row.push_back(v);
        }
        series.add_row(std::move(row));
    }
    return series;
}

}  // namespace pnls
