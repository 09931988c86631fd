#include "pnls/diagnostics.hpp"
#include "pnls/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace pnls;

TEST(DiagnosticSeries, RowChecks) {
    DiagnosticSeries s({"t", "x"});
    s.add_row({0.0, 1.5});
    EXPECT_THROW(s.add_row({1.0}), SchemaError);
    EXPECT_THROW(s.add_row({1.0, NAN}), SchemaError);
    EXPECT_THROW(s.add_row({INFINITY, 1.0}), SchemaError);
    EXPECT_EQ(s.size(), 1u);
    EXPECT_THROW(s.column("y"), SchemaError);
    EXPECT_EQ(s.at(0, "x"), 1.5);
}

TEST(DiagnosticSeries, CsvRoundTripIsExact) {
    DiagnosticSeries s({"t", "value"});
    s.add_row({0.1, 1.0 / 3.0});
    s.add_row({2.0, -1e-300});
    const auto path = std::filesystem::temp_directory_path() / "pnls_series.csv";
    write_csv(path, s);
    const auto back = read_csv(path);
    EXPECT_EQ(back.columns(), s.columns());
    EXPECT_EQ(back.rows(), s.rows());
    EXPECT_EQ(to_csv(s), "t,value\n0.1,0.3333333333333333\n2,-1e-300\n");
    std::filesystem::remove(path);
}
