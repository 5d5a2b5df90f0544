#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "critheat/error.hpp"
#include "critheat/io.hpp"

namespace {

using critheat::Table;

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "critheat_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

TEST(Io, EmptyTableIsHeaderOnly) {
    const Table t{{"t", "sup", "energy"}, {}};
    EXPECT_EQ(critheat::to_csv(t), "t,sup,energy\n");
    const auto path = scratch("nested/empty.csv");
    std::filesystem::remove_all(path.parent_path());
    critheat::emit_csv(t, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "t,sup,energy\n");
}

TEST(Io, FullPrecisionAndLf) {
    Table t{{"x", "n", "label"}, {}};
    t.add_row({0.1, 7LL, std::string("a")});
    t.add_row({1.0 / 3.0, -2LL, std::string("b")});
    const std::string csv = critheat::to_csv(t);
    EXPECT_EQ(csv, "x,n,label\n0.10000000000000001,7,a\n0.33333333333333331,-2,b\n");
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_THROW(t.add_row({1.0}), critheat::InvalidArgument);
    EXPECT_THROW(critheat::format_real(std::numeric_limits<double>::infinity()),
                 critheat::InvalidArgument);
}

TEST(Io, RoundTripIsBitExact) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    Table t{{"a", "b"}, {}};
    for (int i = 0; i < 500; ++i) {
        t.add_row({std::ldexp(mant(rng), expo(rng)), mant(rng)});
    }
    const Table back = critheat::parse_csv(critheat::to_csv(t));
    ASSERT_EQ(back.rows.size(), t.rows.size());
    EXPECT_EQ(back.header, t.header);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            EXPECT_EQ(std::get<double>(back.rows[i][j]), std::get<double>(t.rows[i][j]));
        }
    }
    EXPECT_EQ(critheat::to_csv(back), critheat::to_csv(t));
}

TEST(Io, TraceTableIsMonotoneInTime) {
    std::vector<critheat::TracePoint> trace{{0.0, 1.0, 0.5}, {0.5, 0.6, 0.2}, {1.0, 0.3, 0.1}};
    const Table t = critheat::trace_table(trace);
    EXPECT_EQ(t.header, (std::vector<std::string>{"t", "sup", "energy"}));
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        EXPECT_GT(std::get<double>(t.rows[i][0]), std::get<double>(t.rows[i - 1][0]));
    }
}

TEST(Io, SvgHasOnePolylinePerGroup) {
    Table t{{"t", "x", "u"}, {}};
    for (double time : {0.0, 1.0, 2.0}) {
        for (int i = 0; i < 5; ++i) t.add_row({time, static_cast<double>(i), 1.0 + i * time});
    }
    const std::string svg = critheat::to_svg(t, {"x", "u", "t", "U", false});
    std::size_t count = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        ++count;
    }
    EXPECT_EQ(count, 3u);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_THROW(critheat::to_svg(t, {"x", "missing", "", "", false}), critheat::InvalidArgument);

    const auto csv = scratch("plot.csv");
    critheat::emit_csv(t, csv);
    critheat::emit_svg(csv, scratch("plot.svg"), {"x", "u", "t", "", true});
    EXPECT_TRUE(std::filesystem::exists(scratch("plot.svg")));
}

}  // namespace
