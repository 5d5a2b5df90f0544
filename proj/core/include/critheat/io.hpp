#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "critheat/grid.hpp"
#include "critheat/time_controls.hpp"

namespace critheat {

/// A CSV cell: reals print with 17 significant digits, integers and text verbatim.
using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);  // throws InvalidArgument on a width mismatch
};

/// Shortest text that reads back as the same double when it fits in
/// 17 significant digits (which it always does).
std::string format_real(double v);

/// Comma separated, LF line endings, header first. Non-finite reals are rejected.
std::string to_csv(const Table& table);
void emit_csv(const Table& table, const std::filesystem::path& path);

/// Parses CSV text written by to_csv (no quoting). Cells that parse fully as
/// numbers become doubles, the rest stay text.
Table parse_csv(const std::string& text);
Table read_csv(const std::filesystem::path& path);

struct PlotSpec {
    std::string x;
    std::string y;
    std::string group;  // optional: one polyline per distinct value of this column
    std::string title;
    bool log_y = false;
};

/// Renders polylines of the chosen columns of a CSV file.
std::string to_svg(const Table& table, const PlotSpec& spec);
void emit_svg(const std::filesystem::path& csv, const std::filesystem::path& svg,
              const PlotSpec& spec);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

// Standard tables.
Table trace_table(const std::vector<TracePoint>& trace);
/// Long format: t, coordinate, value. `coordinate` names the second column.
Table snapshot_table(const std::vector<Field>& snapshots, const std::string& coordinate,
                     bool radial_coordinate);
nlohmann::json outcome_json(const SolveOutcome& outcome);

}  // namespace critheat
