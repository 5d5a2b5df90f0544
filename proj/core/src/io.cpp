#include "critheat/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "critheat/error.hpp"

namespace critheat {
namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

std::size_t column(const Table& t, const std::string& name) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw InvalidArgument("no column named '" + name + "'");
    return static_cast<std::size_t>(it - t.header.begin());
}

double numeric(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    throw InvalidArgument("non-numeric cell '" + std::get<std::string>(c) + "'");
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header.size()) throw InvalidArgument("row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_real(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("cannot format a non-finite value");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
    write_file(path, to_csv(table));
}

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            t.header = std::move(fields);
            first = false;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& f : fields) {
            double d = 0.0;
            const char* end = f.data() + f.size();
            auto res = std::from_chars(f.data(), end, d);
            if (!f.empty() && res.ec == std::errc() && res.ptr == end) {
                row.emplace_back(d);
            } else {
                row.emplace_back(f);
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

Table read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

std::string to_svg(const Table& table, const PlotSpec& spec) {
    const std::size_t xi = column(table, spec.x);
    const std::size_t yi = column(table, spec.y);
    const bool grouped = !spec.group.empty();
    const std::size_t gi = grouped ? column(table, spec.group) : 0;

    std::map<std::string, std::vector<std::pair<double, double>>> series;
    std::vector<std::string> order;
    for (const auto& row : table.rows) {
        double y = numeric(row[yi]);
        if (spec.log_y) {
            if (!(y > 0.0)) continue;
            y = std::log10(y);
        }
        const std::string key = grouped ? cell_text(row[gi]) : spec.y;
        if (!series.count(key)) order.push_back(key);
        series[key].emplace_back(numeric(row[xi]), y);
    }

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool any = false;
    for (const auto& [key, pts] : series) {
        for (const auto& [x, y] : pts) {
            if (!any) {
                x0 = x1 = x;
                y0 = y1 = y;
                any = true;
            }
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;

    constexpr double W = 640, H = 400, L = 70, R = 20, T = 30, B = 40;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
        << H - T - B << "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (!spec.title.empty()) {
        svg << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\">" << spec.title
            << "</text>\n";
    }
    const std::string ylabel = spec.log_y ? "log10 " + spec.y : spec.y;
    svg << "<text x=\"" << L << "\" y=\"" << H - 8 << "\">" << spec.x << ": " << x0 << " .. " << x1
        << "</text>\n";
    svg << "<text x=\"4\" y=\"" << T - 8 << "\">" << ylabel << ": " << y0 << " .. " << y1
        << "</text>\n";
    std::size_t k = 0;
    for (const auto& key : order) {
        const char* colour = palette[k % (sizeof palette / sizeof *palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[key]) svg << px(x) << ',' << py(y) << ' ';
        svg << "\"/>\n";
        if (grouped) {
            svg << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 + 14 * k
                << "\" text-anchor=\"end\" fill=\"" << colour << "\">" << spec.group << "=" << key
                << "</text>\n";
        }
        ++k;
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const std::filesystem::path& csv, const std::filesystem::path& svg,
              const PlotSpec& spec) {
    write_file(svg, to_svg(read_csv(csv), spec));
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
    write_file(path, doc.dump(2) + "\n");
}

Table trace_table(const std::vector<TracePoint>& trace) {
    Table t{{"t", "sup", "energy"}, {}};
    for (const auto& pt : trace) t.add_row({pt.t, pt.sup, pt.energy});
    return t;
}

Table snapshot_table(const std::vector<Field>& snapshots, const std::string& coordinate,
                     bool radial_coordinate) {
    Table t{{"t", coordinate, "value"}, {}};
    for (const auto& f : snapshots) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double x = radial_coordinate ? std::exp(f.grid.node(i)) : f.grid.node(i);
            t.add_row({f.t, x, f.values[i]});
        }
    }
    return t;
}

nlohmann::json outcome_json(const SolveOutcome& o) {
    nlohmann::json j;
    j["status"] = std::string(to_string(o.status));
    j["t_end"] = o.t_end;
    j["steps"] = o.steps;
    j["x_star"] = o.x_star ? nlohmann::json(*o.x_star) : nlohmann::json(nullptr);
    j["criterion"] =
        o.criterion ? nlohmann::json(std::string(to_string(*o.criterion))) : nlohmann::json(nullptr);
    j["snapshot_times"] = nlohmann::json::array();
    for (const auto& f : o.snapshots) j["snapshot_times"].push_back(f.t);
    return j;
}

}  // namespace critheat
