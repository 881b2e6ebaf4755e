#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "replan/bench.hpp"

namespace replan {
namespace {

// Shortest representation that parses back to the same double.
std::string number(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

template <typename T>
T parse_field(const std::string& s, std::size_t line_no, const char* column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw IoError("raw csv line " + std::to_string(line_no) + ": bad " + column + " '" + s + "'");
    }
    return value;
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + file.string());
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& file) {
    out.flush();
    if (!out) {
        throw IoError("write failed: " + file.string());
    }
}

std::string points_attr(std::span<const Point2> points) {
    std::string s;
    for (const Point2& p : points) {
        if (!s.empty()) {
            s += ' ';
        }
        s += number(p.x) + ',' + number(p.y);
    }
    return s;
}

std::string rect_element(const Rect& r, const char* cls) {
    return "<rect class=\"" + std::string(cls) + "\" x=\"" + number(r.min.x) + "\" y=\"" + number(r.min.y) +
           "\" width=\"" + number(r.width()) + "\" height=\"" + number(r.height()) + "\"/>";
}

}  // namespace

std::string raw_csv_row(const TrialMetrics& m) {
    return m.algorithm + ',' + m.scenario + ',' + std::to_string(m.seed) + ',' + (m.success ? "1" : "0") + ',' +
           std::to_string(m.collision_checks) + ',' + std::to_string(m.nn_lookups) + ',' + number(m.sim_time_s) +
           ',' + number(m.wall_time_s);
}

void write_raw_csv(std::ostream& out, std::span<const TrialMetrics> trials) {
    out << kRawCsvHeader << '\n';
    for (const TrialMetrics& m : trials) {
        out << raw_csv_row(m) << '\n';
    }
}

void write_raw_csv(const std::filesystem::path& file, std::span<const TrialMetrics> trials) {
    auto out = open_out(file);
    write_raw_csv(out, trials);
    finish(out, file);
}

std::vector<TrialMetrics> read_raw_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRawCsvHeader) {
        throw IoError("raw csv: unexpected header");
    }
    std::vector<TrialMetrics> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 8) {
            throw IoError("raw csv line " + std::to_string(line_no) + ": expected 8 fields");
        }
        TrialMetrics m;
        m.algorithm = f[0];
        m.scenario = f[1];
        m.seed = parse_field<std::uint64_t>(f[2], line_no, "seed");
        if (f[3] != "0" && f[3] != "1") {
            throw IoError("raw csv line " + std::to_string(line_no) + ": bad success '" + f[3] + "'");
        }
        m.success = f[3] == "1";
        m.collision_checks = parse_field<std::uint64_t>(f[4], line_no, "coll_checks");
        m.nn_lookups = parse_field<std::uint64_t>(f[5], line_no, "nn_lookups");
        m.sim_time_s = parse_field<double>(f[6], line_no, "sim_time_s");
        m.wall_time_s = parse_field<double>(f[7], line_no, "wall_time_s");
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<TrialMetrics> read_raw_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + file.string());
    }
    return read_raw_csv(in);
}

void write_summary_csv(std::ostream& out, std::span<const BatchSummary> summaries) {
    out << kSummaryCsvHeader << '\n';
    for (const BatchSummary& s : summaries) {
        out << s.algorithm << ',' << s.scenario << ',' << s.runs << ',' << number(s.success_pct) << ','
            << optional_number(s.mean_collision_checks) << ',' << optional_number(s.mean_nn_lookups) << ','
            << optional_number(s.mean_sim_time_s) << ',' << optional_number(s.mean_wall_time_s) << '\n';
    }
}

void write_summary_csv(const std::filesystem::path& file, std::span<const BatchSummary> summaries) {
    auto out = open_out(file);
    write_summary_csv(out, summaries);
    finish(out, file);
}

std::string format_table(std::span<const BatchSummary> summaries) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "Algorithm" << std::right << std::setw(11) << "Success %" << std::setw(15)
        << "Coll. Checks" << std::setw(16) << "Nearest Neigh." << std::setw(10) << "Time[s]" << '\n';
    out << std::fixed;
    for (const BatchSummary& s : summaries) {
        out << std::left << std::setw(12) << s.algorithm << std::right << std::setw(11) << std::setprecision(0)
            << s.success_pct;
        if (s.successes > 0) {
            out << std::setw(15) << *s.mean_collision_checks << std::setw(16) << *s.mean_nn_lookups
                << std::setw(10) << std::setprecision(2) << *s.mean_sim_time_s;
        } else {
            out << std::setw(15) << "-" << std::setw(16) << "-" << std::setw(10) << "-";
        }
        out << '\n';
    }
    return out.str();
}

void write_trace_svg(std::ostream& out, const TrialTrace& trace) {
    const Rect& b = trace.bounds;
    // World y grows upward; flip once at the root group.
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << number(b.min.x) << ' '
        << number(b.min.y) << ' ' << number(b.width()) << ' ' << number(b.height()) << "\">\n"
        << "<style>.bounds{fill:#fff;stroke:#000;stroke-width:0.3}</style>\n"
        << "<g transform=\"translate(0," << number(b.min.y + b.max.y) << ") scale(1,-1)\">\n"
        << rect_element(b, "bounds") << '\n';
    if (!trace.walls.empty()) {
        out << "<g id=\"walls\" fill=\"#444\">\n";
        for (const Rect& w : trace.walls) {
            out << rect_element(w, "wall") << '\n';
        }
        out << "</g>\n";
    }
    const bool any_obstacles =
        std::any_of(trace.frames.begin(), trace.frames.end(), [](const auto& f) { return !f.obstacles.empty(); });
    if (any_obstacles) {
        out << "<g id=\"obstacles\" fill=\"#36c\" fill-opacity=\"0.25\">\n";
        for (const TrialTrace::Frame& f : trace.frames) {
            if (f.obstacles.empty()) {
                continue;
            }
            out << "<g class=\"frame\" data-tick=\"" << f.tick << "\">\n";
            for (const Rect& r : f.obstacles) {
                out << rect_element(r, "obstacle") << '\n';
            }
            out << "</g>\n";
        }
        out << "</g>\n";
    }
    out << "<polyline id=\"trajectory\" fill=\"none\" stroke=\"#2a2\" stroke-width=\"0.4\" points=\""
        << points_attr(trace.trajectory) << "\"/>\n";
    if (trace.final_path.size() >= 2) {
        out << "<polyline id=\"final-path\" fill=\"none\" stroke=\"#c33\" stroke-width=\"0.3\" "
               "stroke-dasharray=\"1 1\" points=\""
            << points_attr(trace.final_path) << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

void write_trace_svg(const std::filesystem::path& file, const TrialTrace& trace) {
    auto out = open_out(file);
    write_trace_svg(out, trace);
    finish(out, file);
}

}  // namespace replan
