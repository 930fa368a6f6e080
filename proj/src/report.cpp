#include "rsclust/report.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsclust/errors.hpp"

namespace rsclust {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string results_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "sweep_value,round,algorithm,objective,is_hit\n";
    for (std::size_t v = 0; v < report.sweep_values.size(); ++v) {
        for (std::size_t r = 0; r < report.rounds; ++r) {
            for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
                out << report.sweep_values[v] << ',' << r << ',' << report.algorithms[a]
                    << ',' << format_double(report.objectives[v][r][a]) << ','
                    << static_cast<int>(report.hits[v][r][a]) << '\n';
            }
        }
    }
    return out.str();
}

std::string summary_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "sweep_value,algorithm,hits,rounds\n";
    for (std::size_t v = 0; v < report.sweep_values.size(); ++v) {
        for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
            out << report.sweep_values[v] << ',' << report.algorithms[a] << ','
                << report.hit_counts[v][a] << ',' << report.rounds << '\n';
        }
    }
    return out.str();
}

std::string lemmas_csv(const LemmaReport& report) {
    std::ostringstream out;
    out << "check,measured,bound,pass\n";
    for (const LemmaCheck& check : report.checks) {
        out << check.name << ',' << format_double(check.measured) << ','
            << format_double(check.bound) << ',' << (check.pass ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string chart_svg(const ExperimentReport& report) {
    const std::size_t groups = report.sweep_values.size();
    const std::size_t bars = report.algorithms.size();
    static const char* kColors[] = {"#4472c4", "#ed7d31", "#70ad47", "#9e480e"};

    const double bar_w = 16.0;
    const double group_gap = 18.0;
    const double group_w = bar_w * static_cast<double>(bars) + group_gap;
    const double left = 56.0, top = 42.0, bottom = 40.0;
    const double plot_h = 240.0;
    const double plot_w = std::max(1.0, static_cast<double>(groups) * group_w);
    const double width = left + plot_w + 24.0;
    const double height = top + plot_h + bottom;

    std::uint64_t ymax = std::max<std::uint64_t>(report.rounds, 1);
    for (const auto& per_value : report.hit_counts) {
        for (std::uint64_t h : per_value) ymax = std::max(ymax, h);
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" "
           "font-size=\"13\">hits per sweep value ("
        << report.sweep_name << " sweep, " << report.rounds << " rounds)</text>\n";

    // legend
    double lx = left + 4.0;
    for (std::size_t a = 0; a < bars; ++a) {
        svg << "<rect x=\"" << lx << "\" y=\"26\" width=\"10\" height=\"10\" fill=\""
            << kColors[a % 4] << "\"/>\n";
        svg << "<text x=\"" << lx + 14.0
            << "\" y=\"35\" font-family=\"sans-serif\" font-size=\"11\">"
            << report.algorithms[a] << "</text>\n";
        lx += 64.0;
    }

    // axes
    const double axis_y = top + plot_h;
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
        << "\" y2=\"" << axis_y << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << axis_y << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double frac = static_cast<double>(tick) / 4.0;
        const double y = axis_y - frac * plot_h;
        const auto label = static_cast<std::uint64_t>(frac * static_cast<double>(ymax));
        svg << "<line x1=\"" << left - 4.0 << "\" y1=\"" << y << "\" x2=\"" << left
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << left - 8.0 << "\" y=\"" << y + 4.0
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << label << "</text>\n";
    }

    for (std::size_t v = 0; v < groups; ++v) {
        const double gx = left + static_cast<double>(v) * group_w + group_gap / 2.0;
        for (std::size_t a = 0; a < bars; ++a) {
            const double h = plot_h * static_cast<double>(report.hit_counts[v][a]) /
                             static_cast<double>(ymax);
            svg << "<rect x=\"" << gx + static_cast<double>(a) * bar_w << "\" y=\""
                << axis_y - h << "\" width=\"" << bar_w - 2.0 << "\" height=\"" << h
                << "\" fill=\"" << kColors[a % 4] << "\"/>\n";
        }
        svg << "<text x=\"" << gx + bar_w * static_cast<double>(bars) / 2.0 << "\" y=\""
            << axis_y + 16.0
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
            << report.sweep_values[v] << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2.0 << "\" y=\"" << height - 8.0
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << report.sweep_name << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to '" + path.string() + "'");
}

}  // namespace

void emit_report(const ExperimentReport& report, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory '" + out_dir + "': " + ec.message());
    const std::filesystem::path dir(out_dir);
    write_file(dir / "results.csv", results_csv(report));
    write_file(dir / "summary.csv", summary_csv(report));
    write_file(dir / "chart.svg", chart_svg(report));
}

}  // namespace rsclust
