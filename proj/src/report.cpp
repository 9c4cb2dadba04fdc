#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "passim/error.hpp"
#include "passim/study.hpp"

namespace passim {

namespace {

std::string optional_number(const std::optional<double>& v) {
    return v ? fmt::format("{:.3f}", *v) : std::string("NA");
}

// Zones occupied mostly by day are charted with their day Tres, the others with night Tres.
bool charted_by_day(const std::string& zone) { return zone == "living_room" || zone == "kitchen"; }

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Frame {
    double width = 640, height = 400;
    double left = 60, right = 170, top = 40, bottom = 50;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

    double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
    double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

void nice_range(double& lo, double& hi) {
    if (hi - lo < 1e-9) {
        lo -= 0.5;
        hi += 0.5;
    }
    lo = std::floor(lo);
    hi = std::ceil(hi);
}

void axes(std::ostream& out, const Frame& f, const std::string& title, const std::string& xlabel,
          const std::string& ylabel, const std::vector<std::pair<double, std::string>>& xticks) {
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        f.width, f.height);
    out << fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", f.width, f.height);
    out << fmt::format("<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       (f.left + f.width - f.right) / 2, title);
    const double xa = f.left, xb = f.width - f.right, ya = f.height - f.bottom, yb = f.top;
    out << fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\"/>\n", xa, ya, xb, ya);
    out << fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\"/>\n", xa, ya, xa, yb);
    for (const auto& [x, label] : xticks) {
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", f.px(x), ya + 16, label);
    }
    const int ysteps = 5;
    for (int i = 0; i <= ysteps; ++i) {
        const double y = f.y0 + (f.y1 - f.y0) * i / ysteps;
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.1f}</text>\n", xa - 6, f.py(y) + 4, y);
        out << fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#ddd\"/>\n", xa,
                           f.py(y), xb, f.py(y));
    }
    out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", (xa + xb) / 2,
                       f.height - 12, xlabel);
    out << fmt::format("<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                       (ya + yb) / 2, (ya + yb) / 2, ylabel);
}

void legend(std::ostream& out, const Frame& f, const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double x = f.width - f.right + 15, y = f.top + 10 + 18.0 * double(i);
        out << fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", x, y - 10,
                           kPalette[i % std::size(kPalette)]);
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", x + 18, y, labels[i]);
    }
}

void sweep_chart(std::ostream& out, const StudyReport& report, const std::string& group) {
    std::vector<const ScenarioResult*> points;
    for (const auto& r : report.scenarios) {
        if (r.scenario.sweep && r.scenario.sweep->group == group && !r.failed) points.push_back(&r);
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const auto* a, const auto* b) { return a->scenario.sweep->value < b->scenario.sweep->value; });

    std::vector<std::string> zones;
    for (const auto& z : report.baseline.zones) zones.push_back(z.zone);

    std::map<std::string, std::vector<std::pair<double, double>>> lines;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto* p : points) {
        for (const auto& z : p->comfort.zones) {
            const auto& v = charted_by_day(z.zone) ? z.t_res_day : z.t_res_night;
            if (!v) continue;
            lines[z.zone].emplace_back(p->scenario.sweep->value * 100.0, *v);
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    nice_range(lo, hi);

    Frame f;
    f.x0 = points.empty() ? 0.0 : points.front()->scenario.sweep->value * 100.0;
    f.x1 = points.empty() ? 1.0 : points.back()->scenario.sweep->value * 100.0;
    if (f.x1 - f.x0 < 1e-9) f.x1 = f.x0 + 1.0;
    f.y0 = lo;
    f.y1 = hi;
    std::vector<std::pair<double, std::string>> ticks;
    for (const auto* p : points) {
        const double x = p->scenario.sweep->value * 100.0;
        ticks.emplace_back(x, fmt::format("{:g}", x));
    }
    axes(out, f, fmt::format("Resultant temperature vs {} thickness", group), "thickness (cm)",
         "Tres (degC): day for living_room/kitchen, night otherwise", ticks);

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < zones.size(); ++i) {
        const auto it = lines.find(zones[i]);
        if (it == lines.end()) continue;
        std::string pts;
        for (const auto& [x, y] : it->second) pts += fmt::format("{:.1f},{:.1f} ", f.px(x), f.py(y));
        if (!pts.empty()) pts.pop_back();
        out << fmt::format("<polyline data-zone=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
                           zones[i], kPalette[labels.size() % std::size(kPalette)], pts);
        labels.push_back(zones[i]);
    }
    legend(out, f, labels);
    out << "</svg>\n";
}

void discomfort_chart(std::ostream& out, const StudyReport& report) {
    const auto& zones = report.baseline.zones;
    double hi = 1.0;
    for (const auto& z : zones) hi = std::max<double>(hi, std::max(z.discomfort_hours_day, z.discomfort_hours_night));
    Frame f;
    f.x0 = 0.0;
    f.x1 = double(std::max<std::size_t>(zones.size(), 1));
    f.y0 = 0.0;
    f.y1 = std::ceil(hi / 10.0) * 10.0;
    f.bottom = 70;
    axes(out, f, "Baseline discomfort hours per zone", "", "hours", {});
    const double slot = f.px(1.0) - f.px(0.0);
    const double bar = slot * 0.35;
    for (std::size_t i = 0; i < zones.size(); ++i) {
        const double x = f.px(double(i)) + slot * 0.15;
        const int values[] = {zones[i].discomfort_hours_day, zones[i].discomfort_hours_night};
        for (int k = 0; k < 2; ++k) {
            const double y = f.py(values[k]);
            out << fmt::format(
                "<rect data-zone=\"{}\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\"/>\n",
                zones[i].zone, x + bar * k, y, bar, f.py(0.0) - y, kPalette[k]);
        }
        out << fmt::format(
            "<text x=\"{0:.1f}\" y=\"{1:.1f}\" text-anchor=\"end\" transform=\"rotate(-30 {0:.1f} {1:.1f})\">{2}</text>\n",
            x + bar, f.py(0.0) + 16, zones[i].zone);
    }
    legend(out, f, {"day", "night"});
    out << "</svg>\n";
}

std::filesystem::path write_file(const std::filesystem::path& file, const auto& writer) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", file.string()));
    writer(out);
    out.flush();
    if (!out) throw Error(fmt::format("failed writing '{}'", file.string()));
    return file;
}

}  // namespace

void write_study_csv(std::ostream& out, const StudyReport& report) {
    out << "scenario,zone,t_res_day_c,t_res_night_c,d_day_c,d_night_c,discomfort_day_h,discomfort_night_h\n";
    for (const auto& z : report.baseline.zones) {
        out << fmt::format("baseline,{},{},{},{:.3f},{:.3f},{},{}\n", z.zone, optional_number(z.t_res_day),
                           optional_number(z.t_res_night), 0.0, 0.0, z.discomfort_hours_day, z.discomfort_hours_night);
    }
    for (const auto& r : report.scenarios) {
        if (r.failed) {
            for (const auto& z : report.baseline.zones) {
                out << fmt::format("{},{},NA,NA,NA,NA,NA,NA\n", r.scenario.name, z.zone);
            }
            continue;
        }
        for (std::size_t i = 0; i < r.comfort.zones.size(); ++i) {
            const auto& z = r.comfort.zones[i];
            const auto& d = r.deltas[i];
            out << fmt::format("{},{},{},{},{:.3f},{:.3f},{},{}\n", r.scenario.name, z.zone,
                               optional_number(z.t_res_day), optional_number(z.t_res_night), d.d_day, d.d_night,
                               z.discomfort_hours_day, z.discomfort_hours_night);
        }
    }
}

std::vector<std::filesystem::path> emit_report(const StudyReport& report, ReportFormat format,
                                               const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec || !std::filesystem::is_directory(directory)) {
        throw Error(fmt::format("cannot create output directory '{}'", directory.string()));
    }
    std::vector<std::filesystem::path> written;
    if (format == ReportFormat::Csv) {
        written.push_back(write_file(directory / "study.csv", [&](std::ostream& o) { write_study_csv(o, report); }));
        return written;
    }
    for (const std::string group : {"roof_straw", "wall_torchi"}) {
        const bool present = std::any_of(report.scenarios.begin(), report.scenarios.end(), [&](const auto& r) {
            return r.scenario.sweep && r.scenario.sweep->group == group;
        });
        if (!present) continue;
        written.push_back(
            write_file(directory / (group + ".svg"), [&](std::ostream& o) { sweep_chart(o, report, group); }));
    }
    written.push_back(
        write_file(directory / "discomfort.svg", [&](std::ostream& o) { discomfort_chart(o, report); }));
    return written;
}

}  // namespace passim
