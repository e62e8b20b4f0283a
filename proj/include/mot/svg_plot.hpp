#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "mot/errors.hpp"
#include "mot/mot_model.hpp"
#include "mot/scenario.hpp"

namespace mot {

// Tour diagram as standalone SVG: restricted rects shaded, the tour as one
// arrowed polyline, sensors as hollow circles, stops filled and numbered.
// Marks carry stable class names (sensor, stop-visited, stop-unvisited,
// restricted, tour) so tests can parse the file back.

namespace detail {

inline std::string svg_num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline void write_tour_svg(const Scenario& sc, const Tour& tour, std::ostream& out) {
    const double w = sc.region.width();
    const double h = sc.region.height();
    const double k = 720.0 / std::max(w, h);
    const double pad = 40.0;
    const double cw = w * k + 2 * pad;
    const double ch = h * k + 2 * pad;

    auto sx = [&](double x) { return detail::svg_num((x - sc.region.min_corner.x) * k + pad); };
    auto sy = [&](double y) { return detail::svg_num((sc.region.max_corner.y - y) * k + pad); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_num(cw)
        << "\" height=\"" << detail::svg_num(ch) << "\" viewBox=\"0 0 " << detail::svg_num(cw)
        << ' ' << detail::svg_num(ch) << "\">\n";
    out << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" "
           "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L7,3 L0,6 z\" fill=\"#444444\"/>"
           "</marker></defs>\n";
    out << "<rect fill=\"#fcfcf7\" x=\"0\" y=\"0\" width=\"" << detail::svg_num(cw)
        << "\" height=\"" << detail::svg_num(ch) << "\"/>\n";
    out << "<rect class=\"region\" fill=\"none\" stroke=\"#999999\" x=\"" << sx(sc.region.min_corner.x)
        << "\" y=\"" << sy(sc.region.max_corner.y) << "\" width=\"" << detail::svg_num(w * k)
        << "\" height=\"" << detail::svg_num(h * k) << "\"/>\n";

    for (const Rect& r : sc.restricted) {
        out << "<rect class=\"restricted\" fill=\"#d9534f\" fill-opacity=\"0.25\" "
               "stroke=\"#d9534f\" x=\""
            << sx(r.min_corner.x) << "\" y=\"" << sy(r.max_corner.y) << "\" width=\""
            << detail::svg_num(r.width() * k) << "\" height=\"" << detail::svg_num(r.height() * k)
            << "\"/>\n";
    }

    out << "<polyline class=\"tour\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1.5\" "
           "marker-mid=\"url(#arrow)\" marker-end=\"url(#arrow)\" points=\"";
    for (std::size_t i = 0; i < tour.stops.size(); ++i) {
        const Point& p = sc.stops[tour.stops[i]].position;
        if (i) out << ' ';
        out << sx(p.x) << ',' << sy(p.y);
    }
    out << "\"/>\n";

    for (const Sensor& s : sc.sensors)
        out << "<circle class=\"sensor\" fill=\"none\" stroke=\"#2b7bbf\" r=\"3\" cx=\""
            << sx(s.position.x) << "\" cy=\"" << sy(s.position.y) << "\"/>\n";

    std::vector<std::uint8_t> visited(sc.stops.size(), 0);
    for (int id : tour.stops) visited[id] = 1;
    for (const Stop& t : sc.stops) {
        const bool v = visited[t.id] != 0;
        out << "<circle class=\"" << (v ? "stop-visited" : "stop-unvisited") << "\" fill=\""
            << (v ? "#2e9e4f" : "#b8bfc6") << "\" r=\"" << (t.is_charging_station ? "8" : "6")
            << "\" cx=\"" << sx(t.position.x) << "\" cy=\"" << sy(t.position.y) << "\"/>\n";
        out << "<text class=\"stop-label\" font-family=\"sans-serif\" font-size=\"10\" "
               "fill=\"#111111\" text-anchor=\"middle\" x=\""
            << sx(t.position.x) << "\" y=\""
            << detail::svg_num((sc.region.max_corner.y - t.position.y) * k + pad - 9) << "\">"
            << t.id << "</text>\n";
    }
    out << "</svg>\n";
}

inline void write_tour_svg(const Scenario& sc, const Tour& tour, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_tour_svg(sc, tour, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace mot
