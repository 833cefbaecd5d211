#include "cvbench/svg.hpp"

#include <cmath>
#include <cstdio>

namespace cvbench {

std::string svg_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string svg_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

SvgDocument::SvgDocument(int width, int height) : width_(width), height_(height) {}

void SvgDocument::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                       double stroke_width, const std::string& dash) {
    body_ << "<line x1=\"" << svg_coord(x1) << "\" y1=\"" << svg_coord(y1) << "\" x2=\""
          << svg_coord(x2) << "\" y2=\"" << svg_coord(y2) << "\" stroke=\"" << stroke
          << "\" stroke-width=\"" << svg_coord(stroke_width) << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << "/>\n";
}

void SvgDocument::polyline(const std::vector<std::pair<double, double>>& points,
                           const std::string& stroke, double stroke_width,
                           const std::string& dash) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
          << svg_coord(stroke_width) << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << " points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) body_ << ' ';
        body_ << svg_coord(points[i].first) << ',' << svg_coord(points[i].second);
    }
    body_ << "\"/>\n";
}

void SvgDocument::rect(double x, double y, double w, double h, const std::string& fill,
                       const std::string& stroke) {
    body_ << "<rect x=\"" << svg_coord(x) << "\" y=\"" << svg_coord(y) << "\" width=\""
          << svg_coord(w) << "\" height=\"" << svg_coord(h) << "\" fill=\"" << fill << "\"";
    if (!stroke.empty()) body_ << " stroke=\"" << stroke << "\"";
    body_ << "/>\n";
}

void SvgDocument::circle(double cx, double cy, double r, const std::string& fill) {
    body_ << "<circle cx=\"" << svg_coord(cx) << "\" cy=\"" << svg_coord(cy) << "\" r=\""
          << svg_coord(r) << "\" fill=\"" << fill << "\"/>\n";
}

void SvgDocument::text(double x, double y, const std::string& content, int font_size,
                       const std::string& anchor, double rotate_deg) {
    body_ << "<text x=\"" << svg_coord(x) << "\" y=\"" << svg_coord(y) << "\" font-size=\""
          << font_size << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\"";
    if (rotate_deg != 0.0)
        body_ << " transform=\"rotate(" << svg_coord(rotate_deg) << ' ' << svg_coord(x) << ' '
              << svg_coord(y) << ")\"";
    body_ << ">" << svg_escape(content) << "</text>\n";
}

std::string SvgDocument::finish() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << width_ << "\" height=\"" << height_
        << "\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

}  // namespace cvbench
