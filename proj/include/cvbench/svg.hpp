#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace cvbench {

// Tiny SVG writer. Output is plain text assembled in a fixed order so
// identical inputs render byte-identical files.
class SvgDocument {
public:
    SvgDocument(int width, int height);

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width = 1.0, const std::string& dash = "");
    void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                  double stroke_width = 1.5, const std::string& dash = "");
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "");
    void circle(double cx, double cy, double r, const std::string& fill);
    void text(double x, double y, const std::string& content, int font_size = 12,
              const std::string& anchor = "start", double rotate_deg = 0.0);

    std::string finish() const;
    int width() const { return width_; }
    int height() const { return height_; }

private:
    int width_;
    int height_;
    std::ostringstream body_;
};

std::string svg_escape(const std::string& text);

// Fixed coordinate formatting (2 decimals) keeps files diffable.
std::string svg_coord(double v);

}  // namespace cvbench
