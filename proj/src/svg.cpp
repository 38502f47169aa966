#include "predterms/svg.hpp"

#include <algorithm>
#include <cmath>

#include "predterms/errors.hpp"
#include "predterms/textfmt.hpp"

namespace predterms {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

// Pixel values: fixed 2 decimals, trailing zeros trimmed.
std::string num(double v) {
  std::string s = fixed(v, 2);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

struct Frame {
  double left, top, w, h;  // plot area
};

Frame frame_of(const Style& st) {
  Frame f{st.margin_left, st.margin_top, st.width - st.margin_left - st.margin_right,
          st.height - st.margin_top - st.margin_bottom};
  if (!(st.width > 0) || !(st.height > 0) || !(f.w > 0) || !(f.h > 0)) {
    throw PlotError("non-positive plot geometry");
  }
  return f;
}

class Svg {
 public:
  explicit Svg(const Style& st) : st_(st) {}

  void open() {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(st_.width) +
            "\" height=\"" + num(st_.height) + "\" viewBox=\"0 0 " + num(st_.width) + " " +
            num(st_.height) + "\" font-family=\"" + xml_escape(st_.font_family) + "\">\n";
    out_ += "<rect width=\"" + num(st_.width) + "\" height=\"" + num(st_.height) +
            "\" fill=\"" + st_.background + "\"/>\n";
  }

  void close() { out_ += "</svg>\n"; }

  void line(const char* cls, double x1, double y1, double x2, double y2,
            const std::string& stroke, double width) {
    out_ += std::string("<line class=\"") + cls + "\" x1=\"" + num(x1) + "\" y1=\"" + num(y1) +
            "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke +
            "\" stroke-width=\"" + num(width) + "\"/>\n";
  }

  void rect(const char* cls, double x, double y, double w, double h, const std::string& fill,
            const std::string& extra = "") {
    out_ += std::string("<rect class=\"") + cls + "\" x=\"" + num(x) + "\" y=\"" + num(y) +
            "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"" +
            extra + "/>\n";
  }

  void text(const char* cls, double x, double y, const char* anchor, double size,
            const std::string& content, const std::string& fill, const std::string& extra = "") {
    out_ += std::string("<text class=\"") + cls + "\" x=\"" + num(x) + "\" y=\"" + num(y) +
            "\" text-anchor=\"" + anchor + "\" font-size=\"" + num(size) + "\" fill=\"" + fill +
            "\"" + extra + ">" + xml_escape(content) + "</text>\n";
  }

  void circle(const char* cls, double cx, double cy, double r, const std::string& fill) {
    out_ += std::string("<circle class=\"") + cls + "\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
            "\" r=\"" + num(r) + "\" fill=\"" + fill + "\"/>\n";
  }

  void raw(const std::string& s) { out_ += s; }

  std::string take() { return std::move(out_); }

 private:
  const Style& st_;
  std::string out_;
};

const char* kBaseline = " dy=\"0.32em\"";

void render_predsplot(Svg& svg, const PredsplotScene& scene, const Style& st, const Frame& fr) {
  if (scene.axes.empty()) throw PlotError("empty scene");
  if (!(scene.y_max > scene.y_min)) throw PlotError("degenerate vertical scale");

  const std::size_t k = scene.axes.size() + 1;  // + total
  auto axis_x = [&](std::size_t i) {
    return fr.left + fr.w * (static_cast<double>(i) + 0.5) / static_cast<double>(k);
  };
  auto pix = [&](double v) {
    return fr.top + (scene.y_max - v) / (scene.y_max - scene.y_min) * fr.h;
  };

  svg.raw("<defs><clipPath id=\"plotclip\"><rect x=\"" + num(fr.left) + "\" y=\"" + num(fr.top) +
          "\" width=\"" + num(fr.w) + "\" height=\"" + num(fr.h) + "\"/></clipPath></defs>\n");

  if (!scene.title.empty()) {
    svg.text("title", st.width / 2.0, fr.top - st.title_size - 6.0, "middle", st.title_size,
             scene.title, st.text_color);
  }

  // Shared scale on the left border.
  svg.line("yaxis", fr.left, fr.top, fr.left, fr.top + fr.h, st.axis_color, st.line_width);
  for (const auto& t : scene.left_ticks) {
    double y = pix(t.position);
    svg.line("ltick", fr.left - st.tick_length, y, fr.left, y, st.axis_color, st.line_width);
    svg.text("lticklabel", fr.left - st.tick_length - 3.0, y, "end", st.font_size, t.label,
             st.text_color, kBaseline);
  }
  // Response units on the right border.
  for (const auto& t : scene.right_ticks) {
    double y = pix(t.position);
    svg.line("rtick", fr.left + fr.w, y, fr.left + fr.w + st.tick_length, y, st.axis_color,
             st.line_width);
    svg.text("rticklabel", fr.left + fr.w + st.tick_length + 3.0, y, "start", st.font_size,
             t.label, st.text_color, kBaseline);
  }

  struct Marker {
    double x, y;
    std::string color;
    bool total;
  };
  std::vector<Marker> markers;

  for (std::size_t i = 0; i < k; ++i) {
    const SceneAxis& ax = i + 1 < k ? scene.axes[i] : scene.total;
    const double x = axis_x(i);
    auto ypix = [&](double v) { return pix(v + ax.offset); };

    svg.raw("<g class=\"axis\" data-name=\"" + xml_escape(ax.name) + "\">\n");
    svg.raw("<g clip-path=\"url(#plotclip)\">\n");
    switch (ax.glyph) {
      case GlyphKind::Histogram:
        for (const auto& bin : ax.hist) {
          if (bin.fraction <= 0.0) continue;
          double y_top = ypix(bin.hi);
          svg.rect("histbar", x, y_top, bin.fraction * st.glyph_width, ypix(bin.lo) - y_top,
                   ax.color, " stroke=\"" + st.background + "\" stroke-width=\"0.5\"");
        }
        break;
      case GlyphKind::Bars:
        for (const auto& bar : ax.bars) {
          double y = ypix(bar.position);
          double x2 = x + bar.fraction * st.glyph_width;
          svg.line("levelbar", x, y, x2, y, ax.color, st.bar_thickness);
          if (!bar.label.empty()) {
            svg.text("levellabel", x2 + 3.0, y, "start", st.font_size * 0.85, bar.label,
                     st.text_color, kBaseline);
          }
        }
        break;
      case GlyphKind::Density: {
        std::string pts;
        for (const auto& p : ax.curve) {
          if (!pts.empty()) pts += ' ';
          pts += num(x + p.fraction * st.glyph_width) + "," + num(ypix(p.position));
        }
        svg.raw("<polyline class=\"density\" fill=\"none\" stroke=\"" + ax.color +
                "\" stroke-width=\"" + num(st.line_width + 0.2) + "\" points=\"" + pts +
                "\"/>\n");
        break;
      }
    }
    svg.line("axisline", x, ypix(ax.lo), x, ypix(ax.hi), st.axis_color, st.line_width);
    for (const auto& t : ax.ticks) {
      double y = ypix(t.position);
      svg.line("xtick", x - st.tick_length, y, x, y, st.axis_color, st.line_width);
      svg.text("xticklabel", x - st.tick_length - 2.0, y, "end", st.font_size * 0.85, t.label,
               st.text_color, kBaseline);
    }
    svg.raw("</g>\n");

    if (ax.direction == TermDirection::Up) {
      double tip = std::max(ypix(ax.hi) - 6.0, fr.top + 2.0);
      svg.raw("<path class=\"arrow\" d=\"M" + num(x) + "," + num(tip - 8.0) + " L" +
              num(x - 4.5) + "," + num(tip) + " L" + num(x + 4.5) + "," + num(tip) +
              " Z\" fill=\"" + ax.color + "\"/>\n");
    } else if (ax.direction == TermDirection::Down) {
      double tip = std::min(ypix(ax.lo) + 6.0, fr.top + fr.h - 2.0);
      svg.raw("<path class=\"arrow\" d=\"M" + num(x) + "," + num(tip + 8.0) + " L" +
              num(x - 4.5) + "," + num(tip) + " L" + num(x + 4.5) + "," + num(tip) +
              " Z\" fill=\"" + ax.color + "\"/>\n");
    }
    svg.text("axisname", x, fr.top + fr.h + st.font_size + 8.0, "middle", st.font_size, ax.name,
             st.text_color);
    svg.raw("</g>\n");

    if (ax.has_marker) {
      markers.push_back({x, ypix(ax.marker), ax.marker_color, i + 1 == k});
    }
  }

  if (scene.profile) {
    std::string pts;
    for (const auto& mk : markers) {
      if (mk.total) continue;
      if (!pts.empty()) pts += ' ';
      pts += num(mk.x) + "," + num(mk.y);
    }
    if (!pts.empty()) {
      svg.raw("<polyline class=\"profile\" fill=\"none\" stroke=\"" + st.profile_color +
              "\" stroke-width=\"1.2\" stroke-dasharray=\"5 4\" points=\"" + pts + "\"/>\n");
    }
  }
  for (const auto& mk : markers) {
    svg.circle("marker", mk.x, mk.y, st.marker_radius, mk.color);
  }
}

void render_predscor(Svg& svg, const PredscorScene& scene, const Style& st, const Frame& fr) {
  if (scene.cells.empty() || scene.names.empty()) throw PlotError("empty scene");
  const std::size_t p = scene.names.size();
  const double side = std::min(fr.w, fr.h);
  const double gx = fr.left + (fr.w - side) / 2.0;
  const double gy = fr.top + (fr.h - side) / 2.0;
  const double cell = side / static_cast<double>(p);
  const double full = cell * 0.92;  // small gap between cells

  if (!scene.title.empty()) {
    svg.text("title", st.width / 2.0, fr.top - st.title_size - 6.0, "middle", st.title_size,
             scene.title, st.text_color);
  }
  for (std::size_t j = 0; j < p; ++j) {
    svg.text("collabel", gx + (static_cast<double>(j) + 0.5) * cell, gy - 6.0, "middle",
             st.font_size * 0.9, scene.names[j], st.text_color);
  }
  for (std::size_t i = 0; i < p; ++i) {
    svg.text("rowlabel", gx - 6.0, gy + (static_cast<double>(i) + 0.5) * cell, "end",
             st.font_size * 0.9, scene.names[i], st.text_color, kBaseline);
  }
  for (const auto& c : scene.cells) {
    double w = std::max(c.width_frac * full, st.min_cell_side);
    double h = std::max(c.height_frac * full, st.min_cell_side);
    double cx = gx + (static_cast<double>(c.col) + 0.5) * cell;
    double cy = gy + (static_cast<double>(c.row) + 0.5) * cell;
    std::string extra = " data-row=\"" + std::to_string(c.row) + "\" data-col=\"" +
                        std::to_string(c.col) + "\" data-value=\"" + fixed(c.value, 4) + "\"";
    svg.rect("corcell", cx - w / 2.0, cy - h / 2.0, w, h, c.fill, extra);
  }
}

}  // namespace

std::string render_svg(const PlotScene& scene, const Style& style) {
  Frame fr = frame_of(style);
  Svg svg(style);
  svg.open();
  if (const auto* ps = std::get_if<PredsplotScene>(&scene)) {
    render_predsplot(svg, *ps, style, fr);
  } else {
    render_predscor(svg, std::get<PredscorScene>(scene), style, fr);
  }
  svg.close();
  return svg.take();
}

}  // namespace predterms
