#include "heatgraph/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "heatgraph/errors.hpp"
#include "heatgraph/io.hpp"

namespace heatgraph::plot {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// "Nice" tick spacing covering [lo, hi] with about five ticks.
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  std::vector<double> out;
  for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + 1e-9 * step; v += step)
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class Canvas {
 public:
  Canvas(double x0, double x1, double y0, double y1) : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (x1_ <= x0_) x1_ = x0_ + 1.0;
    if (y1_ <= y0_) {
      const double pad = std::max(std::abs(y0_) * 0.1, 0.05);
      y0_ -= pad;
      y1_ += pad;
    }
  }

  double x(double v) const { return kLeft + (v - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
  double y(double v) const {
    return kHeight - kBottom - (v - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom);
  }

  void axes(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
         << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double bx = kLeft, by = kHeight - kBottom;
    out_ << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out_ << "<line x1=\"" << num(bx) << "\" y1=\"" << num(by) << "\" x2=\"" << num(kWidth - kRight)
         << "\" y2=\"" << num(by) << "\"/>\n";
    out_ << "<line x1=\"" << num(bx) << "\" y1=\"" << num(by) << "\" x2=\"" << num(bx)
         << "\" y2=\"" << num(kTop) << "\"/>\n";
    for (double t : ticks(x0_, x1_))
      out_ << "<line x1=\"" << num(x(t)) << "\" y1=\"" << num(by) << "\" x2=\"" << num(x(t))
           << "\" y2=\"" << num(by + 5) << "\"/>\n";
    for (double t : ticks(y0_, y1_))
      out_ << "<line x1=\"" << num(bx - 5) << "\" y1=\"" << num(y(t)) << "\" x2=\"" << num(bx)
           << "\" y2=\"" << num(y(t)) << "\"/>\n";
    out_ << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double t : ticks(x0_, x1_))
      out_ << "<text x=\"" << num(x(t)) << "\" y=\"" << num(by + 18)
           << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    for (double t : ticks(y0_, y1_))
      out_ << "<text x=\"" << num(bx - 8) << "\" y=\"" << num(y(t) + 4)
           << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    out_ << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 12)
         << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
    out_ << "<text x=\"16\" y=\"" << num((kTop + kHeight - kBottom) / 2)
         << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
         << num((kTop + kHeight - kBottom) / 2) << ")\">" << escape(ylabel) << "</text>\n";
    if (!title.empty())
      out_ << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
           << escape(title) << "</text>\n";
    out_ << "</g>\n";
  }

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const char* color,
                const char* extra = "") {
    out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << extra
         << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out_ << (i ? " " : "") << num(x(xs[i])) << ',' << num(y(ys[i]));
    out_ << "\"/>\n";
  }

  void band(const std::vector<double>& xs, const std::vector<double>& lo,
            const std::vector<double>& hi, const char* color) {
    out_ << "<polygon fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out_ << (i ? " " : "") << num(x(xs[i])) << ',' << num(y(hi[i]));
    for (std::size_t i = xs.size(); i-- > 0;) out_ << ' ' << num(x(xs[i])) << ',' << num(y(lo[i]));
    out_ << "\"/>\n";
  }

  void error_bar(double xv, double lo, double hi, const char* color) {
    const double px = x(xv);
    out_ << "<g stroke=\"" << color << "\" stroke-width=\"1\">"
         << "<line x1=\"" << num(px) << "\" y1=\"" << num(y(lo)) << "\" x2=\"" << num(px)
         << "\" y2=\"" << num(y(hi)) << "\"/>"
         << "<line x1=\"" << num(px - 4) << "\" y1=\"" << num(y(lo)) << "\" x2=\"" << num(px + 4)
         << "\" y2=\"" << num(y(lo)) << "\"/>"
         << "<line x1=\"" << num(px - 4) << "\" y1=\"" << num(y(hi)) << "\" x2=\"" << num(px + 4)
         << "\" y2=\"" << num(y(hi)) << "\"/></g>\n";
  }

  void marker(double xv, double yv, const char* color) {
    out_ << "<circle cx=\"" << num(x(xv)) << "\" cy=\"" << num(y(yv)) << "\" r=\"3\" fill=\""
         << color << "\"/>\n";
  }

  void legend(std::size_t slot, const std::string& label, const char* color) {
    const double ly = kTop + 8 + 16 * static_cast<double>(slot);
    const double lx = kWidth - kRight - 150;
    out_ << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
         << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out_ << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4)
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(label) << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  double x0_, x1_, y0_, y1_;
  std::ostringstream out_;
};

}  // namespace

std::string band_svg(const ConfidenceBand& band, const std::string& title) {
  if (band.mean.empty()) throw ValidationError("cannot plot an empty band");
  const auto& ts = band.grid.times();
  const auto lo = band.lower();
  const auto hi = band.upper();
  Canvas c(ts.front(), ts.back(), *std::ranges::min_element(lo), *std::ranges::max_element(hi));
  c.axes(title, "t", "distance");
  c.band(ts, lo, hi, kColors[0]);
  c.polyline(ts, band.mean, kColors[0]);
  return c.finish();
}

std::string band_csv(const ConfidenceBand& band) {
  if (band.mean.empty()) throw ValidationError("cannot plot an empty band");
  const auto lo = band.lower();
  const auto hi = band.upper();
  std::string out = "t,mean,lower,upper\n";
  for (std::size_t j = 0; j < band.mean.size(); ++j) {
    out += io::format_double(band.grid.times()[j]) + ',' + io::format_double(band.mean[j]) + ',' +
           io::format_double(lo[j]) + ',' + io::format_double(hi[j]) + '\n';
  }
  return out;
}

RateCurve rate_curve_from_json(const nlohmann::json& summary, const std::string& label) {
  if (!summary.contains("results") || summary.at("results").empty())
    throw ValidationError("experiment summary has no results to plot");
  RateCurve curve;
  curve.label = label;
  for (const auto& r : summary.at("results")) {
    curve.sizes.push_back(r.at("size").get<double>());
    curve.rates.push_back(r.at("rate").get<double>());
    curve.lower.push_back(r.at("ci95").at(0).get<double>());
    curve.upper.push_back(r.at("ci95").at(1).get<double>());
  }
  return curve;
}

std::string rate_svg(const std::vector<RateCurve>& curves, std::optional<double> reference,
                     const std::string& title) {
  if (curves.empty()) throw ValidationError("nothing to plot");
  double x0 = INFINITY, x1 = -INFINITY;
  for (const auto& c : curves) {
    if (c.sizes.empty()) throw ValidationError("curve '" + c.label + "' has no points");
    x0 = std::min(x0, *std::ranges::min_element(c.sizes));
    x1 = std::max(x1, *std::ranges::max_element(c.sizes));
  }
  const double pad = x1 > x0 ? 0.05 * (x1 - x0) : 1.0;
  Canvas canvas(x0 - pad, x1 + pad, 0.0, 1.0);
  canvas.axes(title, "sample size", "rate");
  if (reference) {
    canvas.polyline({x0 - pad, x1 + pad}, {*reference, *reference}, "#555555",
                    " stroke-dasharray=\"5,4\"");
  }
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto* color = kColors[k % kColors.size()];
    const auto& c = curves[k];
    canvas.polyline(c.sizes, c.rates, color);
    for (std::size_t i = 0; i < c.sizes.size(); ++i) {
      canvas.error_bar(c.sizes[i], c.lower[i], c.upper[i], color);
      canvas.marker(c.sizes[i], c.rates[i], color);
    }
    if (!c.label.empty()) canvas.legend(k, c.label, color);
  }
  return canvas.finish();
}

std::string rate_csv(const std::vector<RateCurve>& curves) {
  if (curves.empty()) throw ValidationError("nothing to plot");
  std::string out = "label,size,rate,lower,upper\n";
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.sizes.size(); ++i)
      out += c.label + ',' + io::format_double(c.sizes[i]) + ',' + io::format_double(c.rates[i]) +
             ',' + io::format_double(c.lower[i]) + ',' + io::format_double(c.upper[i]) + '\n';
  return out;
}

}  // namespace heatgraph::plot
