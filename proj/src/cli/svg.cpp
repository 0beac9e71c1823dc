// svg.cpp — standalone SVG line plot of one observable across a sweep
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "mfgs/cli.hpp"
#include "mfgs/errors.hpp"

namespace mfgs::cli {

namespace {

constexpr double kWidth = 820, kHeight = 520;
constexpr double kLeft = 80, kRight = 180, kTop = 50, kBottom = 60;

struct Style {
  const char* colour;
  const char* dash;
};

Style style_of(Method m) {
  switch (m) {
    case Method::HighT: return {"#e07b00", ""};
    case Method::Series: return {"#1f5fbf", "6,4"};
    case Method::ME: return {"#7b2fa8", "2,3"};
    case Method::Exact: return {"#000000", ""};
    case Method::Zeroth: return {"#777777", "10,3,2,3"};
    case Method::Oracle: return {"#1a8a3a", ""};
  }
  return {"#000000", ""};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace

std::string to_svg(const SweepResult& r, const SvgOptions& opt) {
  if (opt.observable != "c_ss" && opt.observable != "c_eg")
    throw ValidationError("svg: observable must be c_ss or c_eg");
  const bool logx = r.spec.log_grid;
  auto obs = [&](const PointValue& v) { return opt.observable == "c_ss" ? v.obs.c_ss.real() : v.obs.c_eg.real(); };

  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& row : r.values)
    for (const auto& v : row)
      if (v.ok && std::isfinite(obs(v))) {
        ymin = std::min(ymin, obs(v));
        ymax = std::max(ymax, obs(v));
      }
  if (!std::isfinite(ymin)) ymin = -1.0, ymax = 1.0;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double x0 = r.x.front(), x1 = r.x.back();
  auto tx = [&](double x) {
    const double t = logx ? (std::log(x) - std::log(x0)) / (std::log(x1) - std::log(x0)) : (x - x0) / (x1 - x0);
    return kLeft + t * (kWidth - kLeft - kRight);
  };
  auto ty = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * (kHeight - kTop - kBottom); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    s << "<text x=\"" << num(kWidth / 2 - kRight / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(opt.title) << "</text>\n";

  // axes
  const double px0 = kLeft, px1 = kWidth - kRight, py0 = kHeight - kBottom, py1 = kTop;
  s << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0 << "\" height=\"" << py0 - py1
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  std::vector<double> xt;
  if (logx) {
    for (int d = static_cast<int>(std::floor(std::log10(x0))); d <= static_cast<int>(std::ceil(std::log10(x1))); ++d)
      for (double m : {1.0, 2.0, 5.0}) {
        const double v = m * std::pow(10.0, d);
        if (v >= x0 * (1 - 1e-12) && v <= x1 * (1 + 1e-12)) xt.push_back(v);
      }
  } else {
    for (int i = 0; i <= 5; ++i) xt.push_back(x0 + i * (x1 - x0) / 5);
  }
  for (double v : xt)
    s << "<line x1=\"" << num(tx(v)) << "\" y1=\"" << py0 << "\" x2=\"" << num(tx(v)) << "\" y2=\"" << py0 + 5
      << "\" stroke=\"black\"/><text x=\"" << num(tx(v)) << "\" y=\"" << py0 + 19 << "\" text-anchor=\"middle\">"
      << tick_label(v) << "</text>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = ymin + i * (ymax - ymin) / 5;
    s << "<line x1=\"" << px0 - 5 << "\" y1=\"" << num(ty(v)) << "\" x2=\"" << px0 << "\" y2=\"" << num(ty(v))
      << "\" stroke=\"black\"/><text x=\"" << px0 - 8 << "\" y=\"" << num(ty(v) + 4) << "\" text-anchor=\"end\">"
      << tick_label(v) << "</text>\n";
  }
  s << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
    << to_string(r.spec.swept) << "</text>\n"
    << "<text x=\"20\" y=\"" << num((py0 + py1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << num((py0 + py1) / 2) << ")\">Re " << opt.observable << "</text>\n";

  auto vline = [&](double x, const char* colour, const char* dash) {
    if (!(x >= x0 && x <= x1)) return;
    s << "<line x1=\"" << num(tx(x)) << "\" y1=\"" << py1 << "\" x2=\"" << num(tx(x)) << "\" y2=\"" << py0
      << "\" stroke=\"" << colour << "\" stroke-dasharray=\"" << dash << "\"/>\n";
  };
  if (opt.validity_line) vline(*opt.validity_line, "red", "6,4");
  if (opt.series_line) vline(*opt.series_line, "#999999", "2,3");

  // curves, broken at missing points
  for (std::size_t j = 0; j < r.spec.methods.size(); ++j) {
    const Style st = style_of(r.spec.methods[j]);
    std::string pts;
    auto flush = [&] {
      if (pts.empty()) return;
      s << "<polyline fill=\"none\" stroke=\"" << st.colour << "\" stroke-width=\"2\"";
      if (*st.dash) s << " stroke-dasharray=\"" << st.dash << "\"";
      s << " points=\"" << pts << "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const PointValue& v = r.values[i][j];
      if (!v.ok || !std::isfinite(obs(v))) {
        flush();
        continue;
      }
      pts += (pts.empty() ? "" : " ") + num(tx(r.x[i])) + "," + num(ty(obs(v)));
    }
    flush();

    const double ly = kTop + 20 + 22.0 * j;
    s << "<line x1=\"" << px1 + 15 << "\" y1=\"" << ly << "\" x2=\"" << px1 + 50 << "\" y2=\"" << ly << "\" stroke=\""
      << st.colour << "\" stroke-width=\"2\"";
    if (*st.dash) s << " stroke-dasharray=\"" << st.dash << "\"";
    s << "/><text x=\"" << px1 + 56 << "\" y=\"" << ly + 4 << "\">" << to_string(r.spec.methods[j]) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace mfgs::cli
