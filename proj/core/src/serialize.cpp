#include "ohz/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ohz {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json matrix_to_json(const CMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return {{"n", m.rows()}, {"cols", m.cols()}, {"rows", rows}};
}

CMat matrix_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  int cols = j.contains("cols") ? j.at("cols").get<int>() : n;
  CMat m(n, cols);
  const auto& rows = j.at("rows");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < cols; ++c) {
      const auto& e = rows.at(r).at(c);
      m(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

nlohmann::json seminorm_to_json(const SeminormReport& r) {
  return {{"value", r.value},
          {"t_star", r.t_star},
          {"x_star", r.x_star},
          {"order", r.order},
          {"grid",
           {{"base_points", r.grid.base_points},
            {"step_points", r.grid.step_points},
            {"t_min", r.grid.t_min},
            {"t_max", r.grid.t_max},
            {"x_min", r.grid.x_min},
            {"x_max", r.grid.x_max}}}};
}

nlohmann::json record_summary_json(const ExperimentRecord& r) {
  nlohmann::json j{{"tag", r.tag},
                   {"function", r.function_id},
                   {"alpha", r.alpha},
                   {"m", r.m},
                   {"omega", r.omega_id},
                   {"dims", r.dims},
                   {"trials", r.trials},
                   {"seed", r.seed},
                   {"rows", r.rows.size()},
                   {"max_ratio", r.max_ratio()},
                   {"violations", r.violations}};
  if (const TrialRow* best = r.argmax()) {
    j["argmax"] = {{"trial", best->trial},
                   {"dim", best->dim},
                   {"delta", best->delta},
                   {"numerator", best->numerator},
                   {"denominator", best->denominator},
                   {"ratio", best->ratio}};
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string record_to_csv(const ExperimentRecord& r) {
  std::ostringstream os;
  os << "tag,dim,seed,delta,numerator,denominator,ratio\n";
  for (const TrialRow& row : r.rows) {
    os << r.tag << ',' << row.dim << ',' << r.seed << ',' << format_g17(row.delta) << ','
       << format_g17(row.numerator) << ',' << format_g17(row.denominator) << ','
       << format_g17(row.ratio) << '\n';
  }
  return os.str();
}

ExperimentRecord record_from_csv(const std::string& csv) {
  ExperimentRecord rec;
  std::istringstream is(csv);
  std::string line;
  bool header = true;
  long long index = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    TrialRow row;
    std::getline(ls, tok, ',');
    rec.tag = tok;
    std::getline(ls, tok, ',');
    row.dim = std::stoi(tok);
    std::getline(ls, tok, ',');
    rec.seed = std::stoull(tok);
    std::getline(ls, tok, ',');
    row.delta = std::stod(tok);
    std::getline(ls, tok, ',');
    row.numerator = std::stod(tok);
    std::getline(ls, tok, ',');
    row.denominator = std::stod(tok);
    std::getline(ls, tok, ',');
    row.ratio = std::stod(tok);
    row.trial = index++;
    rec.rows.push_back(row);
  }
  rec.trials = static_cast<int>(rec.rows.size());
  return rec;
}

std::string kappa_table_csv(const KappaTable& t) {
  std::ostringstream os;
  os << "set,kappa_recursive,kappa_closed\n";
  for (const auto& [j, pair] : t.rows())
    os << j.to_string() << ',' << pair.first << ',' << pair.second << '\n';
  return os.str();
}

std::string kernel_table_csv(const std::vector<KernelTableRow>& rows) {
  std::ostringstream os;
  os << "n,xi,symbol_re,symbol_im\n";
  for (const auto& r : rows)
    os << r.n << ',' << format_g17(r.xi) << ',' << format_g17(r.symbol_re) << ','
       << format_g17(r.symbol_im) << '\n';
  return os.str();
}

std::string residuals_csv(const std::vector<ResidualRow>& rows) {
  std::ostringstream os;
  os << "check,dim,degree,residual\n";
  for (const auto& r : rows)
    os << r.check << ',' << r.dim << ',' << r.degree << ',' << format_g17(r.residual) << '\n';
  return os.str();
}

namespace {

std::string xml_escape(const std::string& s) {
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

struct SvgCanvas {
  std::ostringstream body;
  double width = 640, height = 420;
  double margin = 58;

  void marker(double x, double y, const char* fill = "#2266aa") {
    body << "<circle cx=\"" << format_g17(x) << "\" cy=\"" << format_g17(y)
         << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const char* stroke = "#aa3322") {
    body << "<line x1=\"" << format_g17(x1) << "\" y1=\"" << format_g17(y1) << "\" x2=\""
         << format_g17(x2) << "\" y2=\"" << format_g17(y2) << "\" stroke=\"" << stroke
         << "\" stroke-width=\"1.5\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 12) {
    body << "<text x=\"" << format_g17(x) << "\" y=\"" << format_g17(y) << "\" font-size=\""
         << size << "\" font-family=\"monospace\">" << xml_escape(s) << "</text>\n";
  }
  std::string finish() {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\"/>\n"
       << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
       << "\" height=\"" << height - 2 * margin
       << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n"
       << body.str() << "</svg>\n";
    return os.str();
  }
};

std::string dims_to_string(const std::vector<int>& dims) {
  std::ostringstream os;
  for (size_t i = 0; i < dims.size(); ++i) os << (i ? "/" : "") << dims[i];
  return os.str();
}

}  // namespace

std::string emit_svg(const ExperimentRecord& r, PlotKind kind) {
  if (r.rows.empty()) throw DomainError("emit_svg: empty record");
  SvgCanvas canvas;
  const double m = canvas.margin;
  const double w = canvas.width - 2 * m;
  const double h = canvas.height - 2 * m;

  auto transform = [](double v, double lo, double hi) {
    return hi > lo ? (v - lo) / (hi - lo) : 0.5;
  };

  std::ostringstream title;
  title << "tag=" << r.tag << " dims=" << dims_to_string(r.dims) << " seed=" << r.seed;
  canvas.text(m, m - 18, title.str(), 13);

  if (kind == PlotKind::KappaTable) {
    double lo = 0, hi = 0;
    for (const TrialRow& row : r.rows) hi = std::max(hi, row.ratio);
    int i = 0;
    for (const TrialRow& row : r.rows) {
      double x = m + w * (r.rows.size() > 1 ? i / (r.rows.size() - 1.0) : 0.5);
      double y = m + h * (1.0 - transform(row.ratio, lo, hi));
      canvas.marker(x, y, "#226622");
      ++i;
    }
    canvas.text(m, canvas.height - m + 28, "set index", 11);
    canvas.text(8, m, "kappa", 11);
    return canvas.finish();
  }

  const bool loglog = kind == PlotKind::LoglogSlope;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  std::vector<std::pair<double, double>> pts;
  for (const TrialRow& row : r.rows) {
    if (row.delta <= 0.0) continue;
    double x = std::log10(row.delta);
    double yv = loglog ? row.numerator : row.ratio;
    if (loglog && yv <= 0.0) continue;
    double y = loglog ? std::log10(yv) : yv;
    pts.push_back({x, y});
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  if (pts.empty()) throw DomainError("emit_svg: no plottable rows");
  for (auto [x, y] : pts) {
    double px = m + w * transform(x, xlo, xhi);
    double py = m + h * (1.0 - transform(y, ylo, yhi));
    canvas.marker(px, py);
  }
  canvas.text(m, canvas.height - m + 28, loglog ? "log10 delta" : "log10 delta", 11);
  canvas.text(8, m, loglog ? "log10 numerator" : "ratio", 11);

  bool multi_delta = false;
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first != pts[0].first) multi_delta = true;
  if (loglog && multi_delta && pts.size() >= 2) {
    ExponentFit fit = exponent_fit(r);
    // draw y = slope * x + b through the mean point
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    auto liney = [&](double x) { return my + fit.slope * (x - mx); };
    double x1 = xlo, x2 = xhi;
    double y1 = liney(x1), y2 = liney(x2);
    canvas.line(m + w * transform(x1, xlo, xhi), m + h * (1.0 - transform(y1, ylo, yhi)),
                m + w * transform(x2, xlo, xhi), m + h * (1.0 - transform(y2, ylo, yhi)));
    std::ostringstream note;
    note << "slope=" << format_g17(fit.slope) << " r2=" << format_g17(fit.r2);
    canvas.text(m + 8, m + 16, note.str(), 11);
  }
  return canvas.finish();
}

std::string emit_svg_kappa(const KappaTable& t) {
  ExperimentRecord rec;
  rec.tag = "kappa";
  rec.dims = {t.n_max()};
  int i = 0;
  for (const auto& [j, pair] : t.rows()) {
    TrialRow row;
    row.trial = i++;
    row.dim = j.max();
    row.delta = static_cast<double>(i);
    row.ratio = static_cast<double>(pair.first);
    rec.rows.push_back(row);
  }
  return emit_svg(rec, PlotKind::KappaTable);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ohz
