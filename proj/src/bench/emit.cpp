#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "sgm/errors.hpp"
#include "sgm/io.hpp"

namespace sgm::bench {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw IoError("csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, std::size_t line_no) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw IoError("csv line " + std::to_string(line_no) + ": bad integer '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::vector<CsvRow> csv_rows(const SweepResult& sweep) {
  std::vector<CsvRow> rows;
  const auto& cfg = sweep.config;
  const std::string algo = cfg.algorithm.name();
  for (const SweepPoint& pt : sweep.points) {
    std::vector<double> times;
    for (std::size_t t = 0; t < pt.trials.size(); ++t) {
      const TrialResult& tr = pt.trials[t];
      CsvRow row{algo, pt.n, pt.p, pt.s, pt.beta, std::to_string(t), tr.accuracy, std::nullopt, tr.seed};
      if (cfg.timing) row.runtime_ms = tr.total_ms;
      times.push_back(tr.total_ms);
      rows.push_back(std::move(row));
    }
    CsvRow med{algo, pt.n, pt.p, pt.s, pt.beta, "median", pt.median_accuracy, std::nullopt, cfg.seed};
    if (cfg.timing) med.runtime_ms = median(times);
    rows.push_back(std::move(med));
  }
  return rows;
}

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const CsvRow& r : rows) {
    out += r.algorithm + "," + std::to_string(r.n) + "," + format_double(r.p) + "," +
           format_double(r.s) + "," + format_double(r.beta) + "," + r.trial_or_median + "," +
           format_double(r.accuracy) + "," + (r.runtime_ms ? format_double(*r.runtime_ms) : "") +
           "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("csv header mismatch");
  std::vector<CsvRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 9) {
      throw IoError("csv line " + std::to_string(line_no) + ": expected 9 fields, found " +
                    std::to_string(f.size()));
    }
    CsvRow r;
    r.algorithm = f[0];
    r.n = parse_u64(f[1], line_no);
    r.p = parse_double(f[2], line_no);
    r.s = parse_double(f[3], line_no);
    r.beta = parse_double(f[4], line_no);
    r.trial_or_median = f[5];
    r.accuracy = parse_double(f[6], line_no);
    if (!f[7].empty()) r.runtime_ms = parse_double(f[7], line_no);
    r.seed = parse_u64(f[8], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_svg(const std::vector<Curve>& curves, const std::string& x_label) {
  double x_max = 0.0;
  bool any = false;
  for (const Curve& c : curves) {
    for (const CurvePoint& p : c.points) {
      x_max = std::max(x_max, p.x);
      any = true;
    }
  }
  if (!any) throw DomainError("nothing to plot");
  if (x_max <= 0.0) x_max = 1.0;

  constexpr double kW = 640, kH = 420, kLeft = 60, kRight = 20, kTop = 20, kBottom = 50;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  static const std::array<const char*, 6> colors = {"#1f77b4", "#d62728", "#2ca02c",
                                                    "#9467bd", "#ff7f0e", "#17becf"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\""
      << kTop + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + ph << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  out << "<text x=\"15\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 15 " << kTop + ph / 2
      << ")\" text-anchor=\"middle\">accuracy</text>\n";
  out << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 15 << "\" text-anchor=\"middle\">0</text>\n";
  out << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 15 << "\" text-anchor=\"middle\">"
      << format_double(x_max) << "</text>\n";
  out << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + 4 << "\" text-anchor=\"end\">1</text>\n";
  out << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + ph + 4 << "\" text-anchor=\"end\">0</text>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = colors[i % colors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < curves[i].points.size(); ++k) {
      const CurvePoint& p = curves[i].points[k];
      if (k > 0) out << ' ';
      out << kLeft + pw * p.x / x_max << ',' << kTop + ph * (1.0 - p.accuracy);
    }
    out << "\"/>\n";
    out << "<text x=\"" << kLeft + pw - 80 << "\" y=\"" << kTop + ph - 10 - 15.0 * static_cast<double>(i)
        << "\" fill=\"" << color << "\">n=" << curves[i].n << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit_csv(const SweepResult& sweep, const std::string& path) {
  if (sweep.points.empty()) throw DomainError("empty sweep, nothing to write");
  write_file(path, to_csv(csv_rows(sweep)));
}

void emit_svg(const std::vector<Curve>& curves, const std::string& x_label,
              const std::string& path) {
  write_file(path, to_svg(curves, x_label));
}

}  // namespace sgm::bench
