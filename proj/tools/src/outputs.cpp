// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/lab/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "anderson/error.hpp"
#include "anderson/field_io.hpp"

namespace anderson::lab {

bool ExperimentResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ExperimentResult::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string render_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n' << std::setprecision(17);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << '\n';
  }
  return os.str();
}

namespace {

std::size_t column_index(const Table& table, const std::string& name) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), name);
  require(it != table.columns.end(), ErrorKind::InvalidArgument, "no column named " + name);
  return static_cast<std::size_t>(it - table.columns.begin());
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

std::string render_svg(const Table& table, const Plot& plot) {
  const auto xi = column_index(table, plot.x);
  const auto yi = column_index(table, plot.y);
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : table.rows) {
    const double x = plot.log_x ? std::log10(row[xi]) : row[xi];
    if (std::isfinite(x) && std::isfinite(row[yi])) pts.emplace_back(x, row[yi]);
  }
  require(!pts.empty(), ErrorKind::InvalidArgument, "nothing to plot");
  double x0 = pts.front().first, x1 = x0, y0 = pts.front().second, y1 = y0;
  for (const auto& [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  const double W = 640, H = 400, left = 70, right = 20, top = 40, bottom = 50;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
     << plot.title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\""
     << H - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << H - bottom << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0;
    const double yv = y0 + (y1 - y0) * t / 4.0;
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - bottom + 16
       << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(plot.log_x ? std::pow(10.0, xv) : xv)
       << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 3
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(yv) << "</text>\n";
  }
  os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\" font-size=\"12\">" << plot.x << (plot.log_x ? " (log scale)" : "")
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
     << "transform=\"rotate(-90 16 " << (top + H - bottom) / 2 << ")\">" << plot.y << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << (i ? " " : "") << px(pts[i].first) << ',' << py(pts[i].second);
  }
  os << "\"/>\n";
  for (const auto& [x, y] : pts) {
    os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

OutputFile write_text(const std::filesystem::path& dir, const std::string& name,
                      const std::string& text) {
  const auto path = dir / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::Io, "cannot write " + path.string());
  os << text;
  os.close();
  if (!os) fail(ErrorKind::Io, "failed writing " + path.string());
  return {name, sha256_hex(text.data(), text.size()), text.size()};
}

}  // namespace

std::vector<OutputFile> emit_outputs(const ExperimentResult& result,
                                     const std::vector<std::string>& formats,
                                     const std::filesystem::path& dir, const std::string& hash) {
  require(!result.table.rows.empty() || !result.summary.empty() || !result.fields.empty(),
          ErrorKind::InvalidArgument, "emit_outputs needs a nonempty result");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  const std::string stem = result.experiment + "-" + hash;
  std::vector<OutputFile> files;
  auto wants = [&](const char* f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };
  if (wants("csv")) files.push_back(write_text(dir, stem + ".csv", render_csv(result.table)));
  if (wants("json")) {
    Json j = result.summary;
    Json checks = Json::array();
    for (const auto& c : result.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    j["checks"] = checks;
    j["passed"] = result.passed();
    files.push_back(write_text(dir, stem + ".json", j.dump(2) + "\n"));
  }
  if (wants("svg") && result.plot && !result.table.rows.empty()) {
    files.push_back(write_text(dir, stem + ".svg", render_svg(result.table, *result.plot)));
  }
  for (const auto& [name, field] : result.fields) {
    std::ostringstream os;
    write_field(os, field);
    files.push_back(write_text(dir, stem + "-" + name + ".bin", os.str()));
  }
  return files;
}

}  // namespace anderson::lab
