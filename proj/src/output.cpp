#include "framewalk/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace framewalk {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out << text;
  out.close();
  if (!out) throw IoError("write failed", path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// strtod keeps subnormals (stod rejects them as out of range).
double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument(s);
  return v;
}

}  // namespace

std::string history_csv(const std::vector<HistoryRecord>& history) {
  std::ostringstream os;
  os << kHistoryHeader << "\n";
  for (const auto& h : history) {
    os << h.step << ',' << g17(h.t) << ',' << g17(h.tau) << ',' << g17(h.F) << ',' << g17(h.F1) << ','
       << g17(h.F2) << ',' << g17(h.F3) << ',' << g17(h.orth_error) << ',' << h.residual_evals << ','
       << h.newton_iters << ',' << g17(h.dissipation) << "\n";
  }
  return os.str();
}

std::vector<HistoryRecord> parse_history_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHistoryHeader) throw InvalidInput("history csv: unexpected header");
  std::vector<HistoryRecord> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 11) throw InvalidInput("history csv: row " + std::to_string(row) + " has wrong field count");
    HistoryRecord h;
    try {
      h.step = std::stoi(f[0]);
      h.t = parse_real(f[1]);
      h.tau = parse_real(f[2]);
      h.F = parse_real(f[3]);
      h.F1 = parse_real(f[4]);
      h.F2 = parse_real(f[5]);
      h.F3 = parse_real(f[6]);
      h.orth_error = parse_real(f[7]);
      h.residual_evals = std::stoi(f[8]);
      h.newton_iters = std::stoi(f[9]);
      h.dissipation = parse_real(f[10]);
    } catch (const std::exception&) {
      throw InvalidInput("history csv: malformed value in row " + std::to_string(row));
    }
    out.push_back(h);
  }
  return out;
}

void write_history_csv(const std::string& path, const std::vector<HistoryRecord>& history) {
  write_file(path, history_csv(history));
}

std::vector<HistoryRecord> read_history_csv(const std::string& path) {
  return parse_history_csv(read_file(path));
}

void write_vtk(const std::string& path, const FrameField& p, const std::string& title) {
  const auto& g = p.grid();
  const auto& spec = g.spec();
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << g.count(0) << ' ' << g.count(1) << ' ' << g.count(2) << "\n";
  os << "ORIGIN " << g17(spec.origin[0]) << ' ' << g17(spec.origin[1]) << ' ' << g17(spec.origin[2]) << "\n";
  os << "SPACING";
  for (int a = 0; a < 3; ++a) os << ' ' << g17(g.extent(a) / g.count(a));
  os << "\nPOINT_DATA " << g.size() << "\n";
  for (int c = 0; c < 3; ++c) {
    os << "VECTORS n" << c + 1 << " double\n";
    for (int k = 0; k < g.count(2); ++k)
      for (int j = 0; j < g.count(1); ++j)
        for (int i = 0; i < g.count(0); ++i) {
          const Vec3 v = p[g.index(i, j, k)].col(c);
          os << g17(v(0)) << ' ' << g17(v(1)) << ' ' << g17(v(2)) << "\n";
        }
  }
  write_file(path, os.str());
}

VtkFrame read_vtk(const std::string& path) {
  std::istringstream in(read_file(path));
  VtkFrame f;
  std::string line, word;
  auto bad = [&](const std::string& what) { return IoError("malformed VTK file (" + what + ")", path); };
  std::getline(in, line);
  if (line.rfind("# vtk DataFile", 0) != 0) throw bad("header");
  std::getline(in, line);  // title
  std::getline(in, line);
  if (line != "ASCII") throw bad("not ASCII");
  std::size_t points = 0;
  int read_vectors = 0;
  while (in >> word) {
    if (word == "DATASET") {
      in >> word;
      if (word != "STRUCTURED_POINTS") throw bad("dataset " + word);
    } else if (word == "DIMENSIONS") {
      in >> f.dims[0] >> f.dims[1] >> f.dims[2];
    } else if (word == "ORIGIN") {
      in >> f.origin[0] >> f.origin[1] >> f.origin[2];
    } else if (word == "SPACING") {
      in >> f.spacing[0] >> f.spacing[1] >> f.spacing[2];
    } else if (word == "POINT_DATA") {
      in >> points;
    } else if (word == "VECTORS") {
      std::string name, type;
      in >> name >> type;
      if (name.size() != 2 || name[0] != 'n' || name[1] < '1' || name[1] > '3') throw bad("vector " + name);
      auto& dst = f.n[name[1] - '1'];
      dst.resize(points);
      for (std::size_t i = 0; i < points; ++i)
        if (!(in >> dst[i](0) >> dst[i](1) >> dst[i](2))) throw bad("truncated vectors");
      ++read_vectors;
    } else {
      throw bad("token " + word);
    }
  }
  if (read_vectors != 3) throw bad("expected vectors n1, n2, n3");
  return f;
}

std::string energy_svg(const std::vector<std::pair<double, double>>& points, bool log_scale) {
  const double W = 640, H = 400, L = 70, R = 20, T = 20, B = 50;
  bool use_log = log_scale;
  if (use_log) {
    use_log = std::any_of(points.begin(), points.end(), [](const auto& p) { return p.second > 0.0; });
  }
  auto yval = [&](double v) { return use_log ? std::log10(v) : v; };
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& [t, F] : points) {
    if (use_log && !(F > 0.0)) continue;
    const double y = yval(F);
    if (first) {
      xmin = xmax = t;
      ymin = ymax = y;
      first = false;
    } else {
      xmin = std::min(xmin, t);
      xmax = std::max(xmax, t);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto px = [&](double t) { return L + (t - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream os;
  char buf[128];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
     << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\"/>\n", L, H - B, W - R, H - B);
  os << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\"/>\n", L, T, L, H - B);
  os << buf << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  auto label = [&](double x, double y, const char* anchor, const std::string& s) {
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"%s\">", x, y, anchor);
    os << buf << s << "</text>\n";
  };
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };
  label(L, H - B + 18, "middle", num(xmin));
  label(W - R, H - B + 18, "middle", num(xmax));
  label(L - 6, H - B + 4, "end", use_log ? "1e" + num(ymin) : num(ymin));
  label(L - 6, T + 4, "end", use_log ? "1e" + num(ymax) : num(ymax));
  label((L + W - R) / 2, H - 12, "middle", "t");
  label(16, (T + H - B) / 2, "middle", use_log ? "log10 F" : "F");
  os << "</g>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
  bool sep = false;
  for (const auto& [t, F] : points) {
    if (use_log && !(F > 0.0)) continue;
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", sep ? " " : "", px(t), py(yval(F)));
    os << buf;
    sep = true;
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

void write_energy_svg(const std::string& path, const std::vector<std::pair<double, double>>& points,
                      bool log_scale) {
  write_file(path, energy_svg(points, log_scale));
}

std::string snapshot_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06d.vtk", step);
  return buf;
}

}  // namespace framewalk
