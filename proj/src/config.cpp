#include "framewalk/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace framewalk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s, int line, const std::string& key) {
  // strtod rather than stod: subnormal values must survive a round trip.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ConfigError("malformed number '" + s + "' for key '" + key + "'", line);
  return v;
}

int to_int(const std::string& s, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return int(v);
  } catch (const std::exception&) {
    throw ConfigError("malformed integer '" + s + "' for key '" + key + "'", line);
  }
}

bool to_bool(const std::string& s, int line, const std::string& key) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError("malformed boolean '" + s + "' for key '" + key + "'", line);
}

std::vector<double> doubles(const std::string& v, int line, const std::string& key, std::size_t n = 0) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(item, line, key));
  if (out.empty() || (n > 0 && out.size() != n))
    throw ConfigError("key '" + key + "' expects " + (n ? std::to_string(n) : std::string("one or more")) +
                          " comma-separated values",
                      line);
  return out;
}

std::vector<int> ints(const std::string& v, int line, const std::string& key, std::size_t n = 0) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) out.push_back(to_int(item, line, key));
  if (out.empty() || (n > 0 && out.size() != n))
    throw ConfigError("key '" + key + "' expects " + (n ? std::to_string(n) : std::string("one or more")) +
                          " comma-separated integers",
                      line);
  return out;
}

template <std::size_t N>
std::array<double, N> to_array(const std::vector<double>& v) {
  std::array<double, N> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class C>
std::string join(const C& c) {
  std::string s;
  for (const auto& v : c) {
    if (!s.empty()) s += ", ";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>)
      s += fmt(v);
    else
      s += std::to_string(v);
  }
  return s;
}

// Recursive-descent evaluator for the Euler-angle expressions.
class Expression {
 public:
  Expression(const std::string& s, double x1, double x2, double x3) : s_(s), x_{x1, x2, x3} {}

  double run() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("expression '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    while (true) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }
  double product() {
    double v = unary();
    while (true) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  double power() {
    const double b = atom();
    if (eat('^')) return std::pow(b, unary());
    return b;
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(b, pos_ - b);
      if (name == "x1" || name == "x") return x_[0];
      if (name == "x2" || name == "y") return x_[1];
      if (name == "x3" || name == "z") return x_[2];
      if (name == "pi") return std::numbers::pi;
      if (name == "e") return std::numbers::e;
      static const std::map<std::string, double (*)(double)> fns{
          {"sin", [](double a) { return std::sin(a); }},   {"cos", [](double a) { return std::cos(a); }},
          {"tan", [](double a) { return std::tan(a); }},   {"exp", [](double a) { return std::exp(a); }},
          {"log", [](double a) { return std::log(a); }},   {"sqrt", [](double a) { return std::sqrt(a); }},
          {"abs", [](double a) { return std::abs(a); }}};
      const auto it = fns.find(name);
      if (it == fns.end()) fail("unknown name '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return it->second(v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::array<double, 3> x_;
  std::size_t pos_ = 0;
};

bool unit_box_profile(const std::string& name) {
  try {
    const Profile p = parse_profile(name);
    return p == Profile::RadialTwist || p == Profile::PlanarTilt;
  } catch (const InvalidInput&) {
    return false;
  }
}

}  // namespace

double evaluate_expression(const std::string& expr, double x1, double x2, double x3) {
  return Expression(expr, x1, x2, x3).run();
}

GridSpec SimConfig::grid_spec() const {
  GridSpec g;
  g.counts = grid;
  const bool unit_box = !use_euler && unit_box_profile(profile);
  const double lo = unit_box ? -1.0 : 0.0;
  const double len = unit_box ? 2.0 : 2.0 * std::numbers::pi;
  g.extents = extents.value_or(std::array<double, 3>{len, len, len});
  g.origin = origin.value_or(std::array<double, 3>{lo, lo, lo});
  g.dealias = dealias;
  return g;
}

SweepSettings SimConfig::sweep_settings(SweepMode mode) const {
  SweepSettings s;
  s.mode = mode;
  s.N = sweep_n;
  s.taus = sweep_taus;
  s.Ns = sweep_ns;
  s.tau = sweep_tau;
  s.t_final = t_end;
  s.coeffs = coeffs;
  s.solver = solver;
  s.kind = gradient;
  return s;
}

SimConfig parse_config_text(const std::string& text) {
  SimConfig c;
  std::set<std::string> seen;
  std::map<std::string, int> lines;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string v = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (v.empty()) throw ConfigError("missing value for key '" + key + "'", line);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line);
    lines[key] = line;

    if (key == "grid") {
      const auto n = ints(v, line, key, 3);
      for (int a = 0; a < 3; ++a) {
        if (n[a] < 1) throw ConfigError("grid counts must be >= 1", line);
        c.grid[a] = n[a];
      }
    } else if (key == "extents") {
      c.extents = to_array<3>(doubles(v, line, key, 3));
      for (double e : *c.extents)
        if (!(e > 0.0)) throw ConfigError("extents must be > 0", line);
    } else if (key == "origin") {
      c.origin = to_array<3>(doubles(v, line, key, 3));
    } else if (key == "dealias") {
      c.dealias = to_bool(v, line, key);
    } else if (key == "K") {
      c.coeffs.K = to_array<12>(doubles(v, line, key, 12));
      for (double k : c.coeffs.K)
        if (k < 0.0) throw ConfigError("elastic coefficients must be >= 0", line);
    } else if (key == "chi") {
      c.coeffs.chi = to_array<3>(doubles(v, line, key, 3));
      for (double x : c.coeffs.chi)
        if (!(x > 0.0)) throw ConfigError("chi must be > 0", line);
    } else if (key == "profile") {
      try {
        parse_profile(v);
      } catch (const InvalidInput& e) {
        throw ConfigError(e.what(), line);
      }
      c.profile = v;
    } else if (key == "euler_theta" || key == "euler_phi" || key == "euler_psi") {
      const int slot = key == "euler_theta" ? 0 : key == "euler_phi" ? 1 : 2;
      try {
        evaluate_expression(v, 0.1, 0.2, 0.3);
      } catch (const InvalidInput& e) {
        throw ConfigError(e.what(), line);
      }
      c.euler[slot] = v;
    } else if (key == "t_end") {
      c.t_end = to_double(v, line, key);
      if (!(c.t_end > 0.0)) throw ConfigError("t_end must be > 0", line);
    } else if (key == "time_step") {
      if (v == "adaptive")
        c.step.adaptive = true;
      else if (v == "fixed")
        c.step.adaptive = false;
      else
        throw ConfigError("time_step must be 'adaptive' or 'fixed'", line);
    } else if (key == "tau") {
      c.step.tau_fixed = to_double(v, line, key);
    } else if (key == "tau_max") {
      c.step.tau_max = to_double(v, line, key);
    } else if (key == "tau_min") {
      c.step.tau_min = to_double(v, line, key);
    } else if (key == "alpha") {
      c.step.alpha = to_double(v, line, key);
    } else if (key == "max_steps") {
      c.max_steps = to_int(v, line, key);
    } else if (key == "newton_tol") {
      c.solver.newton_tol = to_double(v, line, key);
    } else if (key == "max_newton") {
      c.solver.max_newton = to_int(v, line, key);
    } else if (key == "gmres_tol") {
      c.solver.gmres_tol = to_double(v, line, key);
    } else if (key == "gmres_restart") {
      c.solver.gmres_restart = to_int(v, line, key);
    } else if (key == "gmres_max_restarts") {
      c.solver.gmres_max_restarts = to_int(v, line, key);
    } else if (key == "line_search_factor") {
      c.solver.line_search_factor = to_double(v, line, key);
    } else if (key == "line_search_max_halvings") {
      c.solver.line_search_max_halvings = to_int(v, line, key);
    } else if (key == "precondition") {
      c.solver.precondition = to_bool(v, line, key);
    } else if (key == "discrete_gradient") {
      if (v == "biaxial")
        c.gradient = GradientKind::Biaxial;
      else if (v == "gonzalez")
        c.gradient = GradientKind::Gonzalez;
      else
        throw ConfigError("discrete_gradient must be 'biaxial' or 'gonzalez'", line);
    } else if (key == "output_dir") {
      c.output_dir = v;
    } else if (key == "snapshot_every") {
      c.snapshot_every = to_int(v, line, key);
      if (c.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0", line);
    } else if (key == "energy_scale") {
      if (v == "log")
        c.energy_log_scale = true;
      else if (v == "linear")
        c.energy_log_scale = false;
      else
        throw ConfigError("energy_scale must be 'linear' or 'log'", line);
    } else if (key == "sweep_n") {
      c.sweep_n = to_int(v, line, key);
    } else if (key == "sweep_taus") {
      c.sweep_taus = doubles(v, line, key);
    } else if (key == "sweep_ns") {
      c.sweep_ns = ints(v, line, key);
    } else if (key == "sweep_tau") {
      c.sweep_tau = to_double(v, line, key);
    } else {
      throw ConfigError("unknown key '" + key + "'", line);
    }
  }

  const int euler_keys = int(seen.count("euler_theta") + seen.count("euler_phi") + seen.count("euler_psi"));
  c.use_euler = euler_keys > 0;
  std::vector<std::string> missing;
  for (const char* k : {"grid", "K", "t_end"})
    if (!seen.count(k)) missing.push_back(k);
  if (!seen.count("profile") && euler_keys == 0) missing.push_back("profile (or euler_theta, euler_phi, euler_psi)");
  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg, 0);
  }
  if (euler_keys > 0 && euler_keys < 3) throw ConfigError("euler_theta, euler_phi and euler_psi go together", 0);
  if (euler_keys == 3 && seen.count("profile"))
    throw ConfigError("give either profile or euler_* expressions, not both", lines["profile"]);

  try {
    c.step.validate();
    c.solver.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what(), 0);
  }
  return c;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const SimConfig& c) {
  std::ostringstream os;
  os << "grid = " << join(c.grid) << "\n";
  if (c.extents) os << "extents = " << join(*c.extents) << "\n";
  if (c.origin) os << "origin = " << join(*c.origin) << "\n";
  os << "dealias = " << (c.dealias ? "true" : "false") << "\n";
  os << "K = " << join(c.coeffs.K) << "\n";
  os << "chi = " << join(c.coeffs.chi) << "\n";
  if (c.use_euler) {
    os << "euler_theta = " << c.euler[0] << "\n";
    os << "euler_phi = " << c.euler[1] << "\n";
    os << "euler_psi = " << c.euler[2] << "\n";
  } else {
    os << "profile = " << c.profile << "\n";
  }
  os << "t_end = " << fmt(c.t_end) << "\n";
  os << "time_step = " << (c.step.adaptive ? "adaptive" : "fixed") << "\n";
  os << "tau = " << fmt(c.step.tau_fixed) << "\n";
  os << "tau_max = " << fmt(c.step.tau_max) << "\n";
  os << "tau_min = " << fmt(c.step.tau_min) << "\n";
  os << "alpha = " << fmt(c.step.alpha) << "\n";
  os << "max_steps = " << c.max_steps << "\n";
  os << "newton_tol = " << fmt(c.solver.newton_tol) << "\n";
  os << "max_newton = " << c.solver.max_newton << "\n";
  os << "gmres_tol = " << fmt(c.solver.gmres_tol) << "\n";
  os << "gmres_restart = " << c.solver.gmres_restart << "\n";
  os << "gmres_max_restarts = " << c.solver.gmres_max_restarts << "\n";
  os << "line_search_factor = " << fmt(c.solver.line_search_factor) << "\n";
  os << "line_search_max_halvings = " << c.solver.line_search_max_halvings << "\n";
  os << "precondition = " << (c.solver.precondition ? "true" : "false") << "\n";
  os << "discrete_gradient = " << (c.gradient == GradientKind::Biaxial ? "biaxial" : "gonzalez") << "\n";
  os << "output_dir = " << c.output_dir << "\n";
  os << "snapshot_every = " << c.snapshot_every << "\n";
  os << "energy_scale = " << (c.energy_log_scale ? "log" : "linear") << "\n";
  os << "sweep_n = " << c.sweep_n << "\n";
  os << "sweep_taus = " << join(c.sweep_taus) << "\n";
  os << "sweep_ns = " << join(c.sweep_ns) << "\n";
  os << "sweep_tau = " << fmt(c.sweep_tau) << "\n";
  return os.str();
}

FrameField initial_frame(const SimConfig& c) {
  const SpectralGrid grid(c.grid_spec());
  if (!c.use_euler) return initial_profile(c.profile, grid);
  EulerAngles a{ScalarField(grid, 0.0), ScalarField(grid, 0.0), ScalarField(grid, 0.0)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.coordinate(i);
    a.theta[i] = evaluate_expression(c.euler[0], x[0], x[1], x[2]);
    a.phi[i] = evaluate_expression(c.euler[1], x[0], x[1], x[2]);
    a.psi[i] = evaluate_expression(c.euler[2], x[0], x[1], x[2]);
  }
  return frame_from_euler(a);
}

}  // namespace framewalk
