#include "core/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dpnls {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct Registry {
  std::map<std::string, std::function<void(Config&, const std::string&)>> set;

  void add_int(const std::string& k, int Config::*m) {
    set[k] = [m, k](Config& c, const std::string& v) {
      size_t pos = 0;
      c.*m = std::stoi(v, &pos);
      if (pos != v.size()) throw std::runtime_error("bad integer for " + k);
    };
  }
  void add_dbl(const std::string& k, double Config::*m) {
    set[k] = [m, k](Config& c, const std::string& v) {
      size_t pos = 0;
      c.*m = std::stod(v, &pos);
      if (pos != v.size()) throw std::runtime_error("bad number for " + k);
    };
  }
  void add_str(const std::string& k, std::string Config::*m) {
    set[k] = [m](Config& c, const std::string& v) { c.*m = v; };
  }
};

const Registry& registry() {
  static Registry r = [] {
    Registry reg;
    reg.add_int("problem.d", &Config::d);
    reg.add_dbl("problem.p", &Config::p);
    reg.add_int("problem.epsilon", &Config::epsilon);
    reg.add_int("problem.K", &Config::K);
    reg.add_dbl("problem.E0", &Config::E0);
    reg.add_int("grid.Nx", &Config::Nx);
    reg.add_dbl("grid.Rmax_x", &Config::Rmax_x);
    reg.add_int("grid.Ny", &Config::Ny);
    reg.add_dbl("grid.Rmax_y", &Config::Rmax_y);
    reg.add_dbl("evolve.dt", &Config::dt);
    reg.add_str("evolve.scheme", &Config::scheme);
    reg.add_dbl("law.lambda0", &Config::lambda0);
    reg.add_dbl("law.lambda1", &Config::lambda1);
    reg.add_dbl("law.s_end", &Config::s_end);
    reg.add_dbl("run.ds", &Config::ds);
    reg.add_int("run.decompose_every", &Config::decompose_every);
    reg.add_dbl("run.stop_factor", &Config::stop_factor);
    reg.add_dbl("run.eps_tube", &Config::eps_tube);
    reg.add_dbl("run.A", &Config::A);
    reg.add_str("output.dir", &Config::output_dir);
    return reg;
  }();
  return r;
}

void apply(Config& c, const std::string& key, const std::string& val,
           const std::string& where) {
  auto it = registry().set.find(key);
  if (it == registry().set.end())
    throw std::runtime_error("unknown config key '" + key + "' (" + where + ")");
  it->second(c, val);
}

void validate(const Config& c) {
  if (c.d < 1 || c.d > 3) throw std::runtime_error("need d in {1,2,3}");
  if (!(c.p > 1.0 && c.p < 1.0 + 4.0 / c.d))
    throw std::runtime_error("need 1 < p < 1 + 4/d (open interval)");
  if (c.epsilon < -1 || c.epsilon > 1)
    throw std::runtime_error("need epsilon in {-1,0,1}");
  if (c.K < 0 || c.K > 6) throw std::runtime_error("need 0 <= K <= 6");
  if (c.Nx < 16 || c.Ny < 16 || c.Rmax_x <= 0 || c.Rmax_y <= 0)
    throw std::runtime_error("bad grid parameters");
  if (c.scheme != "splitstep" && c.scheme != "midpoint")
    throw std::runtime_error("evolve.scheme must be splitstep or midpoint");
  if (c.lambda1 <= 0 || c.lambda0 <= 0 || c.ds <= 0 || c.dt <= 0)
    throw std::runtime_error("scales and steps must be positive");
}

}  // namespace

Config parse_config(const std::string& path,
                    const std::vector<std::string>& overrides) {
  Config c;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string t = trim(line);
      if (t.empty() || t[0] == '#' || t[0] == ';') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = trim(t.substr(1, t.size() - 2));
        continue;
      }
      size_t eq = t.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected key = value");
      std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
      if (key.find('.') == std::string::npos && !section.empty())
        key = section + "." + key;
      apply(c, key, val, path + ":" + std::to_string(lineno));
    }
  }
  for (const auto& ov : overrides) {
    size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("override must be key=value: " + ov);
    apply(c, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)), "command line");
  }
  validate(c);
  return c;
}

std::string dump_config(const Config& c) {
  char buf[64];
  auto d = [&](double v) {
    snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "[problem]\n"
     << "d = " << c.d << "\np = " << d(c.p) << "\nepsilon = " << c.epsilon
     << "\nK = " << c.K << "\nE0 = " << d(c.E0) << "\n\n[grid]\n"
     << "Nx = " << c.Nx << "\nRmax_x = " << d(c.Rmax_x) << "\nNy = " << c.Ny
     << "\nRmax_y = " << d(c.Rmax_y) << "\n\n[evolve]\n"
     << "dt = " << d(c.dt) << "\nscheme = " << c.scheme << "\n\n[law]\n"
     << "lambda0 = " << d(c.lambda0) << "\nlambda1 = " << d(c.lambda1)
     << "\ns_end = " << d(c.s_end) << "\n\n[run]\n"
     << "ds = " << d(c.ds) << "\ndecompose_every = " << c.decompose_every
     << "\nstop_factor = " << d(c.stop_factor)
     << "\neps_tube = " << d(c.eps_tube) << "\nA = " << d(c.A)
     << "\n\n[output]\ndir = " << c.output_dir << "\n";
  return os.str();
}

}  // namespace dpnls
