#include "condkin/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace condkin {

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  if (v == "auto") return -1.0;
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "not a number: '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "not an integer: '" + v + "'");
  }
}

template <class T, class F>
std::vector<T> parse_list(const std::string& key, const std::string& v, F&& one) {
  std::vector<T> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(one(key, trim(item)));
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, double>)
      s += fmt_double(xs[i]);
    else
      s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, bool> seen;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (seen[key]) throw ConfigError(key, "duplicate key");
    seen[key] = true;

    if (key == "dispersion.p") cfg.dispersion_p = parse_double(key, val);
    else if (key == "dispersion.c") cfg.dispersion_c = parse_double(key, val);
    else if (key == "couplings.c12") cfg.c12 = parse_double(key, val);
    else if (key == "couplings.c22") cfg.c22 = parse_double(key, val);
    else if (key == "couplings.c31") cfg.c31 = parse_double(key, val);
    else if (key == "mu") cfg.mu = parse_double(key, val);
    else if (key == "grid.n_cells") cfg.n_cells = parse_int(key, val);
    else if (key == "grid.omega_max") cfg.omega_max = parse_double(key, val);
    else if (key == "cutoff_n") cfg.cutoff_n = parse_double(key, val);
    else if (key == "ic.kind") cfg.ic_kind = val;
    else if (key == "ic.c_ini") cfg.ic_c_ini = parse_double(key, val);
    else if (key == "ic.amplitude") cfg.ic_amplitude = parse_double(key, val);
    else if (key == "ic.omega_s") cfg.ic_omega_s = parse_double(key, val);
    else if (key == "ic.number") cfg.ic_number = parse_double(key, val);
    else if (key == "time.t_end") cfg.t_end = parse_double(key, val);
    else if (key == "time.dt_init") cfg.dt_init = parse_double(key, val);
    else if (key == "time.dt_max") cfg.dt_max = parse_double(key, val);
    else if (key == "time.safety") cfg.safety = parse_double(key, val);
    else if (key == "time.snapshot_stride") cfg.snapshot_stride = parse_int(key, val);
    else if (key == "time.method") cfg.method = val;
    else if (key == "diagnostics.alphas")
      cfg.alphas = parse_list<double>(key, val, parse_double);
    else if (key == "diagnostics.ladder_m_list")
      cfg.ladder_m_list = parse_list<int>(key, val, parse_int);
    else if (key == "diagnostics.multiscale.m_list")
      cfg.multiscale_m_list = parse_list<int>(key, val, parse_int);
    else if (key == "diagnostics.multiscale.rho")
      cfg.multiscale_rho = parse_double(key, val);
    else if (key == "diagnostics.multiscale.eps")
      cfg.multiscale_eps = parse_double(key, val);
    else if (key == "diagnostics.multiscale.c_star")
      cfg.multiscale_c_star = parse_double(key, val);
    else if (key == "output.dir") cfg.output_dir = val;
    else if (key == "threads") cfg.threads = parse_int(key, val);
    else throw ConfigError(key, "unknown key");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  o << "dispersion.p = " << fmt_double(c.dispersion_p) << "\n";
  o << "dispersion.c = " << fmt_double(c.dispersion_c) << "\n";
  o << "couplings.c12 = " << fmt_double(c.c12) << "\n";
  o << "couplings.c22 = " << fmt_double(c.c22) << "\n";
  o << "couplings.c31 = " << fmt_double(c.c31) << "\n";
  o << "mu = " << fmt_double(c.mu) << "\n";
  o << "grid.n_cells = " << c.n_cells << "\n";
  o << "grid.omega_max = " << fmt_double(c.omega_max) << "\n";
  o << "cutoff_n = " << fmt_double(c.cutoff_n) << "\n";
  o << "ic.kind = " << c.ic_kind << "\n";
  o << "ic.c_ini = " << fmt_double(c.ic_c_ini) << "\n";
  o << "ic.amplitude = " << fmt_double(c.ic_amplitude) << "\n";
  o << "ic.omega_s = " << fmt_double(c.ic_omega_s) << "\n";
  o << "ic.number = " << fmt_double(c.ic_number) << "\n";
  o << "time.t_end = " << fmt_double(c.t_end) << "\n";
  o << "time.dt_init = " << fmt_double(c.dt_init) << "\n";
  o << "time.dt_max = " << fmt_double(c.dt_max) << "\n";
  o << "time.safety = " << fmt_double(c.safety) << "\n";
  o << "time.snapshot_stride = " << c.snapshot_stride << "\n";
  o << "time.method = " << c.method << "\n";
  o << "diagnostics.alphas = " << join(c.alphas) << "\n";
  o << "diagnostics.ladder_m_list = " << join(c.ladder_m_list) << "\n";
  o << "diagnostics.multiscale.m_list = " << join(c.multiscale_m_list) << "\n";
  o << "diagnostics.multiscale.rho = " << fmt_double(c.multiscale_rho) << "\n";
  o << "diagnostics.multiscale.eps = " << fmt_double(c.multiscale_eps) << "\n";
  o << "diagnostics.multiscale.c_star = "
    << (c.multiscale_c_star > 0 ? fmt_double(c.multiscale_c_star) : std::string("auto"))
    << "\n";
  o << "output.dir = " << c.output_dir << "\n";
  o << "threads = " << c.threads << "\n";
  return o.str();
}

void RunConfig::validate() const {
  if (!(dispersion_p >= 1.5 && dispersion_p <= 2.0))
    throw ConfigError("dispersion.p", "must lie in [3/2, 2]");
  if (!(dispersion_c > 0.0)) throw ConfigError("dispersion.c", "must be > 0");
  if (!(c12 > 0.0)) throw ConfigError("couplings.c12", "must be > 0 (only c31 may vanish)");
  if (!(c22 > 0.0)) throw ConfigError("couplings.c22", "must be > 0 (only c31 may vanish)");
  if (c31 < 0.0) throw ConfigError("couplings.c31", "must be >= 0");
  if (mu < 0.0) throw ConfigError("mu", "must be >= 0");
  if (n_cells < 8) throw ConfigError("grid.n_cells", "must be >= 8");
  if (!(omega_max > 0.0)) throw ConfigError("grid.omega_max", "must be > 0");
  if (!(cutoff_n > 0.0)) throw ConfigError("cutoff_n", "must be > 0");
  if (cutoff_n > omega_max / 3.0)
    throw ConfigError("cutoff_n",
                      "must be <= omega_max/3 so gain outputs stay on the grid");
  if (ic_kind != "power_exp" && ic_kind != "gaussian_bump")
    throw ConfigError("ic.kind", "must be power_exp or gaussian_bump");
  if (ic_kind == "power_exp" && (!(ic_c_ini > 0.0) || ic_c_ini > 1.0))
    throw ConfigError("ic.c_ini", "must lie in (0, 1] for power_exp");
  if (!(ic_number > 0.0)) throw ConfigError("ic.number", "must be > 0");
  if (!(ic_amplitude > 0.0)) throw ConfigError("ic.amplitude", "must be > 0");
  if (ic_kind == "gaussian_bump" && !std::isfinite(ic_omega_s))
    throw ConfigError("ic.omega_s", "gaussian_bump requires a finite center");
  if (std::isfinite(ic_omega_s) && !(ic_omega_s > 0.0))
    throw ConfigError("ic.omega_s", "must be > 0");
  if (!(t_end > 0.0)) throw ConfigError("time.t_end", "must be > 0");
  if (!(dt_init > 0.0)) throw ConfigError("time.dt_init", "must be > 0");
  if (!(dt_max >= dt_init)) throw ConfigError("time.dt_max", "must be >= dt_init");
  if (!(safety > 0.0 && safety <= 1.0))
    throw ConfigError("time.safety", "must lie in (0, 1]");
  if (snapshot_stride < 1) throw ConfigError("time.snapshot_stride", "must be >= 1");
  if (method != "euler" && method != "ssprk2")
    throw ConfigError("time.method", "must be euler or ssprk2");
  for (double a : alphas)
    if (a < 0.5 || a >= 1.0)
      throw ConfigError("diagnostics.alphas", "entries must lie in [1/2, 1)");
  for (int m : ladder_m_list)
    if (m < 1) throw ConfigError("diagnostics.ladder_m_list", "entries must be >= 1");
  if (!multiscale_m_list.empty()) {
    for (int m : multiscale_m_list)
      if (m < 1)
        throw ConfigError("diagnostics.multiscale.m_list", "entries must be >= 1");
    validate_multiscale_window(multiscale(), model(), mu);
  }
  if (threads < 1) throw ConfigError("threads", "must be >= 1");
  if (output_dir.empty()) throw ConfigError("output.dir", "must be non-empty");
}

InitProfile RunConfig::profile() const {
  InitProfile p;
  p.kind = ic_kind == "power_exp" ? InitProfile::Kind::power_exp
                                  : InitProfile::Kind::gaussian_bump;
  p.c_ini = ic_c_ini;
  p.amplitude = ic_amplitude;
  p.omega_s = ic_omega_s;
  p.number = ic_number;
  return p;
}

StepControl RunConfig::step_control() const {
  StepControl sc;
  sc.dt_init = dt_init;
  sc.dt_max = dt_max;
  sc.safety = safety;
  sc.method = method == "ssprk2" ? StepMethod::ssprk2 : StepMethod::euler;
  return sc;
}

MultiscaleConfig RunConfig::multiscale() const {
  MultiscaleConfig mc;
  mc.m_list = multiscale_m_list;
  mc.rho = multiscale_rho;
  mc.eps = multiscale_eps;
  mc.c_star = multiscale_c_star;
  return mc;
}

}  // namespace condkin
