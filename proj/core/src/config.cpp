#include "slotjet/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "slotjet/error.hpp"

namespace slotjet {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size())
    fail("BAD_VALUE:" + key, "cannot parse '" + v + "' as a number");
  return d;
}

long parse_long(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  char* end = nullptr;
  const long d = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size())
    fail("BAD_VALUE:" + key, "cannot parse '" + v + "' as an integer");
  return d;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) fail("BAD_VALUE:" + key, "empty list");
  return out;
}

}  // namespace

RunConfig parse_config(std::istream& is) {
  static const std::set<std::string> known = {
      "a",         "b",          "theta",     "Q",          "L",
      "mu",        "rho_plus",   "rho_minus", "dx",         "pad",
      "tol",       "fit_tol",    "lambda_tol", "lambda_lo", "lambda_hi",
      "omega",     "lambda",     "max_sweeps", "trace_every",
      "slope_window", "Q_list",  "out"};

  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("BAD_LINE", "line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = line.substr(eq + 1);
    if (!known.count(key)) fail("UNKNOWN_KEY:" + key);
    if (!seen.insert(key).second) fail("DUPLICATE_KEY:" + key);

    if (key == "a") cfg.a = parse_double(key, val);
    else if (key == "b") cfg.b = parse_double(key, val);
    else if (key == "theta") cfg.theta = parse_double(key, val);
    else if (key == "Q") cfg.Q = parse_double(key, val);
    else if (key == "L") cfg.L = parse_double(key, val);
    else if (key == "mu") cfg.mu = parse_double(key, val);
    else if (key == "rho_plus") cfg.rho_plus = parse_double(key, val);
    else if (key == "rho_minus") cfg.rho_minus = parse_double(key, val);
    else if (key == "dx") cfg.dx = parse_double(key, val);
    else if (key == "pad") cfg.pad = parse_double(key, val);
    else if (key == "tol") cfg.tol = parse_double(key, val);
    else if (key == "fit_tol") cfg.fit_tol = parse_double(key, val);
    else if (key == "lambda_tol") cfg.lambda_tol = parse_double(key, val);
    else if (key == "lambda_lo") cfg.lambda_lo = parse_double(key, val);
    else if (key == "lambda_hi") cfg.lambda_hi = parse_double(key, val);
    else if (key == "omega") cfg.omega = parse_double(key, val);
    else if (key == "lambda") cfg.lambda = parse_double(key, val);
    else if (key == "max_sweeps") cfg.max_sweeps = parse_long(key, val);
    else if (key == "trace_every") cfg.trace_every = parse_long(key, val);
    else if (key == "slope_window") cfg.slope_window = parse_long(key, val);
    else if (key == "Q_list") cfg.q_list = parse_list(key, val);
    else if (key == "out") cfg.out = trim(val);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("CONFIG_UNREADABLE", path);
  return parse_config(in);
}

DomainSpec RunConfig::to_spec(bool require_q) const {
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) fail(std::string("MISSING_KEY:") + name);
    return *v;
  };
  DomainSpec s;
  s.a = need(a, "a");
  s.b = need(b, "b");
  s.theta = need(theta, "theta");
  s.L = need(L, "L");
  s.mu = need(mu, "mu");
  if (require_q) s.Q = need(Q, "Q");
  else if (Q) s.Q = *Q;
  if (rho_plus) s.rho_plus = *rho_plus;
  if (rho_minus) s.rho_minus = *rho_minus;
  return s;
}

double RunConfig::require_dx() const {
  if (!dx) fail("MISSING_KEY:dx");
  return *dx;
}

}  // namespace slotjet
