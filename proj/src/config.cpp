#include "hpe/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hpe {

using nlohmann::json;

StepParams RunConfig::step_params() const {
  StepParams p;
  p.dt = dt;
  p.dealias = dealias;
  p.R = R;
  p.order = order;
  p.hydrostatic_split = hydrostatic_split;
  p.stiffness_safety = stiffness_safety;
  p.cfl_limit = cfl_limit;
  p.mean_gauge = mean_gauge;
  return p;
}

MeanGauge mean_gauge_from_string(const std::string& s) {
  if (s == "automatic") return MeanGauge::automatic;
  if (s == "zero") return MeanGauge::zero;
  if (s == "column") return MeanGauge::column;
  throw config_error("mean_gauge", "expected automatic, zero or column, got '" + s + "'");
}

std::string to_string(MeanGauge g) {
  switch (g) {
    case MeanGauge::automatic: return "automatic";
    case MeanGauge::zero: return "zero";
    case MeanGauge::column: return "column";
  }
  return "?";
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* key, const std::string& msg) {
    if (!ok) throw config_error(key, msg);
  };
  require(is_power_of_two(nx) && nx >= 8, "Nx", "must be a power of two >= 8");
  require(is_power_of_two(ny) && ny >= 8, "Ny", "must be a power of two >= 8");
  require(lx > 0.0, "Lx", "must be positive");
  for (double e : eps) require(e > 0.0 && e <= 1.0, "eps", "each value must lie in (0, 1]");
  for (std::size_t i = 1; i < eps.size(); ++i)
    require(eps[i] < eps[i - 1], "eps", "a list must be strictly decreasing");
  require(dt > 0.0, "dt", "must be positive");
  require(horizon >= 0.0, "horizon", "must be nonnegative");
  require(family == "heat" || family == "analytic-band" || family == "snapshot", "family",
          "expected heat, analytic-band or snapshot");
  require(family != "snapshot" || !snapshot.empty(), "snapshot", "required for family snapshot");
  require(!amplitude || *amplitude >= 0.0, "amplitude", "must be nonnegative");
  require(bands >= 1, "bands", "must be >= 1");
  require(bands < nx / 2, "bands", "must lie below Nx/2");
  require(vertical_modes >= 1 && vertical_modes < ny, "vertical_modes", "must lie in [1, Ny)");
  require(!sigma || *sigma >= 0.0, "sigma", "must be nonnegative");
  require(a > 0.0, "a", "must be positive");
  require(!lambda_override || *lambda_override > 0.0, "lambda_override", "must be positive");
  require(!mu_override || *mu_override > 0.0, "mu_override", "must be positive");
  require(!c0_override || *c0_override > 0.0, "c0_override", "must be positive");
  require(R > 0.0 && R < std::numbers::pi * std::numbers::pi, "R", "must lie in (0, pi^2)");
  require(sample_every > 0.0, "sample_every", "must be positive");
  require(order == 1 || order == 2, "order", "must be 1 or 2");
  require(stiffness_safety > 0.0, "stiffness_safety", "must be positive");
  require(cfl_limit > 0.0, "cfl_limit", "must be positive");
  require(eta_limit_weight == "phi" || eta_limit_weight == "eta", "eta_limit_weight",
          "expected phi or eta");
}

namespace {

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw config_error(key, "has the wrong type");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw config_error("<document>", "must be a JSON object");
  for (const char* key : {"Nx", "Ny", "horizon", "family"})
    if (!doc.contains(key)) throw config_error(key, "missing required key");

  RunConfig c;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (v.is_null()) continue;
    if (k == "Nx") c.nx = get_as<int>(v, k);
    else if (k == "Ny") c.ny = get_as<int>(v, k);
    else if (k == "Lx") c.lx = get_as<double>(v, k);
    else if (k == "eps") {
      if (v.is_array()) c.eps = get_as<std::vector<double>>(v, k);
      else c.eps = {get_as<double>(v, k)};
    } else if (k == "dt") c.dt = get_as<double>(v, k);
    else if (k == "horizon") c.horizon = get_as<double>(v, k);
    else if (k == "family") c.family = get_as<std::string>(v, k);
    else if (k == "amplitude") c.amplitude = get_as<double>(v, k);
    else if (k == "bands") c.bands = get_as<int>(v, k);
    else if (k == "vertical_modes") c.vertical_modes = get_as<int>(v, k);
    else if (k == "sigma") c.sigma = get_as<double>(v, k);
    else if (k == "seed") c.seed = get_as<std::uint64_t>(v, k);
    else if (k == "snapshot") c.snapshot = get_as<std::string>(v, k);
    else if (k == "a") c.a = get_as<double>(v, k);
    else if (k == "lambda_override") c.lambda_override = get_as<double>(v, k);
    else if (k == "mu_override") c.mu_override = get_as<double>(v, k);
    else if (k == "c0_override") c.c0_override = get_as<double>(v, k);
    else if (k == "R") c.R = get_as<double>(v, k);
    else if (k == "output_dir") c.output_dir = get_as<std::string>(v, k);
    else if (k == "sample_every") c.sample_every = get_as<double>(v, k);
    else if (k == "dealias") c.dealias = get_as<bool>(v, k);
    else if (k == "hydrostatic_split") c.hydrostatic_split = get_as<bool>(v, k);
    else if (k == "order") c.order = get_as<int>(v, k);
    else if (k == "stiffness_safety") c.stiffness_safety = get_as<double>(v, k);
    else if (k == "cfl_limit") c.cfl_limit = get_as<double>(v, k);
    else if (k == "mean_gauge") c.mean_gauge = mean_gauge_from_string(get_as<std::string>(v, k));
    else if (k == "eta_limit_weight") c.eta_limit_weight = get_as<std::string>(v, k);
    else throw config_error(k, "unknown key");
  }
  c.validate();
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("<file>", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["Nx"] = c.nx;
  j["Ny"] = c.ny;
  j["Lx"] = c.lx;
  j["eps"] = c.eps;
  j["dt"] = c.dt;
  j["horizon"] = c.horizon;
  j["family"] = c.family;
  j["amplitude"] = c.amplitude ? json(*c.amplitude) : json(nullptr);
  j["bands"] = c.bands;
  j["vertical_modes"] = c.vertical_modes;
  j["sigma"] = c.sigma ? json(*c.sigma) : json(nullptr);
  j["seed"] = c.seed;
  j["snapshot"] = c.snapshot;
  j["a"] = c.a;
  j["lambda_override"] = c.lambda_override ? json(*c.lambda_override) : json(nullptr);
  j["mu_override"] = c.mu_override ? json(*c.mu_override) : json(nullptr);
  j["c0_override"] = c.c0_override ? json(*c.c0_override) : json(nullptr);
  j["R"] = c.R;
  j["output_dir"] = c.output_dir;
  j["sample_every"] = c.sample_every;
  j["dealias"] = c.dealias;
  j["hydrostatic_split"] = c.hydrostatic_split;
  j["order"] = c.order;
  j["stiffness_safety"] = c.stiffness_safety;
  j["cfl_limit"] = c.cfl_limit;
  j["mean_gauge"] = to_string(c.mean_gauge);
  j["eta_limit_weight"] = c.eta_limit_weight;
  return j.dump(2);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << fnv1a(config_to_json(c));
  return os.str();
}

}  // namespace hpe
