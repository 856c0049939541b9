#include "hpe/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace hpe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os.precision(17);
  return os;
}

void write_header(std::ostream& os, const std::vector<std::string>& header) {
  for (const auto& h : header) os << "# " << h << '\n';
}

std::string sample_file(std::size_t i, const std::string& field) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sample_%05zu_", i);
  return std::string(buf) + field + ".csv";
}

/// Data rows of a headed CSV: comment lines and the column line are dropped.
std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::ifstream is(p);
  if (!is) throw std::runtime_error("cannot open " + p.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool columns = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!columns) {
      columns = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

// --- norm families -----------------------------------------------------------------

struct Family {
  std::string name;
  double p = p_inf;
  std::vector<Profile> profiles;
};

std::vector<Family> families(const RunRecord& run) {
  std::vector<Family> out;
  if (run.kind == "limit") {
    Family sup{"uT", p_inf, {}}, dy{"dyu", 2.0, {}};
    for (const auto& s : run.samples) {
      Profile p = profile(s.u);
      accumulate(p, profile(s.T));
      sup.profiles.push_back(std::move(p));
      dy.profiles.push_back(profile(ddy(s.u)));
    }
    out = {sup, dy};
    return out;
  }
  const double e = run.eps;
  Family sup{"uvT", p_inf, {}}, dy{"dy_uv", 2.0, {}}, dx{"eps_dx_uv", 2.0, {}},
      gt{"gradT", 2.0, {}};
  for (const auto& s : run.samples) {
    Profile p = profile(s.u);
    accumulate(p, profile(s.v), e);
    accumulate(p, profile(s.T));
    sup.profiles.push_back(std::move(p));
    Profile q = profile(ddy(s.u));
    accumulate(q, profile(ddy(s.v)), e);
    dy.profiles.push_back(std::move(q));
    Profile x(static_cast<std::size_t>(run.grid.modes_x()), 0.0);
    accumulate(x, profile(ddx(s.u)), e);
    accumulate(x, profile(ddx(s.v)), e * e);
    dx.profiles.push_back(std::move(x));
    Profile g = profile(ddx(s.T));
    accumulate(g, profile(ddy(s.T)));
    gt.profiles.push_back(std::move(g));
  }
  out = {sup, dy, dx, gt};
  return out;
}

struct Weights {
  std::vector<double> t, radius, growth, zero, one;
};

Weights weights(const RunRecord& run) {
  Weights w;
  for (const auto& s : run.samples) {
    w.t.push_back(s.t);
    w.radius.push_back(s.radius);
    w.growth.push_back(std::exp(run.R * s.t));
    w.zero.push_back(0.0);
    w.one.push_back(1.0);
  }
  return w;
}

/// Instantaneous B^s norm (mean block included) at every sample of a series.
std::vector<double> pointwise(const NormSeries& ns) {
  std::vector<double> v(ns.times.size(), 0.0);
  for (std::size_t i = 0; i < ns.times.size(); ++i) {
    for (std::size_t j = 0; j < ns.blocks[i].size(); ++j)
      v[i] += std::pow(2.0, (ns.q_min + static_cast<int>(j)) * ns.s) * ns.blocks[i][j];
    if (ns.has_mean()) v[i] += ns.mean[i];
  }
  return v;
}

// --- commands -----------------------------------------------------------------------

const std::set<std::string> string_keys = {"family", "snapshot", "output_dir", "mean_gauge",
                                           "eta_limit_weight"};
const std::vector<std::string> config_keys = {
    "Nx",        "Ny",          "Lx",         "eps",          "dt",
    "horizon",   "family",      "amplitude",  "bands",        "vertical_modes",
    "sigma",     "seed",        "snapshot",   "a",            "lambda_override",
    "mu_override", "c0_override", "R",        "output_dir",   "sample_every",
    "dealias",   "hydrostatic_split", "order", "stiffness_safety", "cfl_limit",
    "mean_gauge", "eta_limit_weight"};

struct ConfigSource {
  std::string path;
  std::map<std::string, std::string> flags;
};

void add_config_options(CLI::App* cmd, ConfigSource& src) {
  cmd->add_option("-c,--config", src.path, "JSON run description");
  for (const auto& key : config_keys)
    cmd->add_option("--" + key, src.flags[key], "overrides config key " + key);
}

RunConfig load_config(const ConfigSource& src) {
  json doc = json::object();
  if (!src.path.empty()) {
    std::ifstream is(src.path);
    if (!is) throw config_error("<file>", "cannot open " + src.path);
    try {
      doc = json::parse(is);
    } catch (const json::exception& e) {
      throw config_error("<document>", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("<document>", "must be a JSON object");
  }
  for (const auto& [key, text] : src.flags) {
    if (text.empty()) continue;
    if (string_keys.contains(key)) {
      doc[key] = text;
      continue;
    }
    try {
      doc[key] = json::parse(text);
    } catch (const json::exception&) {
      throw config_error(key, "cannot parse '" + text + "'");
    }
  }
  return parse_config_text(doc.dump());
}

json smallness_json(const SmallnessReport& s) {
  return {{"value", s.value},   {"budget", s.budget},
          {"threshold", s.threshold}, {"margin", s.margin},
          {"threshold_margin", s.threshold_margin}, {"pass", s.pass},
          {"boundary", s.boundary}};
}

json constants_json(const FittedConstants& k) {
  return {{"C", k.C}, {"lambda", k.lambda}, {"c0", k.c0}, {"threshold", k.threshold}};
}

void write_config_echo(const fs::path& dir, const RunConfig& c) {
  auto os = open_out(dir / "config.json");
  os << config_to_json(c) << '\n';
}

RunSetup run_setup(const RunConfig& c, const FittedConstants& k, double eps) {
  RunSetup s;
  s.grid = c.grid();
  s.params = c.step_params();
  s.eps = eps;
  s.horizon = c.horizon;
  s.sample_every = c.sample_every;
  s.a = c.a;
  s.lambda = k.lambda;
  return s;
}

int cmd_run(const ConfigSource& src, bool pe, std::ostream& out) {
  const RunConfig c = load_config(src);
  if (pe && c.eps.size() != 1)
    throw config_error("eps", "run-pe needs exactly one value; use sweep for a list");
  const FittedConstants k = resolve_constants(c);
  const DyadicFilterBank bank = build_filter_bank(c.grid());
  const InitialData data = initial_data(c, k, bank);
  const RunSetup setup = run_setup(c, k, pe ? c.eps.front() : 0.0);
  const RunRecord rec = pe ? run_pe(setup, data, bank) : run_limit(setup, data, bank);
  const fs::path dir = output_path(c);
  write_run_directory(dir, c, k, rec, bank);
  out << json{{"status", rec.status}, {"kind", rec.kind}, {"dir", dir.string()},
              {"steps", rec.steps}}.dump()
      << '\n';
  return 0;
}

int cmd_sweep(const ConfigSource& src, std::ostream& out) {
  const RunConfig c = load_config(src);
  if (c.eps.empty()) throw config_error("eps", "sweep needs at least one value");
  const FittedConstants k = resolve_constants(c);
  const DyadicFilterBank bank = build_filter_bank(c.grid());
  const InitialData data = initial_data(c, k, bank);
  SweepSetup s;
  s.grid = c.grid();
  s.params = c.step_params();
  s.eps = c.eps;
  s.horizon = c.horizon;
  s.sample_every = c.sample_every;
  s.a = c.a;
  s.lambda = k.lambda;
  s.C = k.C;
  s.mu_override = c.mu_override;
  s.eta_limit_weight = c.eta_limit_weight;
  const SweepResult r = convergence_sweep(s, data, bank);

  const fs::path dir = output_path(c);
  fs::create_directories(dir);
  write_config_echo(dir, c);
  const auto header = header_lines(c);
  {
    auto os = open_out(dir / "sweep.csv");
    write_sweep_csv(os, r, header);
  }
  json meta = {{"config_hash", config_hash(c)},
               {"code_version", code_version},
               {"schema_version", schema_version},
               {"kind", "sweep"},
               {"constants", constants_json(k)},
               {"smallness", smallness_json(smallness_check(data, c.a, k.c0, k, bank))},
               {"slope", r.slope ? json(*r.slope) : json(nullptr)},
               {"intercept", r.intercept ? json(*r.intercept) : json(nullptr)}};
  {
    auto os = open_out(dir / "run.json");
    os << meta.dump(2) << '\n';
  }
  out << json{{"status", "ok"},
              {"kind", "sweep"},
              {"dir", dir.string()},
              {"slope", meta["slope"]}}
             .dump()
      << '\n';
  return 0;
}

std::vector<fs::path> run_directories(const std::vector<std::string>& args) {
  std::vector<fs::path> dirs;
  for (const auto& a : args) {
    const fs::path p(a);
    if (!fs::is_directory(p)) throw std::runtime_error("not a directory: " + a);
    if (fs::exists(p / "run.json")) {
      dirs.push_back(p);
      continue;
    }
    std::vector<fs::path> children;
    for (const auto& e : fs::directory_iterator(p))
      if (e.is_directory() && fs::exists(e.path() / "run.json")) children.push_back(e.path());
    std::sort(children.begin(), children.end());
    dirs.insert(dirs.end(), children.begin(), children.end());
  }
  return dirs;
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out) {
  int verified = 0;
  for (const auto& dir : run_directories(args)) {
    std::ifstream is(dir / "run.json");
    const json meta = json::parse(is);
    const std::string kind = meta.at("kind");
    if (kind != "limit" && kind != "pe") continue;
    const RunRecord rec = load_run_directory(dir);
    const DyadicFilterBank bank = build_filter_bank(rec.grid);
    const double C = meta.at("constants").at("C");
    std::vector<CertificateReport> reports;
    std::vector<std::string> skipped;
    if (kind == "limit") {
      reports.push_back(certify_limit_energy(rec, bank, 2.0 * C));
      try {
        reports.push_back(certify_dtu(rec, bank, 2.0 * C));
      } catch (const std::invalid_argument& e) {
        skipped.push_back(e.what());
      }
    } else {
      reports.push_back(certify_pe_energy(rec, bank, 4.0 * C));
    }
    std::vector<std::string> header = {
        "config_hash=" + meta.at("config_hash").get<std::string>(),
        std::string("code_version=") + code_version,
        "schema_version=" + std::to_string(schema_version)};
    {
      auto os = open_out(dir / "certificates.csv");
      write_certificates_csv(os, reports, header);
    }
    json summary = {{"status", "verified"}, {"dir", dir.string()}, {"certificates", json::array()}};
    for (const auto& r : reports)
      summary["certificates"].push_back(
          {{"name", r.name}, {"status", to_string(r.status)}, {"fitted_C", r.fitted_c}});
    if (!skipped.empty()) summary["skipped"] = skipped;
    out << summary.dump() << '\n';
    ++verified;
  }
  if (verified == 0) out << json{{"status", "nothing to verify"}}.dump() << '\n';
  return 0;
}

int cmd_norms(const std::string& file, double a, const std::vector<double>& s_list,
              std::ostream& out) {
  const FieldSnapshot snap = read_field_csv(file);
  const DyadicFilterBank bank = build_filter_bank(snap.field.grid());
  const std::string name = snap.name.empty() ? "f" : snap.name;
  out.precision(17);
  out << "# source=" << file << "\n# t=" << snap.t << "\n# a=" << a << '\n';
  out << "name,s,p,value\n";
  const SpectralField w = apply_weight(snap.field, a);
  for (double s : s_list) {
    out << name << ',' << s << ",inf," << besov_norm_with_mean(snap.field, s, bank) << '\n';
    if (a > 0.0)
      out << name << "_weighted," << s << ",inf," << besov_norm_with_mean(w, s, bank) << '\n';
  }
  return 0;
}

void error_record(std::ostream& err, const std::string& kind, const std::string& key,
                  const std::string& message) {
  err << json{{"status", "error"},
              {"kind", kind},
              {"key", key.empty() ? json(nullptr) : json(key)},
              {"message", message}}
             .dump()
      << '\n';
}

}  // namespace

// --- public helpers --------------------------------------------------------------------

std::vector<std::string> header_lines(const RunConfig& c) {
  return {"config_hash=" + config_hash(c), std::string("code_version=") + code_version,
          "schema_version=" + std::to_string(schema_version)};
}

fs::path output_path(const RunConfig& c) {
  fs::path p(c.output_dir);
  if (p.is_relative())
    if (const char* root = std::getenv("HPE_OUTPUT_ROOT"); root && *root) p = fs::path(root) / p;
  return p;
}

FittedConstants resolve_constants(const RunConfig& c) {
  const FittedConstants fitted = fit_constants(c.a);
  FittedConstants k = constants_from_c(fitted.C, c.a, c.lambda_override);
  if (c.c0_override) k.c0 = *c.c0_override;
  return k;
}

InitialData initial_data(const RunConfig& c, const FittedConstants& k,
                         const DyadicFilterBank& bank) {
  const StripGrid g = c.grid();
  if (c.family == "heat") return heat_data(g, c.amplitude.value_or(1.0));
  if (c.family == "analytic-band")
    return analytic_band_data(g, c.bands, c.vertical_modes, c.sigma.value_or(c.a), c.seed, c.a,
                              c.amplitude.value_or(k.c0 * c.a), bank);
  const fs::path dir(c.snapshot);
  if (!fs::exists(dir / "u.csv")) throw config_error("snapshot", "no u.csv in " + c.snapshot);
  InitialData d;
  d.u0 = read_field_csv((dir / "u.csv").string()).field;
  d.T0 = fs::exists(dir / "T.csv") ? read_field_csv((dir / "T.csv").string()).field
                                   : SpectralField(g, Parity::sine);
  for (const SpectralField* f : {&d.u0, &d.T0}) {
    const StripGrid& fg = f->grid();
    if (fg.nx != g.nx || fg.ny != g.ny || std::abs(fg.lx - g.lx) > 1e-12 * g.lx)
      throw config_error("snapshot", "grid of the snapshot differs from Nx, Ny, Lx");
    if (f->parity() != Parity::sine) throw config_error("snapshot", "fields must be sine");
  }
  return d;
}

std::vector<NormRow> run_norms(const RunRecord& run, const DyadicFilterBank& bank) {
  const Weights w = weights(run);
  std::vector<NormRow> rows;
  if (run.samples.empty()) return rows;
  for (const auto& f : families(run)) {
    const NormSeries plain = weighted_series(f.name, 0.5, w.t, f.profiles, w.zero, w.one, bank);
    const NormSeries weighted =
        weighted_series(f.name, 0.5, w.t, f.profiles, w.radius, w.growth, bank);
    rows.push_back({f.name, 0.5, f.p, chemin_lerner_norm(plain, f.p)});
    rows.push_back({f.name + "_weighted", 0.5, f.p, chemin_lerner_norm(weighted, f.p)});
  }
  return rows;
}

void write_run_directory(const fs::path& dir, const RunConfig& c, const FittedConstants& k,
                         const RunRecord& run, const DyadicFilterBank& bank) {
  fs::create_directories(dir / "fields");
  write_config_echo(dir, c);
  const auto header = header_lines(c);

  {
    auto os = open_out(dir / "fields" / "initial_u.csv");
    write_field_csv(os, run.u0, "u", 0.0, header);
  }
  {
    auto os = open_out(dir / "fields" / "initial_v.csv");
    write_field_csv(os, run.v0, "v", 0.0, header);
  }
  {
    auto os = open_out(dir / "fields" / "initial_T.csv");
    write_field_csv(os, run.T0, "T", 0.0, header);
  }
  {
    auto idx = open_out(dir / "fields" / "samples.csv");
    write_header(idx, header);
    idx << "index,t,radius\n";
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
      const Sample& s = run.samples[i];
      idx << i << ',' << s.t << ',' << s.radius << '\n';
      const std::pair<const char*, const SpectralField*> parts[] = {
          {"u", &s.u}, {"v", &s.v}, {"T", &s.T}, {"du", &s.du}, {"dT", &s.dT}};
      for (const auto& [name, f] : parts) {
        auto os = open_out(dir / "fields" / sample_file(i, name));
        write_field_csv(os, *f, name, s.t, header);
      }
    }
  }
  {
    auto os = open_out(dir / "band.csv");
    write_header(os, header);
    os << "# kind=" << to_string(run.band.kind) << "\n# a=" << run.band.a
       << "\n# lambda=" << run.band.lambda << '\n';
    run.band.write_csv(os);
  }
  {
    auto os = open_out(dir / "eta.csv");
    write_header(os, header);
    os << "step,value\n";
    for (std::size_t i = 0; i < run.eta_part.size(); ++i) os << i << ',' << run.eta_part[i] << '\n';
  }
  {
    auto os = open_out(dir / "norms.csv");
    write_header(os, header);
    os << "name,s,p,value\n";
    for (const auto& r : run_norms(run, bank))
      os << r.name << ',' << r.s << ',' << r.p << ',' << r.value << '\n';
  }
  {
    auto os = open_out(dir / "history.csv");
    write_header(os, header);
    os << "t,name,s,value\n";
    const Weights w = weights(run);
    if (!run.samples.empty())
      for (const auto& f : families(run)) {
        const auto plain =
            pointwise(weighted_series(f.name, 0.5, w.t, f.profiles, w.zero, w.one, bank));
        const auto weighted =
            pointwise(weighted_series(f.name, 0.5, w.t, f.profiles, w.radius, w.growth, bank));
        for (std::size_t i = 0; i < w.t.size(); ++i) {
          os << w.t[i] << ',' << f.name << ",0.5," << plain[i] << '\n';
          os << w.t[i] << ',' << f.name << "_weighted,0.5," << weighted[i] << '\n';
        }
      }
  }

  const InitialData data{run.u0, run.T0};
  json meta = {{"config_hash", config_hash(c)},
               {"code_version", code_version},
               {"schema_version", schema_version},
               {"kind", run.kind},
               {"eps", run.eps},
               {"status", run.status},
               {"message", run.message},
               {"steps", run.steps},
               {"dt", run.dt},
               {"R", run.R},
               {"a", run.a},
               {"lambda", run.lambda},
               {"horizon", run.horizon},
               {"samples", run.samples.size()},
               {"max_divergence", run.max_divergence},
               {"max_column_mean", run.max_column_mean},
               {"max_wall_flux", run.max_wall_flux},
               {"constants", constants_json(k)},
               {"smallness", smallness_json(smallness_check(data, c.a, k.c0, k, bank))}};
  auto os = open_out(dir / "run.json");
  os << meta.dump(2) << '\n';
}

RunRecord load_run_directory(const fs::path& dir) {
  std::ifstream is(dir / "run.json");
  if (!is) throw std::runtime_error("no run.json in " + dir.string());
  const json meta = json::parse(is);
  RunRecord r;
  r.kind = meta.at("kind");
  if (r.kind != "limit" && r.kind != "pe")
    throw std::runtime_error(dir.string() + " holds a " + r.kind + ", not a run");
  r.eps = meta.at("eps");
  r.dt = meta.at("dt");
  r.R = meta.at("R");
  r.a = meta.at("a");
  r.lambda = meta.at("lambda");
  r.horizon = meta.at("horizon");
  r.status = meta.at("status");
  r.message = meta.at("message");
  r.steps = meta.at("steps");
  r.max_divergence = meta.at("max_divergence");
  r.max_column_mean = meta.at("max_column_mean");
  r.max_wall_flux = meta.at("max_wall_flux");

  const fs::path fields = dir / "fields";
  r.u0 = read_field_csv((fields / "initial_u.csv").string()).field;
  r.v0 = read_field_csv((fields / "initial_v.csv").string()).field;
  r.T0 = read_field_csv((fields / "initial_T.csv").string()).field;
  r.grid = r.u0.grid();
  for (const auto& row : csv_rows(fields / "samples.csv")) {
    if (row.size() < 3) throw std::runtime_error("samples.csv: malformed row");
    const std::size_t i = std::stoul(row[0]);
    Sample s;
    s.t = std::stod(row[1]);
    s.radius = std::stod(row[2]);
    s.u = read_field_csv((fields / sample_file(i, "u")).string()).field;
    s.v = read_field_csv((fields / sample_file(i, "v")).string()).field;
    s.T = read_field_csv((fields / sample_file(i, "T")).string()).field;
    s.du = read_field_csv((fields / sample_file(i, "du")).string()).field;
    s.dT = read_field_csv((fields / sample_file(i, "dT")).string()).field;
    r.samples.push_back(std::move(s));
  }
  r.band = BandState(r.a, r.lambda, r.kind == "pe" ? BandKind::tau : BandKind::theta);
  for (const auto& row : csv_rows(dir / "band.csv")) {
    if (row.size() < 4) throw std::runtime_error("band.csv: malformed row");
    r.band.history.push_back(
        {std::stod(row[0]), std::stod(row[1]), std::stod(row[2]), std::stod(row[3])});
  }
  if (!r.band.history.empty()) {
    r.band.t = r.band.history.back().t;
    r.band.accumulated = r.band.history.back().accumulated;
    r.band.exhausted = r.band.radius() <= 0.0;
  }
  for (const auto& row : csv_rows(dir / "eta.csv"))
    if (row.size() >= 2) r.eta_part.push_back(std::stod(row[1]));
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hydrostatic limit and scaled primitive equations on a strip"};
  app.require_subcommand(1);

  ConfigSource limit_src, pe_src, sweep_src;
  auto* run_limit_cmd = app.add_subcommand("run-limit", "integrate the limit system");
  add_config_options(run_limit_cmd, limit_src);
  auto* run_pe_cmd = app.add_subcommand("run-pe", "integrate the scaled primitive system");
  add_config_options(run_pe_cmd, pe_src);
  auto* sweep_cmd = app.add_subcommand("sweep", "convergence sweep over a list of eps");
  add_config_options(sweep_cmd, sweep_src);

  std::vector<std::string> verify_dirs;
  auto* verify_cmd = app.add_subcommand("verify", "certify recorded runs");
  verify_cmd->add_option("dirs", verify_dirs, "run directories, or parents of run directories");

  std::string norms_file;
  double norms_a = 0.0;
  std::vector<double> norms_s = {0.5, 1.5, 2.5};
  auto* norms_cmd = app.add_subcommand("norms", "Besov norms of a field snapshot");
  norms_cmd->add_option("file", norms_file, "field CSV")->required();
  norms_cmd->add_option("--a", norms_a, "analytic weight radius")->check(CLI::NonNegativeNumber);
  norms_cmd->add_option("--s", norms_s, "regularity indices")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_record(err, "usage", "", e.what());
    return 2;
  }

  try {
    if (*run_limit_cmd) return cmd_run(limit_src, false, out);
    if (*run_pe_cmd) return cmd_run(pe_src, true, out);
    if (*sweep_cmd) return cmd_sweep(sweep_src, out);
    if (*verify_cmd) return cmd_verify(verify_dirs, out);
    if (*norms_cmd) return cmd_norms(norms_file, norms_a, norms_s, out);
  } catch (const config_error& e) {
    error_record(err, "config", e.key(), e.what());
    return 2;
  } catch (const band_exhausted& e) {
    error_record(err, "band-exhausted", "", e.what());
    return 1;
  } catch (const step_error& e) {
    error_record(err, "step", "", e.what());
    return 1;
  } catch (const std::overflow_error& e) {
    error_record(err, "weight", "", e.what());
    return 1;
  } catch (const std::exception& e) {
    error_record(err, "runtime", "", e.what());
    return 1;
  }
  return 0;
}

}  // namespace hpe::cli
