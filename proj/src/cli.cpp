#include "hypertrace/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "hypertrace/decompositions.hpp"
#include "hypertrace/geodesic_cycles.hpp"
#include "hypertrace/io.hpp"
#include "hypertrace/kernel_bounds.hpp"
#include "hypertrace/lattice_orbits.hpp"
#include "hypertrace/selberg.hpp"
#include "hypertrace/suites.hpp"
#include "json.hpp"

namespace hypertrace::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options as given on the command line; unset members fall back to the
// config file and then to RunConfig defaults.
struct Flags {
  std::string config_path;
  int d = 0, n = 0, max_len = 0, workers = 0, gamma0_radius = 0;
  std::vector<double> mu, u;
  double nu_re = 0.0, nu_im = 0.0;
  std::string gens, out, format, mode;
  std::vector<std::string> tol;
  std::uint64_t seed = 0;
  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_common(CLI::App* sub, Flags& f) {
  f.opts["config"] = sub->add_option("--config", f.config_path, "JSON run configuration");
  f.opts["d"] = sub->add_option("--d", f.d, "ambient dimension");
  f.opts["n"] = sub->add_option("--n", f.n, "cycle dimension");
  f.opts["mu"] = sub->add_option("--mu", f.mu, "mu value(s)")->delimiter(',');
  f.opts["nu-re"] = sub->add_option("--nu-re", f.nu_re, "Re nu");
  f.opts["nu-im"] = sub->add_option("--nu-im", f.nu_im, "Im nu");
  f.opts["gens"] = sub->add_option("--gens", f.gens, "generator JSON file");
  f.opts["max-len"] = sub->add_option("--max-len", f.max_len, "maximal word length");
  f.opts["tol"] = sub->add_option("--tol", f.tol, "tolerance override NAME=VAL (repeatable)");
  f.opts["out"] = sub->add_option("--out", f.out, "output file (default stdout)");
  f.opts["format"] = sub->add_option("--format", f.format, "csv or json");
  f.opts["workers"] = sub->add_option("--workers", f.workers, "worker threads");
  f.opts["u"] = sub->add_option("--u", f.u, "direction u in R^{n-1}")->delimiter(',');
  f.opts["mode"] = sub->add_option("--mode", f.mode, "left or double coset reduction");
  f.opts["gamma0-radius"] = sub->add_option("--gamma0-radius", f.gamma0_radius,
                                            "Gamma_0-ball word length for double mode");
  f.opts["seed"] = sub->add_option("--seed", f.seed, "seed for the random suites");
}

double parse_tol_value(const std::string& name, const json& v) {
  if (!v.is_number()) throw UsageError("tolerance " + name + " must be a number");
  return v.get<double>();
}

void set_tol(RunConfig& cfg, const std::string& name, double value) {
  const auto known = default_tolerances();
  if (!known.count(name)) throw UsageError("unknown tolerance name '" + name + "'");
  if (!(value > 0) || !std::isfinite(value))
    throw UsageError("tolerance " + name + " must be a positive number");
  cfg.tolerances[name] = value;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "d") cfg.d = v.get<int>();
      else if (key == "n") cfg.n = v.get<int>();
      else if (key == "mu") cfg.mu_list = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
      else if (key == "nu_re") cfg.nu.real(v.get<double>());
      else if (key == "nu_im") cfg.nu.imag(v.get<double>());
      else if (key == "gens") cfg.generators_path = v.get<std::string>();
      else if (key == "max_len") cfg.max_word_length = v.get<int>();
      else if (key == "out") cfg.output_path = v.get<std::string>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "workers") cfg.workers = v.get<int>();
      else if (key == "u") cfg.u = v.get<std::vector<double>>();
      else if (key == "mode") cfg.mode = v.get<std::string>();
      else if (key == "gamma0_radius") cfg.gamma0_radius = v.get<int>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "tol") {
        if (!v.is_object()) throw UsageError("config \"tol\" must be an object");
        for (const auto& [name, val] : v.items()) set_tol(cfg, name, parse_tol_value(name, val));
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::type_error& e) {
    throw UsageError(std::string("config value has the wrong type: ") + e.what());
  }
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  cfg.tolerances = default_tolerances();
  if (f.given("config")) apply_config_file(cfg, f.config_path);
  if (f.given("d")) cfg.d = f.d;
  if (f.given("n")) cfg.n = f.n;
  if (f.given("mu")) cfg.mu_list = f.mu;
  if (f.given("nu-re")) cfg.nu.real(f.nu_re);
  if (f.given("nu-im")) cfg.nu.imag(f.nu_im);
  if (f.given("gens")) cfg.generators_path = f.gens;
  if (f.given("max-len")) cfg.max_word_length = f.max_len;
  if (f.given("out")) cfg.output_path = f.out;
  if (f.given("format")) cfg.format = f.format;
  if (f.given("workers")) cfg.workers = f.workers;
  if (f.given("u")) cfg.u = f.u;
  if (f.given("mode")) cfg.mode = f.mode;
  if (f.given("gamma0-radius")) cfg.gamma0_radius = f.gamma0_radius;
  if (f.given("seed")) cfg.seed = f.seed;
  for (const auto& item : f.tol) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects NAME=VAL, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw UsageError("--tol value for " + name + " is not a number");
    }
    set_tol(cfg, name, value);
  }

  if (cfg.d < 3 || cfg.n < 2 || cfg.n > cfg.d - 1) throw UsageError("need d >= 3 and 2 <= n <= d-1");
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  if (cfg.mode != "left" && cfg.mode != "double") throw UsageError("--mode must be left or double");
  if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
  if (cfg.max_word_length < 0) throw UsageError("--max-len must be >= 0");
  if (cfg.gamma0_radius < 0) throw UsageError("--gamma0-radius must be >= 0");
  for (double mu : cfg.mu_list)
    if (!(mu > 0)) throw UsageError("mu values must be positive");
  if (cfg.u.empty()) cfg.u.assign(cfg.n - 1, 0.0);
  if (static_cast<int>(cfg.u.size()) != cfg.n - 1) throw UsageError("--u must have n-1 components");
  return cfg;
}

ordered_json tolerances_json(const RunConfig& cfg) {
  ordered_json t = ordered_json::object();
  for (const auto& [k, v] : cfg.tolerances) t[k] = v;
  return t;
}

// JSON has no nan/inf; emit null for them.
ordered_json num(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

// Run metadata: JSON outputs embed it, CSV outputs carry it as "# key=value" lines.
ordered_json header(const RunConfig& cfg) {
  ordered_json h;
  h["tolerances"] = tolerances_json(cfg);
  return h;
}

std::string meta_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "nan";
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + meta_text(v[i]);
    return out;
  }
  return v.dump();
}

void write_meta_comments(std::ostream& os, const ordered_json& meta) {
  std::vector<std::pair<std::string, std::string>> lines;
  for (const auto& [k, v] : meta.items()) {
    if (k == "tolerances") {
      for (const auto& [name, t] : v.items()) lines.emplace_back("tol." + name, meta_text(t));
    } else {
      lines.emplace_back(k, meta_text(v));
    }
  }
  write_csv_header_comments(os, lines);
}

struct Sink {
  std::ofstream file;
  std::ostream* os;
  Sink(const std::string& path, std::ostream& fallback) : os(&fallback) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + path);
    os = &file;
  }
};

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  const auto& tol = cfg.tolerances;
  std::vector<SuiteResult> results;
  results.push_back(distance_duality_suite(200, cfg.seed, tol.at("distance")));
  results.push_back(decomposition_roundtrip_suite(200, cfg.seed + 1, tol.at("roundtrip")));
  for (auto& s : gr_identity_suite(10, cfg.seed + 2, tol.at("gr"))) results.push_back(s);
  results.push_back(summarize_transform(
      transform_grid({3, 4, 5}, {0.5, 1.0, 2.0}, {Complex(0.0), Complex(0.3), Complex(0.0, 1.0)}),
      tol.at("transform")));

  if (!cfg.generators_path.empty()) {
    const GeneratorSet gens = load_generators(cfg.generators_path, tol.at("group"));
    if (gens.d() != cfg.d) throw UsageError("generator dimension does not match --d");
    EnumerateOptions eo;
    eo.quantum = tol.at("quantum");
    eo.audit_tol = tol.at("audit");
    eo.workers = cfg.workers;
    const Ball ball = ball_enumerate(gens, std::min(cfg.max_word_length, 4), eo);
    const CycleConfig cc(cfg.d, cfg.n);
    SuiteResult geo{"cycle_geometry", 0, 0, 0.0, tol.at("geometry")};
    const Vector u = to_vector(cfg.u);
    const std::size_t stride = std::max<std::size_t>(1, ball.elements.size() / 50);
    for (std::size_t i = 0; i < ball.elements.size(); i += stride) {
      for (double r : {0.5, 1.0, 2.0}) {
        const GeometricCheck g = verify_f_geometric(ball.elements[i].matrix, u, r, cc);
        ++geo.cases;
        if (!(g.gap <= geo.tol)) ++geo.failures;
        geo.worst = std::max(geo.worst, g.gap);
      }
    }
    results.push_back(geo);
  }

  bool pass = true;
  for (const auto& r : results) pass = pass && r.pass();
  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "verify";
    j.update(header(cfg));
    j["seed"] = cfg.seed;
    j["checks"] = ordered_json::array();
    for (const auto& r : results)
      j["checks"].push_back({{"name", r.name}, {"cases", r.cases}, {"failures", r.failures},
                             {"worst", num(r.worst)}, {"tol", r.tol}, {"pass", r.pass()}});
    j["pass"] = pass;
    os << j.dump(2) << '\n';
  } else {
    ordered_json meta = header(cfg);
    meta["seed"] = cfg.seed;
    write_meta_comments(os, meta);
    os << "name,cases,failures,worst,tol,pass\n";
    for (const auto& r : results)
      os << r.name << ',' << r.cases << ',' << r.failures << ',' << format_double(r.worst) << ','
         << format_double(r.tol) << ',' << (r.pass() ? "true" : "false") << '\n';
  }
  return pass ? kPass : kCheckFailure;
}

struct Experiment {
  Ball ball;
  OrbitTable skeleton;
  OrbitTable spectrum;
};

Experiment run_experiment(const RunConfig& cfg) {
  if (cfg.generators_path.empty()) throw UsageError("--gens is required");
  const auto& tol = cfg.tolerances;
  const GeneratorSet gens = load_generators(cfg.generators_path, tol.at("group"));
  if (gens.d() != cfg.d) throw UsageError("generator dimension does not match --d");
  EnumerateOptions eo;
  eo.quantum = tol.at("quantum");
  eo.audit_tol = tol.at("audit");
  eo.workers = cfg.workers;
  const CycleConfig cc(cfg.d, cfg.n);
  Experiment ex;
  ex.ball = ball_enumerate(gens, cfg.max_word_length, eo);
  ex.skeleton = coset_reduce(ex.ball.elements, cc, cfg.mode == "left" ? CosetMode::Left : CosetMode::Double,
                             cfg.gamma0_radius, tol.at("group"));
  ex.spectrum = delta_spectrum(ex.skeleton, to_vector(cfg.u), cc, cfg.workers);
  return ex;
}

ordered_json experiment_meta(const RunConfig& cfg, const Experiment& ex) {
  ordered_json meta = header(cfg);
  meta["d"] = cfg.d;
  meta["n"] = cfg.n;
  meta["u"] = cfg.u;
  meta["max_len"] = cfg.max_word_length;
  meta["mode"] = cfg.mode;
  if (cfg.mode == "double") meta["gamma0_radius"] = cfg.gamma0_radius;
  meta["ball_size"] = ex.ball.elements.size();
  meta["audit_merges"] = ex.ball.audit_merges;
  meta["near_collisions"] = ex.ball.near_collisions;
  meta["class_count"] = ex.skeleton.class_count();
  return meta;
}

int cmd_delta(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Experiment ex = run_experiment(cfg);
  if (ex.spectrum.entries.empty()) {
    err << "no nontrivial classes\n";
    return kCheckFailure;
  }
  const auto meta = experiment_meta(cfg, ex);
  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "delta";
    j.update(meta);
    j["rows"] = ordered_json::array();
    for (const auto& e : ex.spectrum.entries)
      j["rows"].push_back({{"word", e.word}, {"word_length", e.length}, {"M", num(e.M)}, {"N_u", num(e.N)},
                           {"Q_u", num(e.Q)}, {"delta_u", num(e.delta)}, {"dist", num(cycle_distance(e.delta))}});
    os << j.dump(2) << '\n';
  } else {
    write_meta_comments(os, meta);
    write_delta_csv(os, ex.spectrum);
  }
  return kPass;
}

int cmd_count(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Experiment ex = run_experiment(cfg);
  if (ex.spectrum.entries.empty()) {
    err << "no nontrivial classes\n";
    return kCheckFailure;
  }
  const CycleConfig cc(cfg.d, cfg.n);
  const CountingResult cr = counting_function(ex.spectrum, default_x_grid(ex.spectrum));
  const double ord = ordering_statistic(ex.spectrum, cc);
  ordered_json meta = experiment_meta(cfg, ex);
  meta["slope"] = num(cr.slope);
  meta["fit_lo"] = cr.fit_lo;
  meta["fit_hi"] = cr.fit_hi;
  meta["fit_points"] = cr.fit_points;
  meta["growth_exponent"] = 0.5 * (cfg.d - cfg.n);
  meta["ordering_statistic"] = num(ord);
  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "count";
    j.update(meta);
    j["points"] = ordered_json::array();
    for (std::size_t i = 0; i < cr.x.size(); ++i) j["points"].push_back({{"x", cr.x[i]}, {"count", cr.count[i]}});
    os << j.dump(2) << '\n';
  } else {
    write_meta_comments(os, meta);
    write_counting_csv(os, cr);
  }
  return kPass;
}

int cmd_transform(const RunConfig& cfg, std::ostream& os) {
  const std::vector<double> mus = cfg.mu_list.empty() ? std::vector<double>{1.0} : cfg.mu_list;
  const SpectralParam sp(cfg.nu, cfg.d);  // validates nu
  const double tol = cfg.tolerances.at("transform");
  const auto cases = transform_grid({cfg.d}, mus, {sp.nu()});
  const SuiteResult s = summarize_transform(cases, tol);
  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "transform";
    j.update(header(cfg));
    j["records"] = ordered_json::array();
    for (const auto& c : cases)
      j["records"].push_back({{"d", c.d}, {"mu", c.mu}, {"nu_re", c.nu.real()}, {"nu_im", c.nu.imag()},
                              {"h_closed", num(c.closed.real())}, {"h_quad", num(c.quadrature.real())},
                              {"rel_err", num(c.rel_err)}});
    j["pass"] = s.pass();
    os << j.dump(2) << '\n';
  } else {
    write_meta_comments(os, header(cfg));
    os << "d,mu,nu_re,nu_im,h_closed,h_quad,rel_err\n";
    for (const auto& c : cases)
      os << c.d << ',' << format_double(c.mu) << ',' << format_double(c.nu.real()) << ','
         << format_double(c.nu.imag()) << ',' << format_double(c.closed.real()) << ','
         << format_double(c.quadrature.real()) << ',' << format_double(c.rel_err) << '\n';
  }
  return s.pass() ? kPass : kCheckFailure;
}

int cmd_asymptote(const RunConfig& cfg, std::ostream& os) {
  std::vector<double> mus = cfg.mu_list;
  if (mus.empty())
    for (int k = 1; k <= 12; ++k) mus.push_back(5.0 * k);
  const CycleConfig cc(cfg.d, cfg.n);
  SpectralParam sp(cfg.nu, cfg.d);
  const BoxDomain box(std::vector<std::pair<double, double>>(cfg.n - 1, {0.0, 1.0}), 1.0, 2.0);
  const auto rows = rescaled_limit_shape(cc, mus, sp.nu(), box, cfg.workers);
  ordered_json meta = header(cfg);
  meta["d"] = cfg.d;
  meta["n"] = cfg.n;
  meta["nu_re"] = cfg.nu.real();
  meta["nu_im"] = cfg.nu.imag();
  meta["box"] = "v in [0,1]^{n-1}, r in [1,2]";
  meta["limit"] = std::pow(2.0, cfg.n - cfg.d) * box.i_nu(sp.nu());
  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "asymptote";
    j.update(meta);
    j["rows"] = ordered_json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"mu", r.mu}, {"value_log", num(r.value_log)}, {"sign", r.sign},
                           {"envelope_log", num(r.envelope_log)}});
    os << j.dump(2) << '\n';
  } else {
    write_meta_comments(os, meta);
    write_limit_csv(os, rows);
  }
  return kPass;
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {{"audit", 1e-8},    {"distance", 1e-10}, {"geometry", 1e-6}, {"gr", 1e-7},
          {"group", 1e-9},    {"quantum", 1e-9},   {"roundtrip", 1e-9}, {"transform", 1e-6}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for relative trace formula kernels on hyperbolic space", "hypertrace"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "decomposition, identity, transform and distance suites"},
      {"delta", "delta_u table over the nontrivial coset classes"},
      {"count", "counting function and fitted growth slope"},
      {"transform", "transform closed form against quadrature"},
      {"asymptote", "rescaled main term over a mu grid"}};
  std::map<std::string, Flags> flags;  // node-based: option bindings stay valid
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags[name]);

  std::vector<std::string> argv_store;
  argv_store.push_back("hypertrace");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const RunConfig cfg = resolve(flags.at(cmd));
    Sink sink(cfg.output_path, out);
    std::ostringstream buf;
    int code = kPass;
    if (cmd == "verify") code = cmd_verify(cfg, buf);
    else if (cmd == "delta") code = cmd_delta(cfg, buf, err);
    else if (cmd == "count") code = cmd_count(cfg, buf, err);
    else if (cmd == "transform") code = cmd_transform(cfg, buf);
    else code = cmd_asymptote(cfg, buf);
    *sink.os << buf.str();
    sink.os->flush();
    return code;
  } catch (const UsageError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnsupportedDimension& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUsageError;
  } catch (const OptimizerError& e) {
    err << "check failed: " << e.what() << '\n';
    return kCheckFailure;
  }
}

}  // namespace hypertrace::cli
