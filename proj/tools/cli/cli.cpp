#include "cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/base_spec.hpp"
#include "cli/format.hpp"
#include "loggap/error.hpp"
#include "loggap/limit_dist.hpp"
#include "loggap/sequence.hpp"
#include "loggap/stats.hpp"
#include "loggap/superposition.hpp"
#include "loggap/version.hpp"

namespace loggap::cli {
namespace {

using json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Provenance parse_provenance(const std::string& name) {
  if (name == "raw") return Provenance::Raw;
  if (name == "shifted") return Provenance::Shifted;
  if (name == "unfolded") return Provenance::Unfolded;
  throw UsageError("provenance must be raw, shifted or unfolded, got '" + name + "'");
}

// Gap law matching a provenance: unfolded gaps follow the rescaled law.
MixedDensity theory_for(const LogBase& base, Provenance p, double eps) {
  return p == Provenance::Unfolded ? rescaled_limit_density(base, eps)
                                   : limit_gap_density(base, eps);
}

double default_s_max(const LogBase& base, bool rescaled) {
  return (rescaled ? 1.0 / (1.0 - base.q()) : base.value() / base.log_value()) + 1.0;
}

std::pair<std::int64_t, std::int64_t> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  std::int64_t lo = 0, hi = 0;
  if (dots == std::string::npos) {
    lo = hi = parse_integer(text, "k");
  } else {
    lo = parse_integer(std::string_view(text).substr(0, dots), "k");
    hi = parse_integer(std::string_view(text).substr(dots + 2), "k");
  }
  if (lo < 0 || hi < lo || hi > 10000) throw UsageError("k range must satisfy 0 <= lo <= hi");
  return {lo, hi};
}

std::pair<double, double> parse_interval(const std::string& text, std::string_view what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(std::string(what) + ": expected lo:hi");
  return {parse_double(std::string_view(text).substr(0, colon), what),
          parse_double(std::string_view(text).substr(colon + 1), what)};
}

// Runs body against the configured output file, or against fallback when no
// path was given.
int with_output(const std::string& path, std::ostream& fallback,
                const std::function<int(std::ostream&)>& body) {
  if (path.empty()) return body(fallback);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  const int code = body(file);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + path + "'");
  return code;
}

void write_common_meta(CsvWriter& csv, std::string_view command, const LogBase& base) {
  csv.meta("tool", "loggap");
  csv.meta("version", kVersion);
  csv.meta("command", command);
  csv.meta("base", base.describe());
}

json base_json(const LogBase& base) { return base.describe(); }

std::vector<double> theory_grid(const MixedDensity& law, double s_max, std::size_t grid) {
  std::set<double> points;
  for (std::size_t i = 0; i <= grid; ++i) {
    points.insert(s_max * static_cast<double>(i) / static_cast<double>(grid));
  }
  for (double b : law.breakpoints()) {
    if (b >= 0.0 && b <= s_max) points.insert(b);
  }
  return {points.begin(), points.end()};
}

double exp_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); }

}  // namespace

int cmd_empirical(const RunConfig& config, std::ostream& sink) {
  const LogBase base = parse_base(config.base);
  const Provenance prov = parse_provenance(config.provenance);
  if (config.bins == 0) throw UsageError("bins must be >= 1");
  const double s_max =
      config.s_max > 0.0 ? config.s_max : default_s_max(base, prov == Provenance::Unfolded);

  const GapSample gaps = sequence_gaps(base, config.n, prov).second;
  const EmpiricalCDF ecdf = empirical_cdf(gaps);
  const std::vector<double> hist = histogram_density(gaps.scaled_gaps, config.bins, s_max);
  const double width = s_max / static_cast<double>(config.bins);
  const double overflow = 1.0 - ecdf.left(s_max);

  return with_output(config.out, sink, [&](std::ostream& out) {
    if (config.format == "json") {
      json doc;
      doc["schema"] = 1;
      doc["command"] = "empirical";
      doc["version"] = kVersion;
      doc["base"] = base_json(base);
      doc["n"] = config.n;
      doc["provenance"] = config.provenance;
      doc["sample_size"] = gaps.size();
      doc["zero_gap_fraction"] = ecdf.zero_fraction();
      doc["s_max"] = s_max;
      doc["overflow_fraction"] = overflow;
      json rows = json::array();
      for (std::size_t i = 0; i < config.bins; ++i) {
        const double lo = width * static_cast<double>(i);
        const double hi = lo + width;
        rows.push_back({{"s_lo", lo}, {"s_hi", hi}, {"ecdf", ecdf(hi)}, {"hist_density", hist[i]}});
      }
      doc["bins"] = std::move(rows);
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    CsvWriter csv(out);
    write_common_meta(csv, "empirical", base);
    csv.meta("n", format_number(static_cast<std::uint64_t>(config.n)));
    csv.meta("provenance", config.provenance);
    csv.meta("sample_size", format_number(static_cast<std::uint64_t>(gaps.size())));
    csv.meta("zero_gap_fraction", format_number(ecdf.zero_fraction()));
    csv.meta("s_max", format_number(s_max));
    csv.meta("overflow_fraction", format_number(overflow));
    csv.header({"s_lo", "s_hi", "ecdf", "hist_density"});
    for (std::size_t i = 0; i < config.bins; ++i) {
      const double lo = width * static_cast<double>(i);
      const double hi = lo + width;
      csv.row(std::vector<double>{lo, hi, ecdf(hi), hist[i]});
    }
    return kExitOk;
  });
}

int cmd_theory(const RunConfig& config, std::ostream& sink) {
  const LogBase base = parse_base(config.base);
  bool rescaled = false;
  if (config.what == "rescaled") {
    rescaled = true;
  } else if (config.what != "raw") {
    throw UsageError("--what must be raw or rescaled, got '" + config.what + "'");
  }
  if (config.grid == 0) throw UsageError("grid must be >= 1");
  const MixedDensity law =
      rescaled ? rescaled_limit_density(base, config.eps) : limit_gap_density(base, config.eps);
  const double s_max = config.s_max > 0.0 ? config.s_max : default_s_max(base, rescaled);
  const std::vector<double> grid = theory_grid(law, s_max, config.grid);
  const double to_exp = sup_distance_to_exponential(law, std::max(s_max, 20.0));

  return with_output(config.out, sink, [&](std::ostream& out) {
    if (config.format == "json") {
      json doc;
      doc["schema"] = 1;
      doc["command"] = "theory";
      doc["version"] = kVersion;
      doc["base"] = base_json(base);
      doc["what"] = config.what;
      doc["sup_distance_to_exponential"] = to_exp;
      json atoms = json::array();
      for (const Atom& a : law.atoms()) atoms.push_back({{"location", a.location}, {"mass", a.mass}});
      doc["atoms"] = std::move(atoms);
      json curve = json::array();
      for (double s : grid) {
        curve.push_back({{"s", s},
                         {"density", law.density(s)},
                         {"cdf", law.cdf(s)},
                         {"exp_density", std::exp(-s)},
                         {"exp_cdf", exp_cdf(s)}});
      }
      doc["curve"] = std::move(curve);
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    CsvWriter csv(out);
    write_common_meta(csv, "theory", base);
    csv.meta("what", config.what);
    csv.meta("sup_distance_to_exponential", format_number(to_exp));
    for (const Atom& a : law.atoms()) {
      csv.meta("atom", format_number(a.location) + "," + format_number(a.mass));
    }
    csv.header({"s", "density", "cdf", "exp_density", "exp_cdf"});
    for (double s : grid) {
      csv.row(std::vector<double>{s, law.density(s), law.cdf(s), std::exp(-s), exp_cdf(s)});
    }
    return kExitOk;
  });
}

int cmd_compare(const RunConfig& config, std::ostream& sink) {
  const auto start = std::chrono::steady_clock::now();
  const LogBase base = parse_base(config.base);
  const Provenance prov = parse_provenance(config.provenance);
  if (config.bins == 0) throw UsageError("bins must be >= 1");
  const double s_max =
      config.s_max > 0.0 ? config.s_max : default_s_max(base, prov == Provenance::Unfolded);

  const GapSample gaps = sequence_gaps(base, config.n, prov).second;
  const MixedDensity law = theory_for(base, prov, config.eps);
  KsOptions opts;
  opts.exclude_atoms = config.exclude_atoms;
  const ComparisonReport report = compare(empirical_cdf(gaps), law, config.bins, s_max, opts);

  bool pass = report.sup_cdf_distance <= config.threshold;
  json atoms = json::array();
  for (const AtomError& a : report.atom_mass_errors) {
    const bool ok = a.error <= config.atom_threshold;
    pass = pass && ok;
    atoms.push_back({{"location", a.location},
                     {"empirical", a.empirical},
                     {"theoretical", a.theoretical},
                     {"error", a.error},
                     {"pass", ok}});
  }

  json doc;
  doc["schema"] = 1;
  doc["command"] = "compare";
  doc["version"] = kVersion;
  doc["base"] = base_json(base);
  doc["n"] = config.n;
  doc["provenance"] = config.provenance;
  doc["sample_size"] = report.sample_size;
  doc["exclude_atoms"] = config.exclude_atoms;
  doc["sup_cdf_distance"] = report.sup_cdf_distance;
  doc["l1_density_distance"] = report.l1_density_distance;
  doc["bins"] = config.bins;
  doc["s_max"] = s_max;
  doc["atom_mass_errors"] = std::move(atoms);
  doc["thresholds"] = {{"sup_cdf_distance", config.threshold},
                       {"atom_mass_error", config.atom_threshold}};
  doc["notes"] = report.notes;
  doc["pass"] = pass;
  if (config.timing) {
    doc["runtime_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  return with_output(config.out, sink, [&](std::ostream& out) {
    out << doc.dump(2) << '\n';
    return pass ? kExitOk : kExitThreshold;
  });
}

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta;
};

int write_table(const Table& t, const SimulateConfig& config, std::ostream& sink) {
  return with_output(config.out, sink, [&](std::ostream& out) {
    if (config.format == "json") {
      json doc;
      doc["schema"] = 1;
      doc["command"] = "simulate";
      doc["version"] = kVersion;
      for (const auto& [k, v] : t.meta) doc[k] = v;
      json rows = json::array();
      for (const auto& r : t.rows) {
        json row;
        for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
        rows.push_back(std::move(row));
      }
      doc["rows"] = std::move(rows);
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    CsvWriter csv(out);
    csv.meta("tool", "loggap");
    csv.meta("version", kVersion);
    csv.meta("command", "simulate");
    for (const auto& [k, v] : t.meta) csv.meta(k, v);
    csv.header(t.columns);
    for (const auto& r : t.rows) csv.row(r);
    return kExitOk;
  });
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += format_number(v[i]);
  }
  return s;
}

}  // namespace

int cmd_simulate(const SimulateConfig& config, std::ostream& sink) {
  const auto [k_lo, k_hi] = parse_k_range(config.k);
  Table table;

  if (config.family_b != 0.0) {
    if (!(config.family_b > 1.0)) throw UsageError("--family-b must be > 1");
    table.meta = {{"mode", "family"},
                  {"family_b", format_number(config.family_b)},
                  {"J", format_number(config.J)}};
    table.columns = {"L", "k", "family_E", "poisson", "difference", "J", "tail_estimate"};
    for (double L : config.L) {
      if (!(L >= 0.0)) throw UsageError("L must be >= 0");
      for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const FamilyValue v = family_E(config.family_b, k, L, config.J);
        const double poisson =
            std::exp(static_cast<double>(k) * std::log(L) - L - std::lgamma(static_cast<double>(k) + 1.0));
        const double ref = L == 0.0 ? (k == 0 ? 1.0 : 0.0) : poisson;
        table.rows.push_back({L, static_cast<double>(k), v.value, ref, v.value - ref,
                              static_cast<double>(v.J), v.tail_estimate});
      }
    }
    return write_table(table, config, sink);
  }

  if (config.omegas.empty()) throw UsageError("--omegas is required");
  std::vector<double> betas = config.betas;
  if (config.random_betas) {
    if (!betas.empty()) throw UsageError("--betas and --random-betas are exclusive");
    betas.resize(config.omegas.size());
    // Phases from a stream disjoint from the sampling stream.
    const std::uint64_t phase_seed = counter_bits(config.seed, ~std::uint64_t{0});
    for (std::size_t j = 0; j < betas.size(); ++j) {
      betas[j] = counter_uniform(phase_seed, j) / config.omegas[j];
    }
  }
  if (betas.empty()) betas.assign(config.omegas.size(), 0.0);
  const CountingModel model(config.omegas, betas);
  const double intensity = model.intensity();

  table.meta = {{"omegas", join_numbers(config.omegas)}, {"betas", join_numbers(betas)}};

  if (!config.enumerate.empty()) {
    const auto [lo, hi] = parse_interval(config.enumerate, "--enumerate");
    if (!(hi > lo)) throw UsageError("--enumerate needs lo < hi");
    const std::vector<double> gaps = enumerate_gaps(model, lo, hi);
    std::vector<double> sorted_om = config.omegas;
    std::sort(sorted_om.begin(), sorted_om.end(), std::greater<>());
    std::optional<MixedDensity> law;
    try {
      law.emplace(gap_density_omega(sorted_om));
    } catch (const PreconditionError&) {
      table.meta.emplace_back("note", "largest frequency not unique; no closed form");
    }
    table.meta.emplace_back("mode", "enumerate");
    table.meta.emplace_back("interval", format_number(lo) + ":" + format_number(hi));
    table.meta.emplace_back("gap_count", format_number(static_cast<std::uint64_t>(gaps.size())));
    table.columns = {"s", "empirical_ccdf", "theory_ccdf", "difference"};
    const double count = static_cast<double>(gaps.size());
    for (double s : config.s_grid) {
      const auto above = std::count_if(gaps.begin(), gaps.end(), [s](double g) { return g > s; });
      const double emp = gaps.empty() ? std::nan("") : static_cast<double>(above) / count;
      const double th = law ? law->ccdf(s) / intensity : std::nan("");
      table.rows.push_back({s, emp, th, emp - th});
    }
    return write_table(table, config, sink);
  }

  if (config.samples == 0) throw UsageError("--samples must be >= 1");
  table.meta.emplace_back("mode", "monte_carlo");
  table.meta.emplace_back("samples", format_number(static_cast<std::uint64_t>(config.samples)));
  table.meta.emplace_back("seed", format_number(config.seed));
  table.meta.emplace_back("T", format_number(config.T));
  table.meta.emplace_back("t_range", format_number(config.t_lo) + ":" + format_number(config.t_hi));
  table.columns = {"L", "k", "estimate", "std_error", "formula", "z_score"};
  for (double L : config.L) {
    if (!(L >= 0.0)) throw UsageError("L must be >= 0");
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const McEstimate est =
          mc_estimate_E(model, k, L, config.t_lo, config.t_hi, config.T, config.samples, config.seed);
      const double formula = E_conv(k, L, config.omegas);
      const double diff = est.estimate - formula;
      const double z = est.std_error > 0.0 ? diff / est.std_error
                                           : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
      table.rows.push_back({L, static_cast<double>(k), est.estimate, est.std_error, formula, z});
    }
  }
  return write_table(table, config, sink);
}

namespace {

void add_run_options(CLI::App* cmd, RunConfig& c, bool sample_side, bool theory_side) {
  cmd->add_option("--base", c.base, "e | pi | <decimal> | int:<b> | root:<m>:<r>")
      ->capture_default_str();
  cmd->add_option("--eps", c.eps, "q-Pochhammer truncation tolerance")->capture_default_str();
  cmd->add_option("--s-max", c.s_max, "upper end of the s range (default: past the support)");
  cmd->add_option("--out", c.out, "output file (default: stdout)");
  if (sample_side) {
    cmd->add_option("--n", c.n, "sequence length N")->capture_default_str();
    cmd->add_option("--provenance", c.provenance, "raw | shifted | unfolded")
        ->capture_default_str();
    cmd->add_option("--bins", c.bins, "histogram bins")->capture_default_str();
  }
  if (theory_side) {
    cmd->add_option("--what", c.what, "raw | rescaled")->capture_default_str();
    cmd->add_option("--grid", c.grid, "uniform grid points")->capture_default_str();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gap statistics of fractional parts of logarithms", "loggap"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig emp_cfg, theory_cfg, compare_cfg;
  SimulateConfig sim_cfg;

  auto* emp = app.add_subcommand("empirical", "empirical gap sample as CSV/JSON");
  add_run_options(emp, emp_cfg, true, false);
  emp->add_option("--format", emp_cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* theory = app.add_subcommand("theory", "limiting gap law on a grid plus its atoms");
  add_run_options(theory, theory_cfg, false, true);
  theory->add_option("--format", theory_cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* cmp = app.add_subcommand("compare", "empirical vs limiting law, JSON report");
  add_run_options(cmp, compare_cfg, true, false);
  cmp->add_option("--threshold", compare_cfg.threshold, "max sup CDF distance")
      ->capture_default_str();
  cmp->add_option("--atom-threshold", compare_cfg.atom_threshold, "max atom mass error")
      ->capture_default_str();
  cmp->add_flag("--exclude-atoms", compare_cfg.exclude_atoms,
                "skip atom locations in the sup distance");
  cmp->add_flag("--timing", compare_cfg.timing, "add runtime_seconds (not reproducible)");

  auto* sim = app.add_subcommand("simulate", "superposition of progressions: MC, enumeration, family");
  sim->add_option("--omegas", sim_cfg.omegas, "frequencies, comma separated")->delimiter(',');
  sim->add_option("--betas", sim_cfg.betas, "phases, comma separated")->delimiter(',');
  sim->add_flag("--random-betas", sim_cfg.random_betas, "seeded uniform phases");
  sim->add_option("--L", sim_cfg.L, "window lengths, comma separated")->delimiter(',');
  sim->add_option("--k", sim_cfg.k, "count or range lo..hi")->capture_default_str();
  sim->add_option("--samples", sim_cfg.samples, "Monte Carlo samples")->capture_default_str();
  sim->add_option("--seed", sim_cfg.seed, "generator seed")->capture_default_str();
  sim->add_option("--T", sim_cfg.T, "time scale")->capture_default_str();
  sim->add_option("--t-lo", sim_cfg.t_lo, "t range start, in units of T")->capture_default_str();
  sim->add_option("--t-hi", sim_cfg.t_hi, "t range end, in units of T")->capture_default_str();
  sim->add_option("--enumerate", sim_cfg.enumerate, "enumerate gaps on lo:hi");
  sim->add_option("--s", sim_cfg.s_grid, "gap CCDF points for --enumerate")->delimiter(',');
  sim->add_option("--family-b", sim_cfg.family_b, "log-base family with this b");
  sim->add_option("--J", sim_cfg.J, "family truncation (0: automatic)")->capture_default_str();
  sim->add_option("--format", sim_cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("--out", sim_cfg.out, "output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (emp->parsed()) return cmd_empirical(emp_cfg, out);
    if (theory->parsed()) return cmd_theory(theory_cfg, out);
    if (cmp->parsed()) return cmd_compare(compare_cfg, out);
    if (sim->parsed()) return cmd_simulate(sim_cfg, out);
  } catch (const IoError& e) {
    err << "loggap: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "loggap: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace loggap::cli
