// Copyright 2026 The omegaphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front-end: one run per invocation, files out, manifest last.
//
//   omegaphase [--output-dir D] [--format json|csv] [--threads N] COMMAND [options]
//   omegaphase --config FILE [--output-dir D] [--format F] [--threads N]
//
// Exit status: 0 ok, 2 unparseable input, 3 constraint violated, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "omegaphase/chaitin.hpp"
#include "omegaphase/clock.hpp"
#include "omegaphase/composition.hpp"
#include "omegaphase/experiments.hpp"
#include "omegaphase/phase.hpp"
#include "omegaphase/qpe.hpp"
#include "omegaphase/xy_chain.hpp"
#include "omegaphase/zoo.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace omegaphase;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitConstraint = 3;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_field(v.get<std::string>());
  if (v.is_number_float()) return fmt17(v.get<double>());
  return v.dump();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split_list(s)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw ParseError("not a number: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  json to_json() const {
    json arr = json::array();
    for (const auto& row : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = row[i];
      arr.push_back(std::move(o));
    }
    return arr;
  }

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_field(header[i]);
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
      out += '\n';
    }
    return out;
  }
};

class Output {
 public:
  Output(fs::path dir, std::string format) : dir_(std::move(dir)), format_(std::move(format)) {
    fs::create_directories(dir_);
  }

  const std::string& format() const { return format_; }
  const std::vector<std::string>& written() const { return written_; }

  void write(const std::string& name, const std::string& content) {
    const fs::path final_path = dir_ / name;
    const fs::path tmp = dir_ / (name + ".tmp." + std::to_string(::getpid()));
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      out << content;
      out.flush();
      if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, final_path);
    written_.push_back(name);
  }

  /// `summary` plus named tables: one JSON document, or a key,value CSV
  /// with one extra CSV per table. A table named "" becomes `base`.csv and
  /// pushes the summary to `base`_summary.csv.
  void emit(const std::string& base, const json& summary, const std::vector<std::pair<std::string, Table>>& tables) {
    if (format_ == "json") {
      json doc = summary;
      for (const auto& [name, t] : tables) doc[name.empty() ? "rows" : name] = t.to_json();
      write(base + ".json", doc.dump(2) + "\n");
      return;
    }
    bool main_table = false;
    for (const auto& [name, t] : tables) {
      main_table = main_table || name.empty();
      write(name.empty() ? base + ".csv" : base + "_" + name + ".csv", t.to_csv());
    }
    Table kv{{"key", "value"}, {}};
    for (const auto& [k, v] : summary.items()) kv.rows.push_back({k, v});
    write(main_table ? base + "_summary.csv" : base + ".csv", kv.to_csv());
  }

 private:
  fs::path dir_;
  std::string format_;
  std::vector<std::string> written_;
};

// ---------------------------------------------------------------------------
// Machines.

struct NamedMachine {
  std::string label;
  MachineSpec spec;
};

std::vector<NamedMachine> resolve_machines(const std::string& ref) {
  std::vector<NamedMachine> out;
  if (ref == "zoo:*") {
    for (const auto& e : zoo::entries()) out.push_back({e.name, zoo::load(e.name)});
  } else if (ref.rfind("zoo:", 0) == 0) {
    const std::string name = ref.substr(4);
    zoo::entry(name);
    out.push_back({name, zoo::load(name)});
  } else {
    if (!fs::exists(ref)) throw ParseError("machine file not found: " + ref);
    MachineSpec m = MachineSpec::load(ref);
    out.push_back({m.name(), std::move(m)});
  }
  return out;
}

json report_json(const experiments::Report& r) {
  json j;
  j["criterion"] = r.criterion;
  j["title"] = r.title;
  j["pass"] = r.pass();
  j["checks"] = r.checks;
  j["violations"] = r.violations;
  if (!r.worst_label.empty()) {
    j["worst_label"] = r.worst_label;
    j["worst"] = r.worst;
  }
  j["note"] = r.note;
  return j;
}

/// Writes the report and returns the exit status it implies.
int emit_report(Output& out, const experiments::Report& r) {
  out.emit("report_criterion_" + std::to_string(r.criterion), report_json(r), {});
  std::cout << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.criterion << ": " << r.title << "\n";
  return r.pass() ? kExitOk : kExitOther;
}

// ---------------------------------------------------------------------------
// Commands.

struct Globals {
  std::string output_dir = "omegaphase_out";
  std::string format = "json";
  unsigned threads = 0;
};

struct OmegaOpts {
  std::string machine = "zoo:two_words";
  std::uint64_t stage = 100;
  std::size_t list_limit = 256;
  std::string experiment = "none";
};

int run_omega(const OmegaOpts& o, const Globals&, Output& out) {
  if (o.experiment == "monotone") return emit_report(out, experiments::omega_limit());
  for (const auto& [label, spec] : resolve_machines(o.machine)) {
    const OmegaApproximation a = omega_approx(spec, o.stage, o.list_limit);
    json s;
    s["machine"] = label;
    s["stage"] = a.stage;
    s["omega"] = a.value.to_fraction_string();
    s["omega_binary"] = a.value.to_binary_string();
    s["omega_decimal"] = a.value.to_double();
    s["halting_input_count"] = a.halting_inputs.size();
    s["halting_inputs_truncated"] = a.halting_inputs_truncated;
    Table t{{"index", "input"}, {}};
    for (const auto& w : a.halting_inputs) t.rows.push_back({input_index(w), w.to_string()});
    out.emit("omega_" + label, s, {{"halting_inputs", t}});
  }
  return kExitOk;
}

struct WitnessOpts {
  std::string machine = "zoo:two_words";
  std::string phi = "1/2";
  std::string procedure = "w";
  std::uint64_t max_stage = 1 << 20;
  std::uint64_t bits = 8;
  std::string experiment = "none";
};

int run_witness(const WitnessOpts& o, const Globals& g, Output& out) {
  if (o.experiment == "zoo") {
    experiments::ZooParams p;
    p.threads = g.threads;
    return emit_report(out, experiments::witness_and_sweep(p));
  }
  const Dyadic phi = Dyadic::parse(o.phi);
  for (const auto& [label, spec] : resolve_machines(o.machine)) {
    json s;
    s["machine"] = label;
    s["procedure"] = o.procedure;
    s["phi"] = phi.to_fraction_string();
    if (o.procedure == "w") {
      const WitnessResult w = witness_w(spec, phi, o.max_stage);
      s["max_stage"] = o.max_stage;
      s["outcome"] = w.halted_at ? "halts" : "budget_exceeded";
      s["halted_at"] = w.halted_at ? json(*w.halted_at) : json(nullptr);
    } else {
      const OmegaTrace trace(spec, o.bits);
      s["bits"] = o.bits;
      s["omega_truncated"] = truncate(trace.value_at(o.bits), o.bits).to_fraction_string();
      s["outcome"] = to_string(witness_wprime(trace, phi, o.bits));
    }
    out.emit("witness_" + label, s, {});
  }
  return kExitOk;
}

struct QpeOpts {
  std::string phi = "21/2^6";
  int n = 10;
  int m = 6;
  std::string experiment = "none";
};

int run_qpe(const QpeOpts& o, const Globals& g, Output& out) {
  if (o.experiment == "tail" || o.experiment == "rounded") {
    experiments::QpeGridParams p;
    p.threads = g.threads;
    return emit_report(out, o.experiment == "tail" ? experiments::qpe_tail(p) : experiments::qpe_rounded(p));
  }
  if (o.experiment == "rounding-lemma") {
    experiments::RoundingParams p;
    p.threads = g.threads;
    return emit_report(out, experiments::rounding_lemma(p));
  }
  const Dyadic phi = Dyadic::parse(o.phi);
  if (phi.sign() < 0 || phi >= Dyadic(1)) throw ConstraintError("phi must lie in [0, 1)");
  if (o.m < 1 || o.m >= o.n) throw ConstraintError("need 1 <= m < n");
  const PhaseDistribution d = qpe_distribution(phi, o.n);
  json s;
  s["phi"] = phi.to_fraction_string();
  s["n"] = o.n;
  s["m"] = o.m;
  const double bound = std::ldexp(1.0, o.m - o.n);
  s["tail_probability"] = tail_probability(d, o.m);
  s["tail_bound"] = bound;
  s["rounded_success_probability"] = rounded_success_probability(d, o.m);
  s["rounded_success_bound"] = 1.0 - bound;
  json members = json::array();
  for (const auto& t : interval_im(phi, static_cast<std::uint64_t>(o.m))) members.push_back(t.to_fraction_string());
  s["interval_members"] = members;
  Table t{{"z", "estimate", "probability"}, {}};
  for (std::uint64_t z = 0; z < d.probabilities.size(); ++z) {
    t.rows.push_back({z, Dyadic(BigInt(z), static_cast<std::uint64_t>(o.n)).to_fraction_string(), d.probabilities[z]});
  }
  out.emit("qpe", s, {{"distribution", t}});
  return kExitOk;
}

struct ClockOpts {
  int T = 3;
  double mu = 0.5;
  int case_tag = 5;
  std::string method = "dense";
  std::string experiment = "none";
};

int run_clock(const ClockOpts& o, const Globals& g, Output& out) {
  if (o.experiment != "none") {
    experiments::ImpurityGridParams grid;
    grid.threads = g.threads;
    if (o.experiment == "closed-forms") return emit_report(out, experiments::closed_forms());
    if (o.experiment == "impurity") return emit_report(out, experiments::impurity_walk(grid));
    if (o.experiment == "gap-law") return emit_report(out, experiments::gap_law_band(grid));
    return emit_report(out, experiments::jordan_reconstruction());
  }
  if (o.case_tag < 1 || o.case_tag > 5) throw ConstraintError("case must lie in 1..5");
  if (o.case_tag == 5 && !(o.mu > 0 && o.mu < 1)) throw ConstraintError("mu must lie in (0, 1)");
  json s;
  s["T"] = o.T;
  s["case"] = o.case_tag;
  s["method"] = o.method;
  const bool five = o.case_tag == 5;
  if (five) s["mu"] = o.mu;
  const std::optional<double> mu = five ? std::optional<double>(o.mu) : std::nullopt;
  if (o.method == "closed-form" || o.method == "root-solve") {
    if (o.method == "root-solve" && !five) throw ConstraintError("root-solve applies to case 5 only");
    s["lambda0"] = case_eigenvalue(o.case_tag, o.T, mu);
  } else {
    const SpectralMethod m = o.method == "dense" ? SpectralMethod::Dense : SpectralMethod::Iterative;
    const SparseCMatrix h = five ? build_hamiltonian(canonical_case5_spec(o.T, o.mu))
                                 : SparseCMatrix(block_hamiltonian(o.case_tag, o.T).cast<Complex>().sparseView());
    const SpectralReport r = ground_energy(h, m);
    s["lambda0"] = r.lambda0;
    s["lambda1"] = r.lambda1;
    s["residual"] = r.residual;
    s["closed_form"] = case_eigenvalue(o.case_tag, o.T, mu);
  }
  std::vector<std::pair<std::string, Table>> tables;
  if (five) {
    const Case5Roots roots = root_solve_case5(o.T, o.mu);
    const double eps = compute_epsilon(canonical_case5_spec(o.T, o.mu));
    s["epsilon"] = eps;
    s["k0"] = roots.k0;
    s["root_count_minus"] = roots.roots_minus.size();
    s["root_count_plus"] = roots.roots_plus.size();
    s["gap_law_ratio"] = s["lambda0"].get<double>() * o.T * o.T / (1 - eps);
    Table t{{"factor", "k"}, {}};
    for (double k : roots.roots_minus) t.rows.push_back({"minus", k});
    for (double k : roots.roots_plus) t.rows.push_back({"plus", k});
    tables.push_back({"roots", t});
  }
  out.emit("clock", s, tables);
  return kExitOk;
}

struct SweepOpts {
  std::string machine = "zoo:two_words";
  std::string grid = "auto";
  int grid_bits = 6;
  std::uint64_t budget = 0;
  std::uint64_t xi = 2;
  double c1 = 3.5;
  double c2 = 1.0;
  int poly_degree = 2;
  double marker_scale = 1.0;
  std::uint64_t s_prime = 0;
  std::uint64_t s_max = 0;
  std::string experiment = "none";
};

int run_sweep(const SweepOpts& o, const Globals& g, Output& out) {
  if (o.experiment == "zoo") {
    experiments::ZooParams p;
    p.threads = g.threads;
    return emit_report(out, experiments::witness_and_sweep(p));
  }
  if (o.experiment == "separation") return emit_report(out, experiments::schedule_and_separation());
  SquareEnergyModel model;
  model.xi = o.xi;
  model.c1 = o.c1;
  model.c2 = o.c2;
  model.poly_degree = o.poly_degree;
  model.marker_scale = o.marker_scale;
  model.s_max_checked = o.s_max;
  if (o.s_prime) model.s_prime = o.s_prime;
  model = calibrated(model);
  const std::uint64_t budget = o.budget ? o.budget : *model.s_prime + 4096;

  std::vector<Dyadic> grid;
  if (o.grid == "auto") {
    if (o.grid_bits < 0 || o.grid_bits > 20) throw ConstraintError("grid-bits must lie in [0, 20]");
    for (std::uint64_t j = 1; j <= (std::uint64_t{1} << o.grid_bits); ++j) {
      grid.emplace_back(BigInt(j), static_cast<std::uint64_t>(o.grid_bits));
    }
  } else {
    for (const auto& t : split_list(o.grid)) grid.push_back(Dyadic::parse(t));
  }

  for (const auto& [label, spec] : resolve_machines(o.machine)) {
    const auto results = sweep(grid, spec, budget, model, g.threads);
    json s;
    s["machine"] = label;
    s["budget"] = budget;
    s["s_prime"] = *model.s_prime;
    s["grid_size"] = grid.size();
    std::size_t evidence = 0;
    Table t{{"phi", "classification", "witness_scale", "first_negative_s", "energy_lower_bound", "energy_upper_bound"},
            {}};
    std::string cls = "# phi classification (1 = gapless_evidence)\n";
    std::string lower = "# s energy_lower_bound\n", upper = "# s energy_upper_bound\n";
    for (const auto& r : results) {
      const bool ev = r.classification == Classification::GaplessEvidence;
      evidence += ev;
      t.rows.push_back({r.phi.to_fraction_string(), to_string(r.classification),
                        r.witness_scale ? json(*r.witness_scale) : json(nullptr),
                        r.first_negative_s ? json(*r.first_negative_s) : json(nullptr), r.energy.lower.to_string(),
                        r.energy.upper.to_string()});
      cls += fmt17(r.phi.to_double()) + " " + (ev ? "1" : "0") + "\n";
      auto trace = r.energy_trace;
      std::stable_sort(trace.begin(), trace.end(), [](const auto& a, const auto& b) { return a.s < b.s; });
      lower += "\n# phi = " + r.phi.to_fraction_string() + "\n";
      upper += "\n# phi = " + r.phi.to_fraction_string() + "\n";
      for (const auto& pr : trace) {
        lower += std::to_string(pr.s) + " " + pr.energy.lower.to_string() + "\n";
        upper += std::to_string(pr.s) + " " + pr.energy.upper.to_string() + "\n";
      }
    }
    s["gapless_evidence_count"] = evidence;
    out.emit("sweep_" + label, s, {{"", t}});
    out.write("sweep_" + label + "_classification.dat", cls);
    out.write("sweep_" + label + "_energy_lower.dat", lower);
    out.write("sweep_" + label + "_energy_upper.dat", upper);
  }
  return kExitOk;
}

struct SpectrumOpts {
  std::string model = "xy";
  int L = 8;
  std::size_t levels = 64;
  double beta = 1.0;
  std::string uu = "0,0.25,3";
  std::string mixed = "";
  std::uint64_t lattice = 4;
  double trivial_gap = 1.0;
  std::size_t trivial_levels = 8;
  std::string experiment = "none";
};

int run_spectrum(const SpectrumOpts& o, const Globals&, Output& out) {
  if (o.experiment == "xy") return emit_report(out, experiments::xy_oracle());
  if (o.experiment == "composition") return emit_report(out, experiments::composition_oracle());
  const XySpectrum xy = xy_chain_spectrum(o.L, std::max<std::size_t>(o.levels, 2));
  json s;
  s["model"] = o.model;
  s["L"] = o.L;
  if (o.model == "xy") {
    s["ground_energy"] = xy.ground_energy;
    s["gap"] = xy.gap;
    s["complete"] = xy.complete;
    Table t{{"index", "energy"}, {}};
    for (std::size_t i = 0; i < xy.energies.size(); ++i) t.rows.push_back({i, xy.energies[i]});
    out.emit("spectrum_xy", s, {{"levels", t}});
    return kExitOk;
  }
  if (o.model != "composed") throw ConstraintError("model must be xy or composed");
  std::vector<double> dense;
  for (double e : xy.energies) dense.push_back(e - xy.energies.front());
  const std::vector<double> uu = parse_doubles(o.uu);
  const double ground = trivial_example_energy(o.lattice, o.lattice * o.lattice);
  const auto c = compose_total_spectrum(uu, dense, trivial_levels(ground, o.trivial_gap, o.trivial_levels), o.beta,
                                        parse_doubles(o.mixed));
  s["beta"] = o.beta;
  s["lattice"] = o.lattice;
  s["ground_energy"] = c.ground_energy;
  s["ground_origin"] = to_string(c.ground_origin);
  s["gap"] = c.gap;
  if (c.ground_origin == Origin::Mixed) {
    s["order_parameter"] = nullptr;
  } else {
    s["order_parameter"] =
        order_parameter(c.ground_origin == Origin::Trivial ? SectorLabel::Trivial : SectorLabel::Gapless);
  }
  const double min_uu = uu.empty() ? 0 : *std::min_element(uu.begin(), uu.end());
  const auto star = uu.empty() ? std::nullopt : crossover_beta(min_uu, dense.front(), ground);
  s["crossover_beta"] = star ? json(*star) : json(nullptr);
  Table t{{"index", "energy", "origin"}, {}};
  for (std::size_t i = 0; i < c.levels.size() && i < o.levels; ++i) {
    t.rows.push_back({i, c.levels[i].energy, to_string(c.levels[i].origin)});
  }
  out.emit("spectrum_composed", s, {{"levels", t}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Config files.

/// `key = value` lines; '#' starts a comment line. Underscores in keys
/// stand for hyphens in flag names.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto l = s.find_first_not_of(" \t\r");
      const auto r = s.find_last_not_of(" \t\r");
      return l == std::string::npos ? std::string() : s.substr(l, r - l + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
    if (kv.count(key)) throw ParseError(path + ":" + std::to_string(lineno) + ": duplicate key " + key);
    kv[key] = trim(line.substr(eq + 1));
  }
  if (!kv.count("command")) throw ParseError(path + ": missing 'command'");
  return kv;
}

const std::vector<std::string>& global_keys() {
  static const std::vector<std::string> keys{"output-dir", "format", "threads"};
  return keys;
}

/// The argument vector equivalent to a config file plus global overrides.
std::vector<std::string> config_to_args(std::map<std::string, std::string> kv,
                                        const std::map<std::string, std::string>& overrides) {
  for (const auto& [k, v] : overrides) kv[k] = v;
  std::vector<std::string> args{"omegaphase"};
  for (const auto& k : global_keys()) {
    if (auto it = kv.find(k); it != kv.end()) {
      args.push_back("--" + k);
      args.push_back(it->second);
      kv.erase(it);
    }
  }
  args.push_back(kv.at("command"));
  kv.erase("command");
  for (const auto& [k, v] : kv) {
    args.push_back("--" + k);
    args.push_back(v);
  }
  return args;
}

// ---------------------------------------------------------------------------

std::string option_value(const CLI::Option* opt) {
  if (opt->count() == 0) return opt->get_default_str();
  std::string v;
  for (const auto& r : opt->results()) v += (v.empty() ? "" : ",") + r;
  return v;
}

json resolved_config(const CLI::App& app, const CLI::App& sub) {
  json cfg;
  cfg["command"] = sub.get_name();
  auto add = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      if (opt->get_lnames().empty()) continue;
      std::string key = opt->get_lnames().front();
      if (key == "help" || key == "config") continue;
      std::replace(key.begin(), key.end(), '-', '_');
      cfg[key] = option_value(opt);
    }
  };
  add(app);
  add(sub);
  return cfg;
}

int run(std::vector<std::string> args) {
  // --config: only the global options may accompany it.
  if (std::find(args.begin() + 1, args.end(), "--config") != args.end()) {
    CLI::App pre{"omegaphase"};
    std::string path;
    std::map<std::string, std::string> overrides;
    pre.add_option("--config", path, "Run configuration file")->required();
    std::string od, fmt, th;
    auto* o1 = pre.add_option("--output-dir", od);
    auto* o2 = pre.add_option("--format", fmt);
    auto* o3 = pre.add_option("--threads", th);
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
      pre.parse(rev);
    } catch (const CLI::ParseError& e) {
      pre.exit(e);
      return kExitParse;
    }
    if (o1->count()) overrides["output-dir"] = od;
    if (o2->count()) overrides["format"] = fmt;
    if (o3->count()) overrides["threads"] = th;
    args = config_to_args(read_config(path), overrides);
  }

  CLI::App app{"Desk-scale experiments on uncomputable spectral-gap phase diagrams"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  Globals g;
  app.add_option("--output-dir", g.output_dir, "Directory for artifacts");
  app.add_option("--format", g.format, "Data format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores");
  app.add_option("--config", "Run configuration file (key = value lines)");

  auto experiment_opt = [](CLI::App* sub, std::string& target, std::vector<std::string> choices) {
    choices.insert(choices.begin(), "none");
    sub->add_option("--experiment", target, "Acceptance experiment to run instead")->check(CLI::IsMember(choices));
  };

  OmegaOpts omega;
  auto* s_omega = app.add_subcommand("omega", "Lower approximation Omega_s");
  s_omega->add_option("--machine", omega.machine, "Machine file, zoo:NAME or zoo:*");
  s_omega->add_option("--stage", omega.stage, "Stage s");
  s_omega->add_option("--list-limit", omega.list_limit, "Halting inputs listed at most");
  experiment_opt(s_omega, omega.experiment, {"monotone"});

  WitnessOpts witness;
  auto* s_witness = app.add_subcommand("witness", "Witness procedures W and W'");
  s_witness->add_option("--machine", witness.machine, "Machine file, zoo:NAME or zoo:*");
  s_witness->add_option("--phi", witness.phi, "Dyadic phi (W) or estimate (W')");
  s_witness->add_option("--procedure", witness.procedure, "w or wprime")->check(CLI::IsMember({"w", "wprime"}));
  s_witness->add_option("--max-stage", witness.max_stage, "Stage budget for W");
  s_witness->add_option("--bits", witness.bits, "Estimate length m for W'");
  experiment_opt(s_witness, witness.experiment, {"zoo"});

  QpeOpts qpe;
  auto* s_qpe = app.add_subcommand("qpe", "Phase estimation output distribution");
  s_qpe->add_option("--phi", qpe.phi, "Dyadic phase in [0, 1)");
  s_qpe->add_option("--n", qpe.n, "Precision qubits")->check(CLI::Range(1, 20));
  s_qpe->add_option("--m", qpe.m, "Retained bits");
  experiment_opt(s_qpe, qpe.experiment, {"tail", "rounded", "rounding-lemma"});

  ClockOpts clk;
  auto* s_clock = app.add_subcommand("clock", "Clock Hamiltonian blocks and ground energy");
  s_clock->add_option("--T", clk.T, "Computation length")->check(CLI::Range(1, 1 << 20));
  s_clock->add_option("--mu", clk.mu, "Case-5 overlap parameter in (0, 1)");
  s_clock->add_option("--case", clk.case_tag, "Block case 1..5");
  s_clock->add_option("--method", clk.method, "Spectral method")
      ->check(CLI::IsMember({"dense", "iterative", "closed-form", "root-solve"}));
  experiment_opt(s_clock, clk.experiment, {"closed-forms", "impurity", "gap-law", "jordan"});

  SweepOpts sw;
  auto* s_sweep = app.add_subcommand("sweep", "Phase-diagram sweep over phi");
  s_sweep->add_option("--machine", sw.machine, "Machine file, zoo:NAME or zoo:*");
  s_sweep->add_option("--grid", sw.grid, "Comma-separated dyadics, or auto for j/2^grid-bits");
  s_sweep->add_option("--grid-bits", sw.grid_bits, "Resolution of the auto grid");
  s_sweep->add_option("--budget", sw.budget, "Largest side probed, 0 = s' + 4096");
  s_sweep->add_option("--xi", sw.xi, "Per-step duration factor");
  s_sweep->add_option("--c1", sw.c1, "Error-budget constant c1");
  s_sweep->add_option("--c2", sw.c2, "Error-budget constant c2");
  s_sweep->add_option("--poly-degree", sw.poly_degree, "Degree of the polynomial factor of T");
  s_sweep->add_option("--marker-scale", sw.marker_scale, "Marker interval scale");
  s_sweep->add_option("--s-prime", sw.s_prime, "Marker onset, 0 = computed");
  s_sweep->add_option("--s-max", sw.s_max, "Largest side checked, 0 = automatic");
  experiment_opt(s_sweep, sw.experiment, {"zoo", "separation"});

  SpectrumOpts sp;
  auto* s_spec = app.add_subcommand("spectrum", "XY chain and composed spectra");
  s_spec->add_option("--model", sp.model, "xy or composed")->check(CLI::IsMember({"xy", "composed"}));
  s_spec->add_option("--L", sp.L, "XY chain length")->check(CLI::Range(2, 4096));
  s_spec->add_option("--levels", sp.levels, "Levels listed");
  s_spec->add_option("--beta", sp.beta, "Coupling of the uu x dense sector");
  s_spec->add_option("--uu", sp.uu, "Comma-separated uu energies");
  s_spec->add_option("--mixed", sp.mixed, "Comma-separated mixed-sector energies");
  s_spec->add_option("--lattice", sp.lattice, "Side of the trivial lattice");
  s_spec->add_option("--trivial-gap", sp.trivial_gap, "Gap of the trivial sector");
  s_spec->add_option("--trivial-levels", sp.trivial_levels, "Trivial levels kept");
  experiment_opt(s_spec, sp.experiment, {"xy", "composition"});

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  const CLI::App* sub = app.get_subcommands().front();
  Output out(g.output_dir, g.format);
  int status = kExitOk;
  if (sub == s_omega) status = run_omega(omega, g, out);
  else if (sub == s_witness) status = run_witness(witness, g, out);
  else if (sub == s_qpe) status = run_qpe(qpe, g, out);
  else if (sub == s_clock) status = run_clock(clk, g, out);
  else if (sub == s_sweep) status = run_sweep(sw, g, out);
  else status = run_spectrum(sp, g, out);

  json manifest;
  manifest["config"] = resolved_config(app, *sub);
  std::vector<std::string> files = out.written();
  std::sort(files.begin(), files.end());
  manifest["outputs"] = files;
  manifest["exit_status"] = status;
  out.write("manifest.json", manifest.dump(2) + "\n");
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(std::vector<std::string>(argv, argv + argc));
  } catch (const omegaphase::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const omegaphase::ConstraintError& e) {
    std::cerr << "constraint violated: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
