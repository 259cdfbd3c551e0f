#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "isl/errors.hpp"
#include "isl/krein.hpp"

namespace isl::cli {
namespace {

const std::vector<std::string> kCommands{"forward", "invert-marchenko", "invert-gl", "invert-krein", "resonances",
                                         "phaseshifts", "born-demo", "ambiguity", "roundtrip"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto t = trim(v);
  const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
  if (r.ec != std::errc{} || r.ptr != t.data() + t.size() || !std::isfinite(out)) {
    throw ValidationError("config: " + key + " = '" + v + "' is not a finite number");
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto t = trim(v);
  const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
  if (r.ec != std::errc{} || r.ptr != t.data() + t.size()) {
    throw ValidationError("config: " + key + " = '" + v + "' is not an integer");
  }
  return out;
}

std::vector<std::string> split(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split(v)) out.push_back(parse_double(key, s));
  return out;
}

// Potential values at the reconstruction nodes on [0, 0.9a].
struct ErrorNorms {
  double sup = 0.0, l2 = 0.0;
};

double compare_limit(const RadialPotential& q) { return 0.9 * q.support_radius(); }

ErrorNorms error_norms(const RadialPotential& rec, const RadialPotential& q) {
  const double lim = compare_limit(q);
  const auto& g = rec.grid();
  ErrorNorms e;
  double prev = 0.0;
  for (std::size_t i = 0; i < g.size() && g[i] <= lim + 1e-9 * g.step(); ++i) {
    const double d = std::abs(rec.samples()[i] - q.value(g[i]));
    e.sup = std::max(e.sup, d);
    if (i > 0) e.l2 += 0.5 * g.step() * (prev * prev + d * d);
    prev = d;
  }
  e.l2 = std::sqrt(e.l2);
  return e;
}

double disagreement(const RadialPotential& a, const RadialPotential& b, double lim) {
  double d = 0.0;
  const auto& g = a.grid();
  for (std::size_t i = 0; i < g.size() && g[i] <= lim + 1e-9 * g.step(); ++i) {
    d = std::max(d, std::abs(a.samples()[i] - b.value(g[i])));
  }
  return d;
}

json norms_json(const ErrorNorms& e) { return {{"sup", e.sup}, {"l2", e.l2}}; }

struct Context {
  const ExperimentConfig& cfg;
  json results = json::object();
  std::vector<std::pair<std::string, std::string>> files;  // name, contents

  RadialPotential potential() const {
    if (cfg.potential.empty()) throw ValidationError(cfg.command + " needs a potential file (key 'potential')");
    return load_potential(cfg.potential);
  }
  UniformGrid x_grid() const { return UniformGrid::covering(0.0, cfg.x_max, cfg.x_step); }
  UniformGrid k_grid() const {
    const auto n = static_cast<std::size_t>(std::llround(cfg.k_max / cfg.k_step));
    return UniformGrid(cfg.k_step, cfg.k_step, n);
  }
  double lambda_max() const { return cfg.lambda_max > 0.0 ? cfg.lambda_max : cfg.k_max * cfg.k_max; }
  void add(std::string name, std::string text) { files.emplace_back(std::move(name), std::move(text)); }
};

json bound_states_json(const RadialPotential& q, const HalfLineScatteringData& d) {
  json out = json::array();
  for (const auto& b : d.bound_states) {
    const NormingConstant n = norming_constant(q, b.k);
    out.push_back({{"k", b.k}, {"s", n.s}, {"s_norm", n.s_norm}, {"relative_gap", n.relative_gap}});
  }
  return out;
}

void cmd_forward(Context& c) {
  const RadialPotential q = c.potential();
  const HalfLineScatteringData d = forward_data(q, c.k_grid());
  c.results["J"] = d.J();
  c.results["bound_states"] = bound_states_json(q, d);
  c.results["unitarity_defect"] = d.unitarity_defect();
  c.results["index"] = winding_number(d.symmetric_samples());
  c.results["index_expected"] = -2 * d.J();
  c.add("scattering.json", dump_json(to_json(d)));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < d.S.size(); ++i) {
    rows.push_back({d.k_grid[i], d.S[i].real(), d.S[i].imag(), d.f0_values[i].real(), d.f0_values[i].imag()});
  }
  c.add("jost.csv", to_csv({"k", "S_re", "S_im", "f_re", "f_im"}, rows));
}

// Scattering data from the data file, or from a forward solve of the potential.
HalfLineScatteringData load_data(const Context& c) {
  if (!c.cfg.data.empty()) return scattering_from_json(json::parse(read_text(c.cfg.data)));
  return forward_data(c.potential(), c.k_grid());
}

RadialPotential run_marchenko(Context& c, const HalfLineScatteringData& d) {
  const UniformGrid xg = c.x_grid();
  const CharacterizationReport ch = characterize(d, UniformGrid(0.0, xg.step(), 2 * (xg.size() - 1) + 1));
  c.add("characterization.json", dump_json(to_json(ch)));
  if (!ch.passed) {
    std::string why;
    for (const auto& f : ch.failures) why += (why.empty() ? "" : "; ") + f;
    throw ValidationError("scattering data fail the characterization conditions: " + why);
  }
  const MarchenkoResult r = invert_marchenko(d, xg);
  c.results["marchenko"] = {{"t_cut", r.t_cut},
                            {"max_condition", r.max_condition},
                            {"max_residual", r.max_residual},
                            {"A0_residual", r.A0_residual}};
  c.add("kernel_marchenko.csv", kernel_csv(r.kernel));
  c.add("q_marchenko.csv", potential_csv(r.q));
  return r.q;
}

RadialPotential run_gl(Context& c, const RadialPotential& q, const HalfLineScatteringData& d) {
  const SpectralMeasure m = spectral_from_data(q, d, c.lambda_max(), c.cfg.lambda_step);
  const GLResult r = invert_gl(m, c.x_grid(), c.cfg.k_step);
  c.results["gl"] = {{"max_condition", r.max_condition},
                     {"max_residual", r.max_residual},
                     {"min_eigenvalue", r.min_eigenvalue},
                     {"max_asymmetry", r.max_asymmetry}};
  c.add("measure.json", dump_json(to_json(m)));
  c.add("kernel_gl.csv", kernel_csv(r.kernel));
  c.add("q_gl.csv", potential_csv(r.q));
  return r.q;
}

RadialPotential run_krein(Context& c, const HalfLineScatteringData& d) {
  const KreinWorkspace w = invert_krein(d, c.x_grid());
  c.results["krein"] = {{"symmetry_ok", w.conditions.symmetry_ok},
                        {"index_zero", w.conditions.index_zero},
                        {"F_norms_ok", w.conditions.F_norms_ok},
                        {"H_asymmetry", w.H.asymmetry},
                        {"f_reconstruction_residual", w.f_plus.reconstruction_residual},
                        {"f_phase_consistency", w.f_plus.phase_consistency},
                        {"max_condition", w.max_condition},
                        {"max_residual", w.max_residual}};
  c.add("H.csv", function_csv(w.H.H, "t", "H"));
  c.add("q_krein.csv", potential_csv(w.q));
  return w.q;
}

void cmd_invert(Context& c, const std::string& method) {
  const HalfLineScatteringData d = method == "gl" ? forward_data(c.potential(), c.k_grid()) : load_data(c);
  RadialPotential rec = method == "marchenko" ? run_marchenko(c, d)
                        : method == "gl"      ? run_gl(c, c.potential(), d)
                                              : run_krein(c, d);
  if (!c.cfg.potential.empty()) {
    const RadialPotential q = c.potential();
    c.results["error"] = norms_json(error_norms(rec, q));
    c.results["compare_limit"] = compare_limit(q);
  }
}

void cmd_roundtrip(Context& c) {
  const RadialPotential q = c.potential();
  const HalfLineScatteringData d = forward_data(q, c.k_grid());
  c.results["J"] = d.J();
  std::vector<std::pair<std::string, RadialPotential>> recs;
  json notes = json::array();
  for (const auto& m : c.cfg.methods) {
    if (m == "krein" && d.J() > 0) {
      notes.push_back("krein skipped: the data have " + std::to_string(d.J()) +
                      " bound state(s) and Krein's method needs none");
      continue;
    }
    if (m == "marchenko") recs.emplace_back(m, run_marchenko(c, d));
    if (m == "gl") recs.emplace_back(m, run_gl(c, q, d));
    if (m == "krein") recs.emplace_back(m, run_krein(c, d));
  }
  const double lim = compare_limit(q);
  json errors = json::object();
  for (const auto& [m, r] : recs) errors[m] = norms_json(error_norms(r, q));
  json pairs = json::array();
  for (std::size_t i = 0; i < recs.size(); ++i) {
    for (std::size_t j = i + 1; j < recs.size(); ++j) {
      pairs.push_back({{"a", recs[i].first}, {"b", recs[j].first}, {"sup", disagreement(recs[i].second, recs[j].second, lim)}});
    }
  }
  c.results["compare_limit"] = lim;
  c.results["errors"] = errors;
  c.results["disagreements"] = pairs;
  c.results["notes"] = notes;
  std::vector<std::string> header{"x", "q"};
  for (const auto& r : recs) header.push_back(r.first);
  std::vector<std::vector<double>> rows;
  const UniformGrid xg = c.x_grid();
  for (std::size_t i = 0; i < xg.size(); ++i) {
    std::vector<double> row{xg[i], q.value(xg[i])};
    for (const auto& r : recs) row.push_back(r.second.samples()[i]);
    rows.push_back(std::move(row));
  }
  c.add("roundtrip.csv", to_csv(header, rows));
}

void cmd_resonances(Context& c) {
  const RadialPotential q = c.potential();
  ResonanceOptions opt;
  opt.tol = c.cfg.zero_tol;
  const ComplexBox box{c.cfg.box_re_min, c.cfg.box_re_max, c.cfg.box_im_min, c.cfg.box_im_max};
  const ResonanceSet set = find_resonances(q, box, opt);
  c.results["resonances"] = to_json(set);
  if (set.zeros.size() >= 2) {
    const FreeRegionFit f = fit_free_region(set);
    c.results["free_region"] = {{"b", f.b},
                                {"c", f.c},
                                {"holds", f.check.holds},
                                {"margin", f.check.margin},
                                {"c_envelope", f.c_envelope}};
  } else {
    c.results["free_region"] = nullptr;
  }
  c.results["imaginary_axis"] = imaginary_axis_census(q, c.cfg.census_depth);
  c.add("resonances.csv", resonance_csv(set));
}

void cmd_phaseshifts(Context& c) {
  const RadialPotential q = c.potential();
  const PhaseShiftSet ps = phase_shifts(q, c.cfg.energy_k, c.cfg.L);
  const OpticalTheorem ot = optical_theorem(ps);
  c.results["phase_shifts"] = to_json(ps);
  c.results["extrapolated_radius"] = ps.extrapolated_radius();
  c.results["optical_theorem"] = {{"lhs", ot.lhs}, {"rhs", ot.rhs}, {"residual", ot.residual}};
  std::vector<std::vector<double>> rows;
  for (std::size_t l = 0; l < ps.delta.size(); ++l) {
    rows.push_back({static_cast<double>(l), ps.delta[l], ps.support_radius_estimates[l]});
  }
  c.add("phaseshifts.csv", to_csv({"l", "delta", "a_l"}, rows));
}

void cmd_born(Context& c) {
  const RadialPotential q = born_bump(c.cfg.q_scale, 1.5, c.cfg.x_step);
  const UniformGrid xg = UniformGrid::covering(0.0, c.cfg.xi_max, c.cfg.xi_step);
  const SampledFunction samples = c.cfg.born_data == "exact" ? exact_backscatter_data(q, xg) : born_data(q, xg);
  std::vector<double> cutoffs = c.cfg.cutoffs;
  if (cutoffs.empty()) {
    for (int i = 1; 2.0 * i <= c.cfg.xi_max + 1e-9; ++i) cutoffs.push_back(2.0 * i);
  }
  const BornExperimentReport rep = born_sweep(q, c.cfg.q_scale, samples, cutoffs, c.cfg.noise, c.cfg.seed);
  c.results = to_json(rep);
  c.add("sweep.csv", sweep_csv(rep));
}

bool cmd_ambiguity(Context& c) {
  AmbiguitySearchOptions opt;
  opt.k = c.cfg.energy_k;
  opt.L = c.cfg.L;
  opt.target_phase_gap = c.cfg.target_gap;
  opt.min_potential_gap = c.cfg.min_gap;
  opt.budget = c.cfg.budget;
  opt.restarts = c.cfg.restarts;
  opt.seed = c.cfg.seed;
  const PiecewiseConstant q1{c.cfg.q1_breaks, c.cfg.q1_heights};
  const AmbiguitySearchResult r = search_ambiguous_pair(q1, opt);
  c.results["pair"] = to_json(r.pair);
  c.results["evaluations"] = r.evaluations;
  c.results["budget_exhausted"] = r.budget_exhausted;
  c.add("pair.json", dump_json(to_json(r.pair)));
  return !r.budget_exhausted;
}

}  // namespace

json ExperimentConfig::to_json() const {
  json j;
  j["command"] = command;
  j["potential"] = potential;
  j["data"] = data;
  j["out"] = out;
  j["seed"] = seed;
  j["x_max"] = x_max;
  j["x_step"] = x_step;
  j["k_max"] = k_max;
  j["k_step"] = k_step;
  j["lambda_max"] = lambda_max > 0.0 ? lambda_max : k_max * k_max;
  j["lambda_step"] = lambda_step;
  j["methods"] = methods;
  j["box_re_min"] = box_re_min;
  j["box_re_max"] = box_re_max;
  j["box_im_min"] = box_im_min;
  j["box_im_max"] = box_im_max;
  j["zero_tol"] = zero_tol;
  j["census_depth"] = census_depth;
  j["energy_k"] = energy_k;
  j["L"] = L;
  j["target_gap"] = target_gap;
  j["min_gap"] = min_gap;
  j["budget"] = budget;
  j["restarts"] = restarts;
  j["q1_breaks"] = q1_breaks;
  j["q1_heights"] = q1_heights;
  j["q_scale"] = q_scale;
  j["noise"] = noise;
  j["xi_max"] = xi_max;
  j["xi_step"] = xi_step;
  j["cutoffs"] = cutoffs;
  j["born_data"] = born_data;
  return j;
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  using Setter = std::function<void()>;
  const std::map<std::string, Setter> table{
      {"command", [&] { c.command = v; }},
      {"potential", [&] { c.potential = v; }},
      {"data", [&] { c.data = v; }},
      {"out", [&] { c.out = v; }},
      {"seed",
       [&] {
         const long long s = parse_int(key, v);
         if (s < 0) throw ValidationError("config: seed must be >= 0");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"x_max", [&] { c.x_max = parse_double(key, v); }},
      {"x_step", [&] { c.x_step = parse_double(key, v); }},
      {"k_max", [&] { c.k_max = parse_double(key, v); }},
      {"k_step", [&] { c.k_step = parse_double(key, v); }},
      {"lambda_max", [&] { c.lambda_max = parse_double(key, v); }},
      {"lambda_step", [&] { c.lambda_step = parse_double(key, v); }},
      {"methods", [&] { c.methods = split(v); }},
      {"box_re_min", [&] { c.box_re_min = parse_double(key, v); }},
      {"box_re_max", [&] { c.box_re_max = parse_double(key, v); }},
      {"box_im_min", [&] { c.box_im_min = parse_double(key, v); }},
      {"box_im_max", [&] { c.box_im_max = parse_double(key, v); }},
      {"zero_tol", [&] { c.zero_tol = parse_double(key, v); }},
      {"census_depth", [&] { c.census_depth = parse_double(key, v); }},
      {"energy_k", [&] { c.energy_k = parse_double(key, v); }},
      {"L", [&] { c.L = static_cast<int>(parse_int(key, v)); }},
      {"target_gap", [&] { c.target_gap = parse_double(key, v); }},
      {"min_gap", [&] { c.min_gap = parse_double(key, v); }},
      {"budget", [&] { c.budget = static_cast<int>(parse_int(key, v)); }},
      {"restarts", [&] { c.restarts = static_cast<int>(parse_int(key, v)); }},
      {"q1_breaks", [&] { c.q1_breaks = parse_list(key, v); }},
      {"q1_heights", [&] { c.q1_heights = parse_list(key, v); }},
      {"q_scale", [&] { c.q_scale = parse_double(key, v); }},
      {"noise", [&] { c.noise = parse_double(key, v); }},
      {"xi_max", [&] { c.xi_max = parse_double(key, v); }},
      {"xi_step", [&] { c.xi_step = parse_double(key, v); }},
      {"cutoffs", [&] { c.cutoffs = parse_list(key, v); }},
      {"born_data", [&] { c.born_data = v; }},
  };
  const auto it = table.find(key);
  if (it == table.end()) throw ValidationError("config: unknown key '" + key + "'");
  it->second();
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line " + std::to_string(n) + ": expected key = value");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void validate(const ExperimentConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw ValidationError("unknown command '" + c.command + "'");
  }
  const std::vector<std::pair<const char*, double>> positive{
      {"x_max", c.x_max},     {"x_step", c.x_step},     {"k_max", c.k_max},         {"k_step", c.k_step},
      {"lambda_step", c.lambda_step}, {"zero_tol", c.zero_tol}, {"census_depth", c.census_depth},
      {"energy_k", c.energy_k}, {"target_gap", c.target_gap}, {"min_gap", c.min_gap},
      {"xi_max", c.xi_max},   {"xi_step", c.xi_step}};
  for (const auto& [k, v] : positive) {
    if (!(v > 0.0)) throw ValidationError(std::string("config: ") + k + " must be positive");
  }
  if (c.lambda_max < 0.0) throw ValidationError("config: lambda_max must be positive (or 0 for k_max^2)");
  if (c.noise < 0.0) throw ValidationError("config: noise must be >= 0");
  if (c.x_step >= c.x_max || c.k_step >= c.k_max) throw ValidationError("config: step exceeds the interval");
  if (c.L < 0 || c.budget <= 0 || c.restarts <= 0) throw ValidationError("config: L, budget and restarts must be positive");
  for (const auto& m : c.methods) {
    if (m != "marchenko" && m != "gl" && m != "krein") throw ValidationError("config: unknown method '" + m + "'");
  }
  if (c.born_data != "born" && c.born_data != "exact") throw ValidationError("config: born_data is born or exact");
  for (double x : c.cutoffs) {
    if (!(x > 0.0) || x > c.xi_max) throw ValidationError("config: cutoffs must lie in (0, xi_max]");
  }
  const bool needs_potential = c.command != "born-demo" && c.command != "ambiguity" &&
                               !((c.command == "invert-marchenko" || c.command == "invert-krein") && !c.data.empty());
  if (needs_potential && c.potential.empty()) throw ValidationError(c.command + " needs key 'potential'");
}

int run(const ExperimentConfig& cfg, std::ostream& err) {
  try {
    validate(cfg);
    Context c{cfg, json::object(), {}};
    bool ok = true;
    const std::string& cmd = cfg.command;
    if (cmd == "forward") cmd_forward(c);
    if (cmd == "invert-marchenko") cmd_invert(c, "marchenko");
    if (cmd == "invert-gl") cmd_invert(c, "gl");
    if (cmd == "invert-krein") cmd_invert(c, "krein");
    if (cmd == "roundtrip") cmd_roundtrip(c);
    if (cmd == "resonances") cmd_resonances(c);
    if (cmd == "phaseshifts") cmd_phaseshifts(c);
    if (cmd == "born-demo") cmd_born(c);
    if (cmd == "ambiguity") ok = cmd_ambiguity(c);

    json report;
    report["command"] = cmd;
    report["config"] = cfg.to_json();
    report["results"] = c.results;
    write_text(cfg.out + "/report.json", dump_json(report));
    for (const auto& [name, text] : c.files) write_text(cfg.out + "/" + name, text);
    if (!ok) {
      err << "isl: BudgetExhausted: the search missed the target phase gap; best pair written\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "isl: validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "isl: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const json::exception& e) {
    err << "isl: validation error: malformed JSON: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "isl: error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "isl: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"isl: one-dimensional inverse scattering lab"};
  std::string command, config_path, out;
  std::optional<std::uint64_t> seed;
  std::optional<double> x_max, x_step, k_max, k_step;
  std::vector<std::string> sets;
  app.add_option("command", command, "forward | invert-marchenko | invert-gl | invert-krein | resonances | "
                                     "phaseshifts | born-demo | ambiguity | roundtrip")
      ->required();
  app.add_option("--config", config_path, "flat key = value file");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out, "output directory");
  app.add_option("--x-max", x_max);
  app.add_option("--x-step", x_step);
  app.add_option("--k-max", k_max);
  app.add_option("--k-step", k_step);
  app.add_option("--set", sets, "extra key=value override (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) apply_config_text(cfg, read_text(config_path));
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ValidationError("--set expects key=value");
      apply_setting(cfg, trim(s.substr(0, eq)), s.substr(eq + 1));
    }
    cfg.command = command;
    if (seed) cfg.seed = *seed;
    if (!out.empty()) cfg.out = out;
    if (x_max) cfg.x_max = *x_max;
    if (x_step) cfg.x_step = *x_step;
    if (k_max) cfg.k_max = *k_max;
    if (k_step) cfg.k_step = *k_step;
  } catch (const Error& e) {
    std::cerr << "isl: validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return run(cfg, std::cerr);
}

}  // namespace isl::cli
