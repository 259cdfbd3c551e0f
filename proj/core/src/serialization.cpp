#include "isl/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isl/errors.hpp"

namespace isl {
namespace {

void emit(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        emit(it.value(), depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(j[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        emit(j[i], depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::vector<double> reals(std::span<const cd> v, bool imag) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const cd z : v) out.push_back(imag ? z.imag() : z.real());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw FormatError("to_csv: row width differs from the header");
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error("failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json to_json(const HalfLineScatteringData& d) {
  json j;
  j["k_min"] = d.k_grid.start();
  j["k_step"] = d.k_grid.step();
  j["S_re"] = reals(d.S, false);
  j["S_im"] = reals(d.S, true);
  j["bound_states"] = json::array();
  for (const auto& b : d.bound_states) j["bound_states"].push_back({{"k", b.k}, {"s", b.s}});
  return j;
}

HalfLineScatteringData scattering_from_json(const json& j) {
  try {
    const double k_min = j.at("k_min").get<double>();
    const double k_step = j.at("k_step").get<double>();
    const auto re = j.at("S_re").get<std::vector<double>>();
    const auto im = j.at("S_im").get<std::vector<double>>();
    if (re.size() != im.size()) throw FormatError("scattering data: S_re and S_im differ in length");
    if (!(k_min > 0.0)) throw FormatError("scattering data: k_min must be positive");
    std::vector<cd> S(re.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
      if (!std::isfinite(re[i]) || !std::isfinite(im[i])) throw FormatError("scattering data: non-finite S");
      S[i] = {re[i], im[i]};
    }
    std::vector<BoundState> bs;
    for (const auto& b : j.at("bound_states")) bs.push_back({b.at("k").get<double>(), b.at("s").get<double>()});
    std::sort(bs.begin(), bs.end(), [](const BoundState& a, const BoundState& b) { return a.k > b.k; });
    return {UniformGrid(k_min, k_step, S.size()), std::move(S), std::move(bs), {}};
  } catch (const json::exception& e) {
    throw FormatError(std::string("scattering data: ") + e.what());
  }
}

json to_json(const CharacterizationReport& r) {
  return {{"index", r.index},
          {"index_expected", r.index_expected},
          {"symmetry_residual", r.symmetry_residual},
          {"F_sup_norm", r.F_sup_norm},
          {"F_L1_norm", r.F_L1_norm},
          {"xFprime_L1_norm", r.xFprime_L1_norm},
          {"passed", r.passed}};
}

json to_json(const SpectralMeasure& m) {
  json j;
  j["lambda_max"] = m.lambda_max();
  j["lambda_step"] = m.lambda_grid.step();
  j["w"] = m.w;
  j["atoms"] = json::array();
  for (const auto& a : m.atoms) j["atoms"].push_back({{"lambda", a.lambda}, {"c", a.c}});
  return j;
}

json to_json(const PiecewiseConstant& p) { return {{"breaks", p.breaks}, {"heights", p.heights}}; }

json to_json(const AmbiguityPair& p) {
  return {{"k", p.k},
          {"L", p.L},
          {"q1", to_json(p.q1)},
          {"q2", to_json(p.q2)},
          {"phase_gap", p.phase_gap},
          {"potential_gap", p.potential_gap}};
}

json to_json(const BornExperimentReport& r) {
  json rows = json::array();
  for (const auto& row : r.error_growth_table) {
    rows.push_back({{"delta", row.delta}, {"cutoff", row.cutoff}, {"error", row.error}});
  }
  return {{"q_scale", r.q_scale},
          {"noise_delta", r.noise_delta},
          {"cutoff", r.cutoff},
          {"inversion_error_sup", r.inversion_error_sup},
          {"error_growth_table", rows}};
}

json to_json(const PhaseShiftSet& p) {
  return {{"k", p.k},
          {"L", p.L},
          {"delta", p.delta},
          {"support_radius_estimates", p.support_radius_estimates}};
}

json to_json(const ResonanceSet& r) {
  json zeros = json::array();
  for (std::size_t i = 0; i < r.zeros.size(); ++i) {
    zeros.push_back({{"re_k", r.zeros[i].real()}, {"im_k", r.zeros[i].imag()}, {"residual", r.residuals[i]}});
  }
  const auto& b = r.search_box;
  return {{"zeros", zeros},
          {"search_box", {{"re_min", b.re_min}, {"re_max", b.re_max}, {"im_min", b.im_min}, {"im_max", b.im_max}}},
          {"count_by_argument_principle", r.count_by_argument_principle},
          {"symmetry_error", r.symmetry_error}};
}

std::string kernel_csv(const TriangularKernel& k) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    const auto& r = k.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) rows.push_back({k.x_grid()[i], k.y_at(i, j), r[j]});
  }
  return to_csv({"x", "y", "A"}, rows);
}

std::string function_csv(const SampledFunction& f, const std::string& x, const std::string& y) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < f.size(); ++i) rows.push_back({f.grid()[i], f[i].real()});
  return to_csv({x, y}, rows);
}

std::string potential_csv(const RadialPotential& q) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < q.grid().size(); ++i) rows.push_back({q.grid()[i], q.samples()[i]});
  return to_csv({"x", "q"}, rows);
}

std::string resonance_csv(const ResonanceSet& r) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.zeros.size(); ++i) rows.push_back({r.zeros[i].real(), r.zeros[i].imag(), r.residuals[i]});
  return to_csv({"re_k", "im_k", "residual"}, rows);
}

std::string sweep_csv(const BornExperimentReport& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : r.error_growth_table) rows.push_back({row.delta, row.cutoff, row.error});
  return to_csv({"delta", "cutoff", "error"}, rows);
}

}  // namespace isl
