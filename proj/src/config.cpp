#include "cfm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cfm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_length_unit(const std::string& u) {
  return u == "bohr" || u == "angstrom" || u == "a" || u == "ang";
}

// Native length follows the native energy system: Angstrom for the
// spectroscopic cm^-1 system, bohr otherwise.
bool native_length_is_angstrom(EnergyUnit unit) {
  return unit == EnergyUnit::inverse_centimeter;
}

double to_native_length(double value, const std::string& suffix,
                        EnergyUnit native) {
  const bool from_angstrom = suffix == "angstrom" || suffix == "a" || suffix == "ang";
  const bool to_angstrom = native_length_is_angstrom(native);
  if (from_angstrom == to_angstrom) return value;
  const double bohr = physical_constants().bohr_radius_angstrom;
  if (from_angstrom && !to_angstrom) return value / bohr;
  return value * bohr;
}

struct RawEntry {
  std::string value;
  int line;
};

double parse_number(const std::string& text, int line, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "cannot parse number for '" + key + "'");
  }
  if (pos != text.size())
    throw ConfigError(line, key, "trailing characters after number for '" + key + "'");
  return v;
}

// "<number> <unit>" with a mandatory suffix.
std::pair<double, std::string> parse_quantity(const std::string& text, int line,
                                              const std::string& key) {
  std::istringstream in(text);
  std::string num, unit, extra;
  in >> num >> unit;
  if (num.empty() || unit.empty() || (in >> extra))
    throw ConfigError(line, key,
                      "'" + key + "' needs '<value> <unit>' (got '" + text + "')");
  std::string lower = unit;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return {parse_number(num, line, key), lower};
}

double energy_in_native(const std::string& text, int line, const std::string& key,
                        EnergyUnit native) {
  auto [v, unit] = parse_quantity(text, line, key);
  EnergyUnit from;
  try {
    from = parse_energy_unit(unit);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "unknown energy unit '" + unit + "'");
  }
  return convert_energy(v, from, native);
}

double length_in_native(const std::string& text, int line, const std::string& key,
                        EnergyUnit native) {
  auto [v, unit] = parse_quantity(text, line, key);
  if (unit == "au") unit = native_length_is_angstrom(native) ? "angstrom" : "bohr";
  if (!is_length_unit(unit))
    throw ConfigError(line, key, "unknown length unit '" + unit + "'");
  return to_native_length(v, unit, native);
}

const std::map<std::string, std::vector<std::string>>& family_params() {
  // Per-family parameter keys, energies first, then lengths, then bare.
  static const std::map<std::string, std::vector<std::string>> fam = {
      {"infinite-well", {"a"}},
      {"finite-well", {"V0", "a"}},
      {"harmonic", {"k"}},
      {"dgw", {"D", "r_a", "Omega"}},
      {"morse-gaussian", {"A", "D", "r_a", "r_b", "B", "C"}},
      {"coulomb", {"Z"}},
      {"morse", {"D", "a", "r_e"}},
      {"tabulated", {}},
  };
  return fam;
}

bool param_is_energy(const std::string& family, const std::string& key) {
  if (key == "V0" || key == "D" || key == "A") return true;
  (void)family;
  return false;
}

bool param_is_length(const std::string& key) {
  return key == "a" || key == "r_a" || key == "r_b" || key == "r_e";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, RawEntry> problem, march, output;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(line_no, "", "malformed section header '" + line + "'");
      section = line.substr(1, line.size() - 2);
      if (section != "problem" && section != "march" && section != "output")
        throw ConfigError(line_no, section, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "", "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(line_no, key, "empty key or value");
    if (section.empty())
      throw ConfigError(line_no, key, "key '" + key + "' outside any section");

    auto& dest = section == "problem" ? problem : (section == "march" ? march : output);
    if (dest.count(key))
      throw ConfigError(line_no, key, "duplicate key '" + key + "'");
    dest[key] = RawEntry{value, line_no};
  }

  // The native unit must be known before energies can be converted.
  if (auto it = problem.find("unit"); it != problem.end()) {
    try {
      cfg.native_unit = parse_energy_unit(it->second.value);
    } catch (const std::exception&) {
      throw ConfigError(it->second.line, "unit",
                        "unknown energy unit '" + it->second.value + "'");
    }
  }

  auto take = [](std::map<std::string, RawEntry>& m, const std::string& key)
      -> std::optional<RawEntry> {
    auto it = m.find(key);
    if (it == m.end()) return std::nullopt;
    RawEntry e = it->second;
    m.erase(it);
    return e;
  };

  problem.erase("unit");
  if (auto e = take(problem, "preset")) cfg.preset = e->value;
  if (auto e = take(problem, "potential")) cfg.potential_family = e->value;
  if (cfg.preset && cfg.potential_family)
    throw ConfigError(0, "potential", "give either 'preset' or 'potential', not both");

  if (auto e = take(problem, "table"))
    cfg.table_file = e->value;
  if (auto e = take(problem, "radial")) {
    if (e->value != "true" && e->value != "false")
      throw ConfigError(e->line, "radial", "'radial' must be true or false");
    cfg.radial = e->value == "true";
  }
  if (auto e = take(problem, "l"))
    cfg.l = static_cast<int>(parse_number(e->value, e->line, "l"));
  if (auto e = take(problem, "x0"))
    cfg.x0 = length_in_native(e->value, e->line, "x0", cfg.native_unit);
  if (auto e = take(problem, "mass"))
    cfg.mass_two_mu = parse_number(e->value, e->line, "mass");
  if (auto e = take(problem, "hbar"))
    cfg.mass_hbar = parse_number(e->value, e->line, "hbar");
  if (auto e = take(problem, "emin"))
    cfg.emin = energy_in_native(e->value, e->line, "emin", cfg.native_unit);
  if (auto e = take(problem, "emax"))
    cfg.emax = energy_in_native(e->value, e->line, "emax", cfg.native_unit);
  if (auto e = take(problem, "grid_points"))
    cfg.grid_points = static_cast<int>(parse_number(e->value, e->line, "grid_points"));
  if (auto e = take(problem, "refine_tol"))
    cfg.refine_tol = parse_number(e->value, e->line, "refine_tol");

  if (cfg.potential_family) {
    const auto& fam = family_params();
    auto fit = fam.find(*cfg.potential_family);
    if (fit == fam.end())
      throw ConfigError(0, "potential",
                        "unknown potential family '" + *cfg.potential_family + "'");
    for (const auto& key : fit->second) {
      auto e = take(problem, key);
      if (!e) continue;
      double v;
      if (param_is_energy(*cfg.potential_family, key))
        v = energy_in_native(e->value, e->line, key, cfg.native_unit);
      else if (param_is_length(key))
        v = length_in_native(e->value, e->line, key, cfg.native_unit);
      else
        v = parse_number(e->value, e->line, key);
      cfg.potential_params[key] = v;
    }
  }

  for (const auto& [key, entry] : problem)
    throw ConfigError(entry.line, key, "unknown key '" + key + "' in [problem]");

  if (auto e = take(march, "step")) cfg.step = parse_number(e->value, e->line, "step");
  if (auto e = take(march, "saturation_tol"))
    cfg.saturation_tol = parse_number(e->value, e->line, "saturation_tol");
  if (auto e = take(march, "max_extent"))
    cfg.max_extent = parse_number(e->value, e->line, "max_extent");
  if (auto e = take(march, "r_min"))
    cfg.r_min = parse_number(e->value, e->line, "r_min");
  for (const auto& [key, entry] : march)
    throw ConfigError(entry.line, key, "unknown key '" + key + "' in [march]");

  if (auto e = take(output, "format")) {
    if (e->value == "text")
      cfg.format = OutputFormat::text;
    else if (e->value == "csv")
      cfg.format = OutputFormat::csv;
    else if (e->value == "plotdata")
      cfg.format = OutputFormat::plotdata;
    else
      throw ConfigError(e->line, "format", "unknown format '" + e->value + "'");
  }
  if (auto e = take(output, "path")) cfg.out_path = e->value;
  if (auto e = take(output, "oracle")) {
    if (e->value != "true" && e->value != "false")
      throw ConfigError(e->line, "oracle", "'oracle' must be true or false");
    cfg.oracle = e->value == "true";
  }
  for (const auto& [key, entry] : output)
    throw ConfigError(entry.line, key, "unknown key '" + key + "' in [output]");

  if (cfg.preset && *cfg.preset == "johnson-dwp" && !cfg.mass_two_mu)
    throw ConfigError(0, "mass",
                      "preset 'johnson-dwp' requires 'mass' (2mu with hbar = 1)");

  return cfg;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  const std::string energy_unit(unit_name(cfg.native_unit));
  const std::string length_unit =
      native_length_is_angstrom(cfg.native_unit) ? "angstrom" : "bohr";

  out << "[problem]\n";
  out << "unit = " << energy_unit << "\n";
  if (cfg.preset) out << "preset = " << *cfg.preset << "\n";
  if (cfg.potential_family) out << "potential = " << *cfg.potential_family << "\n";
  for (const auto& [key, value] : cfg.potential_params) {
    out << key << " = " << format_double(value);
    if (param_is_energy(cfg.potential_family.value_or(""), key))
      out << " " << energy_unit;
    else if (param_is_length(key))
      out << " " << length_unit;
    out << "\n";
  }
  if (cfg.table_file) out << "table = " << *cfg.table_file << "\n";
  if (cfg.radial) out << "radial = " << (*cfg.radial ? "true" : "false") << "\n";
  if (cfg.l) out << "l = " << *cfg.l << "\n";
  if (cfg.x0) out << "x0 = " << format_double(*cfg.x0) << " " << length_unit << "\n";
  if (cfg.mass_two_mu) out << "mass = " << format_double(*cfg.mass_two_mu) << "\n";
  if (cfg.mass_hbar) out << "hbar = " << format_double(*cfg.mass_hbar) << "\n";
  if (cfg.emin)
    out << "emin = " << format_double(*cfg.emin) << " " << energy_unit << "\n";
  if (cfg.emax)
    out << "emax = " << format_double(*cfg.emax) << " " << energy_unit << "\n";
  if (cfg.grid_points) out << "grid_points = " << *cfg.grid_points << "\n";
  if (cfg.refine_tol) out << "refine_tol = " << format_double(*cfg.refine_tol) << "\n";

  out << "[march]\n";
  if (cfg.step) out << "step = " << format_double(*cfg.step) << "\n";
  if (cfg.saturation_tol)
    out << "saturation_tol = " << format_double(*cfg.saturation_tol) << "\n";
  if (cfg.max_extent) out << "max_extent = " << format_double(*cfg.max_extent) << "\n";
  if (cfg.r_min) out << "r_min = " << format_double(*cfg.r_min) << "\n";

  out << "[output]\n";
  out << "format = "
      << (cfg.format == OutputFormat::text
              ? "text"
              : (cfg.format == OutputFormat::csv ? "csv" : "plotdata"))
      << "\n";
  if (cfg.out_path) out << "path = " << *cfg.out_path << "\n";
  out << "oracle = " << (cfg.oracle ? "true" : "false") << "\n";
  return out.str();
}

namespace {

PotentialSpec build_potential(const RunConfig& cfg) {
  const auto& fam = *cfg.potential_family;
  auto need = [&](const std::string& key) {
    auto it = cfg.potential_params.find(key);
    if (it == cfg.potential_params.end()) throw MissingFieldError(key);
    return it->second;
  };

  if (fam == "infinite-well") return InfiniteWell{need("a")};
  if (fam == "finite-well") return FiniteWell{need("a"), need("V0")};
  if (fam == "harmonic") return Harmonic{need("k")};
  if (fam == "dgw") return DoubleGaussian{need("D"), need("Omega"), need("r_a")};
  if (fam == "morse-gaussian")
    return MorseGaussian{need("A"), need("B"),   need("C"),
                         need("D"), need("r_a"), need("r_b")};
  if (fam == "coulomb") return Coulomb{need("Z")};
  if (fam == "morse") return Morse{need("D"), need("a"), need("r_e")};
  if (fam == "tabulated") {
    if (!cfg.table_file) throw MissingFieldError("table");
    std::ifstream in(*cfg.table_file);
    if (!in)
      throw ConfigError(0, "table", "cannot open table file '" + *cfg.table_file + "'");
    Tabulated t;
    double x, v;
    while (in >> x >> v) {
      t.x.push_back(x);
      t.v.push_back(v);
    }
    return t;
  }
  throw ConfigError(0, "potential", "unknown potential family '" + fam + "'");
}

}  // namespace

ResolvedRun resolve_run(const RunConfig& cfg) {
  ResolvedRun run;
  if (cfg.preset) {
    run.preset = make_spectrum_preset(*cfg.preset);
  } else if (cfg.potential_family) {
    SpectrumPreset p;
    p.name = "custom-" + *cfg.potential_family;
    p.description = "custom problem from config";
    p.native_unit = cfg.native_unit;
    p.problem.potential = build_potential(cfg);
    validate(p.problem.potential);
    if (!cfg.mass_two_mu) throw MissingFieldError("mass");
    p.problem.mass = MassConvention{cfg.mass_hbar.value_or(1.0), *cfg.mass_two_mu};
    p.problem.radial = cfg.radial.value_or(false);
    p.problem.l = cfg.l.value_or(0);
    if (!cfg.emin || !cfg.emax) throw MissingFieldError(cfg.emin ? "emax" : "emin");
    p.window = Window{*cfg.emin, *cfg.emax};
    p.grid_kind = (*cfg.emax < 0.0 && *cfg.emin < 0.0) ? GridKind::log_abs
                                                       : GridKind::linear;
    if (cfg.r_min) p.march.r_min = *cfg.r_min;
    if (const auto* fw = std::get_if<FiniteWell>(&p.problem.potential))
      p.march.breakpoints = {0.0, fw->width};
    if (p.problem.radial) {
      p.problem.left =
          BoundaryCondition{BoundaryKind::null_value, Boundary::at(p.march.r_min)};
      p.problem.right =
          BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
    } else if (auto center = symmetry_center(p.problem.potential)) {
      p.problem.symmetry_center = center;
      const bool hard_wall = std::holds_alternative<InfiniteWell>(p.problem.potential);
      p.problem.left = BoundaryCondition{
          BoundaryKind::null_value,
          hard_wall ? Boundary::at(0.0) : Boundary::infinity()};
      p.problem.right =
          BoundaryCondition{BoundaryKind::null_value, Boundary::at(*center)};
    } else {
      p.problem.left =
          BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
      p.problem.right =
          BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
    }
    if (!cfg.x0) throw MissingFieldError("x0");
    p.problem.x0 = *cfg.x0;
    run.preset = p;
  } else {
    throw ConfigError(0, "preset", "config must name a preset or a potential");
  }

  run.overrides.emin = cfg.emin;
  run.overrides.emax = cfg.emax;
  run.overrides.grid_points = cfg.grid_points;
  run.overrides.refine_tol = cfg.refine_tol;
  if (cfg.preset) {
    run.overrides.x0 = cfg.x0;
    run.overrides.mass_two_mu = cfg.mass_two_mu;
    run.overrides.mass_hbar = cfg.mass_hbar;
    run.overrides.l = cfg.l;
  }
  run.overrides.step = cfg.step;
  run.overrides.saturation_tol = cfg.saturation_tol;
  run.overrides.max_extent = cfg.max_extent;
  return run;
}

}  // namespace cfm
