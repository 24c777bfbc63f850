#include "bw/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "bw/sampling.hpp"
#include "bw/spin2.hpp"

namespace bw {

namespace {

constexpr double kResidualTolerance = 1e-10;

using json = nlohmann::json;

json momentum_json(const Momentum& p) {
  json out = json::array();
  for (int mu = 0; mu < 4; ++mu) out.push_back(complex_to_json(p.upper(mu)));
  return out;
}

json system_entry(const std::string& name, const LinearSystem& s, const Momentum* p) {
  json j = to_json(s);
  j["name"] = name;
  if (p != nullptr) j["momentum"] = momentum_json(*p);
  j["rank"] = rank(s);
  j["nullspace_dim"] = nullity(s);
  return j;
}

json coeffs_json(const ModifiedCoeffs& c) {
  json a = json::array(), b = json::array();
  for (const auto& z : c.alpha) a.push_back(complex_to_json(z));
  for (const auto& z : c.beta) b.push_back(complex_to_json(z));
  return {{"alpha", a}, {"beta", b}};
}

json config_json(const RunConfig& c) {
  const auto& s = c.params;
  json params = {{"a", complex_to_json(s.a)}, {"b", complex_to_json(s.b)}, {"c", complex_to_json(s.c)},
                 {"d", complex_to_json(s.d)}, {"m", s.m},       {"m1", s.m1},
                 {"m2", s.m2},                {"eps", s.eps}};
  json j = {{"command", c.command}, {"target", c.target},   {"params", params},
            {"momenta", c.momenta}, {"seed", c.seed},       {"format", c.format}};
  j["coeffs"] = coeffs_json(c.coeffs.value_or(ModifiedCoeffs::standard()));
  return j;
}

std::vector<Momentum> generic_momenta(Sampler& rng, int n) {
  std::vector<Momentum> out;
  for (int i = 0; i < n; ++i) out.push_back(rng.generic_momentum());
  return out;
}

Momentum negated(const Momentum& p) {
  Momentum q;
  for (std::size_t i = 0; i < 4; ++i) q.up[i] = -p.up[i];
  return q;
}

struct Pipeline {
  json systems = json::array();
  json results = json::object();
  std::vector<LinearSystem> keep;  // same order as systems
  bool pass = true;
};

void add_system(Pipeline& out, const std::string& name, LinearSystem s, const Momentum* p) {
  out.systems.push_back(system_entry(name, s, p));
  out.keep.push_back(std::move(s));
}

void spin1_pipeline(const RunConfig& c, Pipeline& out) {
  Sampler rng(c.seed);
  const auto momenta = generic_momenta(rng, c.momenta);
  const auto& s = c.params;
  json samples = json::array();
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    const Momentum& p = momenta[i];
    const LinearSystem derived = derive_spin1_system(s, p).stacked(derive_duffin_kemmer(s, p));
    json row = {{"momentum", momentum_json(p)}, {"rank", rank(derived)}, {"nullspace_dim", nullity(derived)}};
    if (c.command == "verify") {
      const bool eq = equivalent(multispinor_spin1_system(s, p), derived);
      row["equivalent_to_multispinor"] = eq;
      out.pass = out.pass && eq;
      try {
        const LinearSystem ast = eliminate_potentials(s, p).embedded(derived.unknowns());
        const bool in = contains(derived, ast);
        row["second_order_contained"] = in;
        out.pass = out.pass && in;
      } catch (const std::domain_error&) {
        row["second_order_contained"] = "degenerate elimination";
      }
    }
    samples.push_back(std::move(row));
    if (i == 0) add_system(out, "spin1", derived, &p);
  }
  out.results["samples"] = std::move(samples);
  if (c.command != "verify") return;

  // Off shell both systems are usually nonsingular; equivalence has content
  // only where the dispersion relation holds.
  const auto roots = spin1_dispersion_roots(s);
  json on_shell = json::array();
  for (int i = 0; i < c.momenta && !roots.empty(); ++i) {
    const Momentum p = rng.on_shell_momentum(roots[static_cast<std::size_t>(i) % roots.size()]);
    const LinearSystem derived = derive_spin1_system(s, p).stacked(derive_duffin_kemmer(s, p));
    const bool eq = equivalent(multispinor_spin1_system(s, p), derived);
    out.pass = out.pass && eq;
    on_shell.push_back({{"momentum", momentum_json(p)},
                        {"p2", complex_to_json(p.p2())},
                        {"nullspace_dim", nullity(derived)},
                        {"equivalent_to_multispinor", eq}});
  }
  out.results["on_shell_samples"] = std::move(on_shell);
}

std::array<int, 4> negated(const std::array<int, 4>& e) { return {-e[0], -e[1], -e[2], -e[3]}; }

json variant_json(const SignVariantCoeffs& v) {
  return {{"eps", v.eps}, {"A1", v.A1}, {"A2", v.A2}, {"B1", v.B1}, {"B2", v.B2}};
}

void signs_pipeline(const RunConfig& c, Pipeline& out) {
  Sampler rng(c.seed);
  const auto momenta = generic_momenta(rng, c.momenta);
  const double m1 = c.params.m1, m2 = c.params.m2;

  if (c.command == "enumerate") {
    const auto variants = enumerate_sign_variants();
    json list = json::array();
    for (const auto& v : variants) {
      const LinearSystem sys = derive_sign_variant_system(m1, m2, v, momenta.front());
      json e = variant_json(v);
      e["rank"] = rank(sys);
      list.push_back(std::move(e));
    }
    const VariantClasses cls = classify_sign_variants(m1, m2, momenta);
    json classes = json::array();
    for (const auto& cl : cls.classes) {
      json members = json::array();
      for (auto k : cl) members.push_back(variants[k].eps);
      classes.push_back(std::move(members));
    }
    out.results["variant_count"] = variants.size();
    out.results["variants"] = std::move(list);
    out.results["distinct_classes"] = cls.classes.size();
    out.results["classes"] = std::move(classes);
    out.results["printed_claim"] = 12;
    return;
  }

  const SignVariantCoeffs v = make_sign_variant(c.params.eps);
  const SignVariantCoeffs w = make_sign_variant(negated(c.params.eps));
  out.results["variant"] = variant_json(v);
  json samples = json::array();
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    const Momentum& p = momenta[i];
    const LinearSystem sys = derive_sign_variant_system(m1, m2, v, p);
    json row = {{"momentum", momentum_json(p)}, {"rank", rank(sys)}, {"nullspace_dim", nullity(sys)}};
    if (c.command == "verify") {
      const bool eq = equivalent(derive_sign_variant_system(m1, m2, w, p), derive_sign_variant_system(m1, m2, v, negated(p)));
      row["negated_tuple_identity"] = eq;
      out.pass = out.pass && eq;
    }
    samples.push_back(std::move(row));
    if (i == 0) add_system(out, "spin1-signs", sys, &p);
  }
  out.results["samples"] = std::move(samples);
}

void spectrum_pipeline(const RunConfig& c, Pipeline& out) {
  const auto& s = c.params;
  SpectrumResult r;
  try {
    r = mass_spectrum(s.a, s.b, s.c, s.d);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  json roots = json::array();
  for (const auto& z : r.roots) roots.push_back(complex_to_json(z));
  json coeffs = json::array();
  for (const auto& z : r.coefficients) coeffs.push_back(complex_to_json(z));
  out.results = {{"roots", roots},
                 {"degree", r.degree},
                 {"double_root", r.double_root},
                 {"no_propagating_branch", r.no_propagating_branch},
                 {"coefficients", coeffs}};
}

json triviality_json(const Momentum& p, const TrivialityReport& rep, bool detail) {
  json row = {{"momentum", momentum_json(p)},
              {"nullspace_dim", rep.nullspace_dim},
              {"dynamics_only_dim", rep.dynamics_only_dim}};
  if (detail) {
    row["witness_rows"] = rep.witness_rows;
    row["witness_provenance"] = rep.witness_provenance;
    json abl = json::array();
    for (const auto& e : rep.ablation)
      abl.push_back({{"removed", e.removed}, {"removed_rows", e.removed_rows}, {"nullspace_dim", e.nullspace_dim}});
    row["ablation"] = std::move(abl);
  }
  return row;
}

// Off shell the dynamics alone are already nonsingular; the constraints only
// matter on shell, so verify samples both.
void spin2_standard_pipeline(const RunConfig& c, Pipeline& out) {
  Sampler rng(c.seed);
  const auto momenta = generic_momenta(rng, c.momenta);
  const double m = c.params.m;
  json samples = json::array();
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    const Momentum& p = momenta[i];
    if (c.command == "verify") {
      const TrivialityReport rep = verify_triviality(m, p, false);
      out.pass = out.pass && rep.nullspace_dim == 0;
      samples.push_back(triviality_json(p, rep, false));
    } else {
      const Spin2System s = standard_spin2_system(m, p);
      samples.push_back({{"momentum", momentum_json(p)},
                         {"dynamical_rank", rank(s.dynamical)},
                         {"constraints_rank", rank(s.constraints)},
                         {"nullspace_dim", nullity(s.combined)}});
    }
    if (i == 0) add_system(out, "spin2-standard", standard_spin2_system(m, p).combined, &p);
  }
  out.results["samples"] = std::move(samples);
  if (c.command != "verify") return;

  json on_shell = json::array();
  for (int i = 0; i < c.momenta; ++i) {
    const Momentum p = rng.on_shell_momentum(m * m);
    const TrivialityReport rep = verify_triviality(m, p, i == 0);
    out.pass = out.pass && rep.nullspace_dim == 0;
    on_shell.push_back(triviality_json(p, rep, i == 0));
  }
  out.results["on_shell_samples"] = std::move(on_shell);
}

void spin2_modified_pipeline(const RunConfig& c, Pipeline& out) {
  Sampler rng(c.seed);
  const auto momenta = generic_momenta(rng, c.momenta);
  const double m = c.params.m;
  const ModifiedCoeffs coeffs = c.coeffs.value_or(ModifiedCoeffs::standard());
  json samples = json::array();
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    const Momentum& p = momenta[i];
    const Spin2System s = modified_spin2_system(coeffs, m, p);
    samples.push_back({{"momentum", momentum_json(p)},
                       {"dynamical_rank", rank(s.dynamical)},
                       {"constraints_rank", rank(s.constraints)},
                       {"nullspace_dim", nullity(s.combined)}});
    if (i == 0) add_system(out, "spin2-modified", s.combined, &p);
  }
  out.results["samples"] = std::move(samples);
  if (c.command == "verify") {
    // Off shell both dynamics have full rank on the untilded columns, so the
    // comparison is made at p^2 = m^2.
    std::vector<Momentum> on_shell;
    for (int i = 0; i < c.momenta; ++i) on_shell.push_back(rng.on_shell_momentum(m * m));
    const RecoveryResult r = recovery_check(coeffs, m, on_shell);
    out.results["recovery"] = {{"recovered", r.recovered},
                               {"dynamics_mismatches", r.dynamics_mismatches},
                               {"combined_mismatches", r.combined_mismatches}};
    out.pass = r.recovered;
  }
}

void g_equation_pipeline(const RunConfig& c, Pipeline& out) {
  Sampler rng(c.seed);
  const auto momenta = generic_momenta(rng, c.momenta);
  const double m = c.params.m;
  const ModifiedCoeffs coeffs = c.coeffs.value_or(ModifiedCoeffs::standard());
  json samples = json::array();
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    const Momentum& p = momenta[i];
    const LinearSystem sys = derive_G_equation(coeffs, m, p);
    json row = {{"momentum", momentum_json(p)}};
    if (c.command == "verify") {
      // The containment and the divergence pair are checked on shell, where
      // the dynamics leave a nonzero nullspace.
      const Momentum q = rng.on_shell_momentum(m * m);
      const bool in = contains(modified_spin2_dynamics(coeffs, m, q), second_order_G_rows(coeffs, m, q));
      const double div = divergence_pair_residual(coeffs, m, q);
      const double tt = transverse_traceless_residual(coeffs, m, q);
      const double dev = transverse_traceless_deviation(coeffs, m, p);
      row["on_shell_momentum"] = momentum_json(q);
      row["contained_in_dynamics"] = in;
      row["divergence_pair_residual"] = div;
      row["transverse_traceless_residual"] = tt;
      row["transverse_traceless_deviation"] = dev;
      out.pass = out.pass && in && div <= kResidualTolerance && tt <= kResidualTolerance &&
                 dev <= kResidualTolerance;
    } else {
      row["rank"] = rank(sys);
      row["nullspace_dim"] = nullity(sys);
    }
    samples.push_back(std::move(row));
    if (i == 0) add_system(out, "g-equation", sys, &p);
  }
  out.results["samples"] = std::move(samples);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string format_coeff(cd z) {
  const bool re = std::abs(z.real()) > 0.0, im = std::abs(z.imag()) > 0.0;
  if (re && im) {
    std::string s = "(" + format_number(z.real());
    s += z.imag() < 0 ? " - " : " + ";
    return s + format_number(std::abs(z.imag())) + "i)";
  }
  if (im) return format_number(z.imag()) + "i";
  return format_number(z.real());
}

// "A_tilde[2]" -> "\tilde{A}_{2}", "phi" -> "\phi".
std::string latex_label(const std::string& label) {
  const auto open = label.find('[');
  std::string name = label.substr(0, open);
  std::string idx = open == std::string::npos ? "" : label.substr(open + 1, label.size() - open - 2);
  bool tilde = false;
  if (const auto t = name.find("_tilde"); t != std::string::npos) {
    tilde = true;
    name.erase(t);
  } else if (const auto a = name.find("_aux"); a != std::string::npos) {
    name = name.substr(0, a) + "^{\\mathrm{aux}}";
  }
  if (name == "phi") name = "\\phi";
  if (tilde) name = "\\tilde{" + name + "}";
  return idx.empty() ? name : name + "_{" + idx + "}";
}

std::string latex_body(const LinearSystem& s) {
  if (s.rows() == 0) return "";
  std::ostringstream os;
  os << "\\begin{align*}\n";
  for (std::size_t r = 0; r < s.rows(); ++r) {
    os << "  ";
    bool first = true;
    const auto& row = s.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == cd(0)) continue;
      cd z = row[j];
      // A single negative real or imaginary part becomes a binary minus.
      const bool negative = (z.imag() == 0.0 && z.real() < 0) || (z.real() == 0.0 && z.imag() < 0);
      if (!first) {
        os << (negative ? " - " : " + ");
        if (negative) z = -z;
      }
      os << format_coeff(z) << "\\," << latex_label(s.unknowns()[j]);
      first = false;
    }
    if (first) os << "0";
    os << " &= 0 && \\text{" << s.provenance(r) << "}";
    if (r + 1 < s.rows()) os << " \\\\";
    os << "\n";
  }
  os << "\\end{align*}\n";
  return os.str();
}

constexpr const char* kLatexHeader = "\\documentclass{article}\n\\usepackage{amsmath}\n\\begin{document}\n";
constexpr const char* kLatexFooter = "\\end{document}\n";

void text_lines(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) text_lines(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) text_lines(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

}  // namespace

json conventions_json() {
  return {{"metric", "diag(+1,-1,-1,-1)"},
          {"representation", "Dirac"},
          {"sigma", "sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu]"},
          {"gamma5", "gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3"},
          {"epsilon", "epsilon^{0123} = +1, epsilon_{0123} = -1"},
          {"plane_wave", "exp(-i p.x): d_mu -> -i p_mu"},
          {"pair_order", "01,02,03,12,13,23"},
          {"rank_tolerance", kRankTolerance}};
}

std::string emit_latex(const LinearSystem& system) {
  return std::string(kLatexHeader) + latex_body(system) + kLatexFooter;
}

std::vector<cd> parse_complex_list(const std::string& text) {
  std::vector<cd> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        const double re = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.emplace_back(re, 0.0);
      } else {
        const std::string a = item.substr(0, colon), b = item.substr(colon + 1);
        std::size_t ua = 0, ub = 0;
        const double re = std::stod(a, &ua), im = std::stod(b, &ub);
        if (ua != a.size() || ub != b.size()) throw std::invalid_argument(item);
        out.emplace_back(re, im);
      }
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse number '" + item + "'");
    }
  }
  return out;
}

RunOutcome run(const RunConfig& c) {
  if (c.momenta < 1) throw ConfigError("--momenta must be at least 1");
  if (c.format != "json" && c.format != "latex" && c.format != "text")
    throw ConfigError("unknown format '" + c.format + "'");

  Pipeline p;
  const std::string& cmd = c.command;
  const std::string& t = c.target;
  const bool dv = cmd == "derive" || cmd == "verify";
  try {
    if (cmd == "spectrum") {
      if (!t.empty()) throw ConfigError("spectrum takes no target");
      spectrum_pipeline(c, p);
    } else if (dv && t == "spin1") {
      spin1_pipeline(c, p);
    } else if ((dv || cmd == "enumerate") && t == "spin1-signs") {
      signs_pipeline(c, p);
    } else if (dv && t == "spin2-standard") {
      spin2_standard_pipeline(c, p);
    } else if (dv && t == "spin2-modified") {
      spin2_modified_pipeline(c, p);
    } else if (dv && t == "g-equation") {
      g_equation_pipeline(c, p);
    } else {
      throw ConfigError("unsupported command/target '" + cmd + (t.empty() ? "" : " " + t) + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (cmd == "verify") p.results["pass"] = p.pass;

  RunOutcome out;
  out.exit_code = p.pass ? 0 : 1;
  out.report = {{"config", config_json(c)},
                {"conventions", conventions_json()},
                {"systems", p.systems},
                {"results", p.results}};
  if (c.format == "json") {
    out.text = out.report.dump(2) + "\n";
  } else if (c.format == "latex") {
    std::string body;
    for (const auto& s : p.keep) body += latex_body(s);
    out.text = std::string(kLatexHeader) + body + kLatexFooter;
  } else {
    std::ostringstream os;
    text_lines(json{{"results", p.results}}, "", os);
    for (std::size_t i = 0; i < p.systems.size(); ++i) {
      os << "systems[" << i << "]: " << p.systems[i]["name"].get<std::string>() << " rows=" << p.keep[i].rows()
         << " cols=" << p.keep[i].cols() << " rank=" << p.systems[i]["rank"].dump() << "\n";
      for (const auto& prov : p.keep[i].provenance_set()) {
        std::size_t n = 0;
        for (std::size_t r = 0; r < p.keep[i].rows(); ++r) n += p.keep[i].provenance(r) == prov;
        os << "  " << prov << ": " << n << " rows\n";
      }
    }
    out.text = os.str();
  }
  return out;
}

}  // namespace bw
