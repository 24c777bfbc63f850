// bwderive: derive and verify the spin-1 and spin-2 equation systems.
//
//   bwderive derive spin1 --a 1 --c 0.5
//   bwderive verify spin2-standard --m 1 --momenta 20 --seed 7
//   bwderive enumerate spin1-signs --m1 1 --m2 1
//   bwderive spectrum --a 0 --b 1 --c 0 --d 0

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bw/report.hpp"

namespace {

int fail_config(const std::string& message) {
  std::cerr << nlohmann::json{{"error", "config"}, {"message", message}}.dump() << "\n";
  return 2;
}

bw::cd single(const std::string& flag, const std::string& text) {
  const auto v = bw::parse_complex_list(text);
  if (v.size() != 1) throw bw::ConfigError(flag + " expects one value");
  return v.front();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derive and verify generalized Bargmann-Wigner field equations"};
  app.require_subcommand(1);

  bw::RunConfig cfg;
  std::string a = "1", b = "0", c = "0", d = "0", eps = "1,1,1,1", alpha, beta;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a", a, "mass term a (re or re:im)");
    sub->add_option("--b", b, "coefficient b of the d'Alembertian in a");
    sub->add_option("--c", c, "axial mass term c");
    sub->add_option("--d", d, "coefficient d of the d'Alembertian in c");
    sub->add_option("--m", cfg.params.m, "mass scale")->capture_default_str();
    sub->add_option("--m1", cfg.params.m1, "sign-variant mass m1")->capture_default_str();
    sub->add_option("--m2", cfg.params.m2, "sign-variant mass m2")->capture_default_str();
    sub->add_option("--eps", eps, "sign tuple, e.g. 1,-1,1,1");
    sub->add_option("--alpha", alpha, "alpha_1..3, comma separated");
    sub->add_option("--beta", beta, "beta_1..9, comma separated");
    sub->add_option("--momenta", cfg.momenta, "number of sampled momenta")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "sampler seed")->capture_default_str();
    sub->add_option("--output", cfg.output, "report path (default stdout)");
    sub->add_option("--format", cfg.format, "json, latex or text")->capture_default_str();
  };

  const std::vector<std::string> targets{"spin1", "spin1-signs", "spin2-standard", "spin2-modified", "g-equation"};
  for (const char* name : {"derive", "verify", "enumerate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("target", cfg.target, "pipeline")->required()->check(CLI::IsMember(targets));
    add_common(sub);
  }
  add_common(app.add_subcommand("spectrum", "roots of the second-order mass polynomial"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail_config(e.what());
  }
  cfg.command = app.get_subcommands().front()->get_name();

  bw::RunOutcome outcome;
  try {
    cfg.params.a = single("--a", a);
    cfg.params.b = single("--b", b);
    cfg.params.c = single("--c", c);
    cfg.params.d = single("--d", d);

    const auto e = bw::parse_complex_list(eps);
    if (e.size() != 4) throw bw::ConfigError("--eps expects four entries");
    for (std::size_t i = 0; i < 4; ++i) {
      const double v = e[i].real();
      if (e[i].imag() != 0.0 || (v != 1.0 && v != -1.0)) throw bw::ConfigError("--eps entries must be +1 or -1");
      cfg.params.eps[i] = static_cast<int>(v);
    }

    if (!alpha.empty() || !beta.empty()) {
      bw::ModifiedCoeffs mc = bw::ModifiedCoeffs::standard();
      if (!alpha.empty()) {
        const auto v = bw::parse_complex_list(alpha);
        if (v.size() != 3) throw bw::ConfigError("--alpha expects three entries");
        std::copy(v.begin(), v.end(), mc.alpha.begin());
      }
      if (!beta.empty()) {
        const auto v = bw::parse_complex_list(beta);
        if (v.size() != 9) throw bw::ConfigError("--beta expects nine entries");
        std::copy(v.begin(), v.end(), mc.beta.begin());
      }
      cfg.coeffs = mc;
    }
    outcome = bw::run(cfg);
  } catch (const bw::ConfigError& e) {
    return fail_config(e.what());
  }

  if (cfg.output.empty()) {
    std::cout << outcome.text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) return fail_config("cannot open " + cfg.output);
    out << outcome.text;
  }
  return outcome.exit_code;
}
