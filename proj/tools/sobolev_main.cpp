#include <sobolev/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace sobolev::cli;
  CLI::App app{"Exact and numerical certificates for the sharp W^{N,1} -> L^inf embedding"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  std::optional<int> digits;
  std::optional<std::size_t> m;
  std::optional<double> tol;
  std::vector<double> eps;

  const std::vector<std::pair<std::string, std::string>> subs{
      {"ell", "ell_N^m by the closed form and by symbolic differentiation"},
      {"kn", "table of sharp constants K_1..K_N"},
      {"check-operator", "exact check that the kernel operator annihilates log|x|"},
      {"check-weak", "weak fundamental-solution identity over a profile corpus"},
      {"check-invariance", "seeded orthogonal-invariance suite"},
      {"extremal", "ratio int|d^N u_eps| / u_eps(0) over the eps list"},
      {"check-inequality", "embedding inequality margins over a profile corpus"}};
  for (const auto& [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--n", cfg.n, "dimension N (1..6)");
    sub->add_option("--m", m, "derivative order m (1..6)");
    sub->add_option("--eps", eps, "eps values in (0, 1/4); repeatable");
    sub->add_option("--tol", tol, "relative quadrature tolerance in [1e-12, 1e-4]");
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_option("--digits", digits, "significant digits for floats (1..40)");
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.format = parse_format(format);
    cfg.digits = digits ? *digits : default_digits();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  cfg.m = m;
  cfg.tol = tol;
  if (!eps.empty()) {
    cfg.eps = eps;
  }
  return run(cfg, std::cout, std::cerr);
}
