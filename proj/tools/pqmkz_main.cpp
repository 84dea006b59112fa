// Command-line front end: parses flags into a RunConfig and dispatches.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pqmkz/cli.hpp"

namespace {

// "lo:step:hi"
void parse_grid(const std::string& s, pqmkz::RunConfig& rc) {
  const auto a = s.find(':'), b = s.rfind(':');
  if (a == std::string::npos || b == a)
    throw CLI::ValidationError("--grid expects lo:step:hi");
  rc.grid_lo = std::stod(s.substr(0, a));
  rc.grid_step = std::stod(s.substr(a + 1, b - a - 1));
  rc.grid_hi = std::stod(s.substr(b + 1));
  rc.grid_set = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Durrmeyer-type operators in two-parameter quantum calculus"};
  app.require_subcommand(1);

  pqmkz::RunConfig rc;
  std::string grid_spec, format = "csv", scheme;
  double p = 0.0, q = 0.0;
  std::size_t fixed_k = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", rc.n, "operator degree");
    auto* po = sub->add_option("--p", p, "parameter p (with --q)");
    auto* qo = sub->add_option("--q", q, "parameter q (with --p)");
    auto* so = sub->add_option("--scheme", scheme,
                               "parameter scheme id (remark1)");
    so->excludes(po)->excludes(qo);
    sub->add_option("--cp", rc.cp, "scheme knob c_p");
    sub->add_option("--cq", rc.cq, "scheme knob c_q");
    sub->add_option("--tail-tol", rc.tail_tol, "series mass tolerance");
    sub->add_option("--fixed-k", fixed_k, "hard truncation index K");
    sub->add_option("--grid", grid_spec, "x grid as lo:step:hi");
    sub->add_option("--out", rc.out_dir, "output directory");
    sub->add_option("--format", format, "csv|json|svg");
    sub->add_option("--function", rc.functions,
                    "function spec: e<i>, fig1..fig4, poly:c0,c1,...");
    sub->add_flag("--self-test", rc.self_test,
                  "run built-in checks instead of writing files");
    return sub;
  };

  auto* c_eval = add_common(app.add_subcommand("eval", "evaluate M(f) on a grid"));
  auto* c_mom = add_common(app.add_subcommand("moments", "raw and central moments"));
  auto* c_bnd = add_common(app.add_subcommand("bounds", "moment envelope report"));
  auto* c_conv = add_common(app.add_subcommand("converge", "error decay over n"));
  auto* c_fig = add_common(app.add_subcommand("figures", "sample-function data and plots"));
  auto* c_stat = add_common(app.add_subcommand("statdemo", "statistical convergence demo"));
  c_conv->add_option("--C", rc.C, "constant for the smoothness bound");
  c_stat->add_option("--eps", rc.eps, "violator threshold");
  c_stat->add_option("--N", rc.N, "horizon");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_eval->parsed()) rc.command = pqmkz::Command::eval;
    if (c_mom->parsed()) rc.command = pqmkz::Command::moments;
    if (c_bnd->parsed()) rc.command = pqmkz::Command::bounds;
    if (c_conv->parsed()) rc.command = pqmkz::Command::converge;
    if (c_fig->parsed()) rc.command = pqmkz::Command::figures;
    if (c_stat->parsed()) rc.command = pqmkz::Command::statdemo;

    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--p")) rc.p = p;
    if (sub->count("--q")) rc.q = q;
    if (sub->count("--scheme")) {
      if (scheme != "remark1")
        throw std::invalid_argument("unknown scheme '" + scheme + "'");
      rc.use_scheme = true;
    }
    if (rc.command == pqmkz::Command::converge ||
        rc.command == pqmkz::Command::statdemo) {
      rc.use_scheme = rc.use_scheme || (!rc.p && !rc.q);
    }
    if (sub->count("--fixed-k")) rc.fixed_k = fixed_k;
    if (sub->count("--grid")) parse_grid(grid_spec, rc);
    if (format == "csv") rc.format = pqmkz::OutputFormat::csv;
    else if (format == "json") rc.format = pqmkz::OutputFormat::json;
    else if (format == "svg") rc.format = pqmkz::OutputFormat::svg;
    else throw std::invalid_argument("unknown format '" + format + "'");

    return pqmkz::run_command(rc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
