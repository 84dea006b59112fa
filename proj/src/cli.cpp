#include "pqmkz/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "pqmkz/convergence.hpp"
#include "pqmkz/function.hpp"
#include "pqmkz/operator.hpp"
#include "pqmkz/pq_integral.hpp"

namespace pqmkz {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << body;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

void write_json_file(const fs::path& path, const ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string csv_row(const std::vector<double>& vals) {
  std::string row;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) row += ',';
    row += format_g17(vals[i]);
  }
  row += '\n';
  return row;
}

// Minimal two-series line plot; fixed-precision coordinates keep reruns
// byte-identical.
std::string render_svg(const std::string& title, const std::vector<double>& xs,
                       const std::vector<double>& f_vals,
                       const std::vector<double>& m_vals) {
  const double W = 640, H = 400, ML = 60, MR = 20, MT = 30, MB = 40;
  double ymin = 1e300, ymax = -1e300;
  for (double v : f_vals) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  for (double v : m_vals) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double xmin = xs.front(), xmax = xs.back();

  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };
  auto coord = [](double v) {
    char b[24];
    std::snprintf(b, sizeof(b), "%.2f", v);
    return std::string(b);
  };
  auto polyline = [&](const std::vector<double>& ys, const char* color) {
    std::string pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) pts += ' ';
      pts += coord(px(xs[i])) + ',' + coord(py(ys[i]));
    }
    return "  <polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  };
  auto label = [&](double v) {
    char b[24];
    std::snprintf(b, sizeof(b), "%.3g", v);
    return std::string(b);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\">\n";
  svg += "  <rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "  <text x=\"320\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" + title + "</text>\n";
  svg += "  <line x1=\"" + coord(ML) + "\" y1=\"" + coord(H - MB) + "\" x2=\"" +
         coord(W - MR) + "\" y2=\"" + coord(H - MB) + "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + coord(ML) + "\" y1=\"" + coord(MT) + "\" x2=\"" +
         coord(ML) + "\" y2=\"" + coord(H - MB) + "\" stroke=\"black\"/>\n";
  svg += polyline(f_vals, "#1f77b4");
  svg += polyline(m_vals, "#d62728");
  svg += "  <text x=\"" + coord(ML) + "\" y=\"" + coord(H - MB + 16) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + label(xmin) + "</text>\n";
  svg += "  <text x=\"" + coord(W - MR) + "\" y=\"" + coord(H - MB + 16) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         label(xmax) + "</text>\n";
  svg += "  <text x=\"" + coord(ML - 6) + "\" y=\"" + coord(H - MB) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         label(ymin) + "</text>\n";
  svg += "  <text x=\"" + coord(ML - 6) + "\" y=\"" + coord(MT + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         label(ymax) + "</text>\n";
  svg += "  <text x=\"" + coord(W - MR - 4) + "\" y=\"" + coord(MT + 14) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
         "fill=\"#1f77b4\">f</text>\n";
  svg += "  <text x=\"" + coord(W - MR - 4) + "\" y=\"" + coord(MT + 28) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
         "fill=\"#d62728\">M(f)</text>\n";
  svg += "</svg>\n";
  return svg;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::eval: return "eval";
    case Command::moments: return "moments";
    case Command::bounds: return "bounds";
    case Command::converge: return "converge";
    case Command::figures: return "figures";
    case Command::statdemo: return "statdemo";
  }
  return "?";
}

PQParams resolve_params(const RunConfig& rc, int n) {
  if (rc.use_scheme) return remark1_scheme(rc.cp, rc.cq).rule(n);
  return PQParams(rc.p.value_or(0.95), rc.q.value_or(0.9));
}

OperatorConfig make_operator_config(const RunConfig& rc,
                                    std::optional<std::size_t> default_fixed =
                                        std::nullopt) {
  OperatorConfig cfg;
  cfg.tail_tol = rc.tail_tol;
  cfg.fixed_terms = rc.fixed_k ? rc.fixed_k : default_fixed;
  return cfg;
}

std::vector<double> command_grid(const RunConfig& rc, double def_lo,
                                 double def_step, double def_hi) {
  if (rc.grid_set) return make_grid(rc.grid_lo, rc.grid_step, rc.grid_hi);
  return make_grid(def_lo, def_step, def_hi);
}

ordered_json grid_json(const std::vector<double>& g) {
  ordered_json j;
  j["lo"] = g.front();
  j["step"] = g.size() > 1 ? g[1] - g[0] : 0.0;
  j["hi"] = g.back();
  j["points"] = g.size();
  return j;
}

ordered_json base_manifest(const RunConfig& rc) {
  ordered_json j;
  j["command"] = command_name(rc.command);
  j["n"] = rc.n;
  if (rc.use_scheme) {
    j["scheme"] = {{"id", "remark1"}, {"cp", rc.cp}, {"cq", rc.cq}};
  } else {
    j["p"] = rc.p.value_or(0.95);
    j["q"] = rc.q.value_or(0.9);
  }
  return j;
}

struct CheckRow {
  std::string label;
  bool ok;
};

int report_checks(const char* cmd, const std::vector<CheckRow>& rows) {
  bool all = true;
  for (const auto& r : rows) {
    std::cout << (r.ok ? "ok   " : "FAIL ") << cmd << " self-test: " << r.label
              << "\n";
    all = all && r.ok;
  }
  return all ? 0 : 1;
}

// ---------------------------------------------------------------- figures

int cmd_figures(const RunConfig& rc) {
  const PQParams pq = resolve_params(rc, rc.n);
  OperatorConfig cfg = make_operator_config(rc, 150);
  const std::vector<double> grid = command_grid(rc, 0.0, 0.005, 0.995);

  std::vector<Function1D> funcs;
  if (rc.functions.empty()) {
    funcs = figure_polynomials();
  } else {
    for (const auto& s : rc.functions) funcs.push_back(parse_function(s));
  }

  if (rc.self_test) {
    std::vector<CheckRow> rows;
    const auto figs = figure_polynomials();
    rows.push_back({"abs_error of a function against itself is zero",
                    std::abs(figs[0](0.4) - figs[0](0.4)) == 0.0});
    const double m0 = apply_monomial(0, rc.n, 0.5, pq, cfg).value;
    rows.push_back({"constant test function reproduced: |M(e0;0.5)-1| <= 1e-9",
                    std::abs(m0 - 1.0) <= 1e-9});
    rows.push_back({"fig1(0) = 8/15",
                    std::abs(figs[0](0.0) - 8.0 / 15.0) <= 1e-15});
    return report_checks("figures", rows);
  }

  fs::create_directories(rc.out_dir);
  ordered_json manifest = base_manifest(rc);
  manifest["K"] = cfg.fixed_terms ? ordered_json(*cfg.fixed_terms)
                                  : ordered_json(nullptr);
  manifest["tail_tol"] = cfg.tail_tol;
  manifest["grid"] = grid_json(grid);
  manifest["functions"] = ordered_json::array();

  for (const auto& f : funcs) {
    std::string csv = "x,f(x),M(f)(x),abs_error\n";
    std::vector<double> fv, mv;
    double max_err = 0.0;
    for (double x : grid) {
      const double fx = f(x);
      const double mx = apply(f, rc.n, x, pq, cfg).value;
      fv.push_back(fx);
      mv.push_back(mx);
      max_err = std::max(max_err, std::abs(mx - fx));
      csv += csv_row({x, fx, mx, std::abs(mx - fx)});
    }
    write_text(fs::path(rc.out_dir) / (f.name() + ".csv"), csv);
    write_text(fs::path(rc.out_dir) / (f.name() + ".svg"),
               render_svg(f.name(), grid, fv, mv));
    manifest["functions"].push_back(f.name());
    std::cout << "figures: " << f.name() << " max|M(f)-f| = "
              << format_g17(max_err) << "\n";
  }
  write_json_file(fs::path(rc.out_dir) / "manifest.json", manifest);
  return 0;
}

// ------------------------------------------------------------------- eval

int cmd_eval(const RunConfig& rc) {
  const PQParams pq = resolve_params(rc, rc.n);
  const OperatorConfig cfg = make_operator_config(rc);
  const std::vector<double> grid = command_grid(rc, 0.0, 0.005, 0.995);
  const Function1D f =
      parse_function(rc.functions.empty() ? "e1" : rc.functions[0]);

  if (rc.self_test) {
    std::vector<CheckRow> rows;
    const double one = apply(parse_function("poly:1"), rc.n, 0.3, pq, cfg).value;
    rows.push_back({"M(1;x) = 1", std::abs(one - 1.0) <= 1e-9});
    const double m1_0 = apply_monomial(1, rc.n, 0.0, pq, cfg).value;
    const double expect =
        std::pow(pq.p(), rc.n) / pq_integer(rc.n + 2, pq);
    rows.push_back({"M(e1;0) = p^n/[n+2]", std::abs(m1_0 - expect) <= 1e-12});
    const Function1D g = Function1D::polynomial("g", {0.0, 2.0, 3.0});
    const double lin = apply(g, rc.n, 0.4, pq, cfg).value;
    const double parts = 2.0 * apply_monomial(1, rc.n, 0.4, pq, cfg).value +
                         3.0 * apply_monomial(2, rc.n, 0.4, pq, cfg).value;
    rows.push_back({"linearity on 2 e1 + 3 e2", std::abs(lin - parts) <= 1e-10});
    return report_checks("eval", rows);
  }

  fs::create_directories(rc.out_dir);
  std::string csv = "x,f(x),M(f)(x),abs_error\n";
  ordered_json records = ordered_json::array();
  std::vector<double> fv, mv;
  for (double x : grid) {
    const double fx = f(x);
    const double mx = apply(f, rc.n, x, pq, cfg).value;
    fv.push_back(fx);
    mv.push_back(mx);
    csv += csv_row({x, fx, mx, std::abs(mx - fx)});
    if (rc.format == OutputFormat::json) {
      records.push_back({{"x", x}, {"f", fx}, {"M", mx},
                         {"abs_error", std::abs(mx - fx)}});
    }
  }
  if (rc.format == OutputFormat::json) {
    ordered_json j = base_manifest(rc);
    j["function"] = f.name();
    j["rows"] = records;
    write_json_file(fs::path(rc.out_dir) / "eval.json", j);
  } else {
    write_text(fs::path(rc.out_dir) / "eval.csv", csv);
    if (rc.format == OutputFormat::svg)
      write_text(fs::path(rc.out_dir) / "eval.svg",
                 render_svg(f.name(), grid, fv, mv));
  }
  ordered_json manifest = base_manifest(rc);
  manifest["tail_tol"] = cfg.tail_tol;
  manifest["grid"] = grid_json(grid);
  manifest["functions"] = {f.name()};
  write_json_file(fs::path(rc.out_dir) / "manifest.json", manifest);
  std::cout << "eval: " << f.name() << " on " << grid.size() << " points\n";
  return 0;
}

// ---------------------------------------------------------------- moments

int cmd_moments(const RunConfig& rc) {
  const PQParams pq = resolve_params(rc, rc.n);
  const OperatorConfig cfg = make_operator_config(rc);
  const std::vector<double> grid = command_grid(rc, 0.0, 0.05, 0.95);

  if (rc.self_test) {
    std::vector<CheckRow> rows;
    rows.push_back({"m0 = 1",
                    std::abs(apply_monomial(0, rc.n, 0.5, pq, cfg).value - 1.0) <=
                        1e-9});
    rows.push_back({"m1 inside its two-sided envelope",
                    theorem1_bounds(1, rc.n, 0.5, pq, cfg).holds});
    const double m1 = apply_monomial(1, rc.n, 0.5, pq, cfg).value;
    const double psi1 = central_moment(1, rc.n, 0.5, pq, cfg);
    // psi1 = m1 - x * m0 and the truncated m0 sits within tail_tol of 1,
    // so the difference from m1 - x is bounded by x * tail_tol.
    rows.push_back({"psi1 tracks m1 - x within the truncation budget",
                    std::abs(psi1 - (m1 - 0.5)) <= 1e-11});
    return report_checks("moments", rows);
  }

  fs::create_directories(rc.out_dir);
  std::string csv = "x,m0,m1,m2,psi1,psi2\n";
  for (double x : grid) {
    csv += csv_row({x, apply_monomial(0, rc.n, x, pq, cfg).value,
                    apply_monomial(1, rc.n, x, pq, cfg).value,
                    apply_monomial(2, rc.n, x, pq, cfg).value,
                    central_moment(1, rc.n, x, pq, cfg),
                    central_moment(2, rc.n, x, pq, cfg)});
  }
  write_text(fs::path(rc.out_dir) / "moments.csv", csv);
  ordered_json manifest = base_manifest(rc);
  manifest["tail_tol"] = cfg.tail_tol;
  manifest["grid"] = grid_json(grid);
  write_json_file(fs::path(rc.out_dir) / "manifest.json", manifest);
  std::cout << "moments: n=" << rc.n << " on " << grid.size() << " points\n";
  return 0;
}

// ----------------------------------------------------------------- bounds

int cmd_bounds(const RunConfig& rc) {
  const PQParams pq = resolve_params(rc, rc.n);
  const OperatorConfig cfg = make_operator_config(rc);
  const std::vector<double> grid = command_grid(rc, 0.0, 0.05, 0.95);

  if (rc.self_test) {
    std::vector<CheckRow> rows;
    const auto b0 = theorem1_bounds(0, rc.n, 0.5, pq, cfg);
    rows.push_back({"moment 0 pinned to 1", b0.lower == 1.0 && b0.upper == 1.0 &&
                                                b0.holds});
    rows.push_back({"raw and central envelopes hold at x=0.5",
                    theorem1_bounds(2, rc.n, 0.5, pq, cfg).holds &&
                        corollary1_bounds(2, rc.n, 0.5, pq, cfg).holds});
    const auto c2 = corollary1_bounds(2, rc.n, 0.0, pq, cfg);
    const double expect = pq.p() * (pq.p() + pq.q()) / std::pow(pq.q(), 6) *
                          std::pow(pq.p(), rc.n) * std::pow(pq.p(), rc.n - 1) /
                          (pq_integer(rc.n, pq) * pq_integer(rc.n - 1, pq));
    rows.push_back({"psi2 envelope at x=0 reduces to its closed form",
                    std::abs(c2.upper - expect) <= 1e-14 * (1.0 + expect)});
    return report_checks("bounds", rows);
  }

  fs::create_directories(rc.out_dir);
  ordered_json records = ordered_json::array();
  int violations = 0, checked = 0;
  auto add = [&](const char* kind, int i, const BoundsReport& r) {
    records.push_back({{"kind", kind},
                       {"i", i},
                       {"x", r.x},
                       {"actual", r.actual},
                       {"lower", r.lower},
                       {"upper", r.upper},
                       {"holds", r.holds}});
    ++checked;
    if (!r.holds) ++violations;
  };
  for (double x : grid) {
    for (int i = 0; i <= 2; ++i) add("raw", i, theorem1_bounds(i, rc.n, x, pq, cfg));
    for (int i = 1; i <= 2; ++i)
      add("central", i, corollary1_bounds(i, rc.n, x, pq, cfg));
  }
  ordered_json j = base_manifest(rc);
  j["grid"] = grid_json(grid);
  j["records"] = records;
  j["summary"] = {{"checked", checked}, {"violations", violations}};
  write_json_file(fs::path(rc.out_dir) / "bounds.json", j);
  write_json_file(fs::path(rc.out_dir) / "manifest.json", base_manifest(rc));
  std::cout << "bounds: " << checked << " checks, " << violations
            << " violations\n";
  return violations == 0 ? 0 : 1;
}

// --------------------------------------------------------------- converge

int cmd_converge(const RunConfig& rc) {
  if (!rc.use_scheme && (rc.p || rc.q))
    throw std::invalid_argument(
        "converge sweeps n, so it needs --scheme, not a fixed (p,q)");
  const SeqScheme scheme = remark1_scheme(rc.cp, rc.cq);
  const OperatorConfig cfg = make_operator_config(rc);
  const std::vector<double> grid = command_grid(rc, 0.0, 0.01, 0.99);
  const Function1D f =
      parse_function(rc.functions.empty() ? "e2" : rc.functions[0]);

  if (rc.self_test) {
    std::vector<CheckRow> rows;
    const Function1D c = Function1D::polynomial("const", {0.7});
    rows.push_back({"constant function sup error within truncation tolerance",
                    sup_error(c, 10, scheme, cfg, grid) <= 1e-9});
    const PQParams r6 = remark1_scheme(3.0, 2.0).rule(6);
    rows.push_back({"default scheme at n=6 gives (1-1/18, 1-1/12)",
                    std::abs(r6.p() - (1.0 - 1.0 / 18.0)) <= 1e-15 &&
                        std::abs(r6.q() - (1.0 - 1.0 / 12.0)) <= 1e-15});
    rows.push_back({"modulus(e2, 0.1) = 0.19",
                    std::abs(modulus(Function1D::monomial(2), 0.1) - 0.19) <=
                        1e-6});
    return report_checks("converge", rows);
  }

  fs::create_directories(rc.out_dir);
  std::string csv = "n,sup_error,max_alpha,max_delta,empirical_min_C\n";
  for (int n = 10; n <= rc.n; n *= 2) {
    double max_a = 0.0, max_d = 0.0;
    for (double x : grid) {
      max_a = std::max(max_a, alpha_n(n, x, scheme));
      max_d = std::max(max_d, delta_n(n, x, scheme, cfg));
    }
    csv += csv_row({static_cast<double>(n), sup_error(f, n, scheme, cfg, grid),
                    max_a, max_d, empirical_min_C(f, n, scheme, cfg, grid)});
    std::cout << "converge: n=" << n << " done\n";
  }
  write_text(fs::path(rc.out_dir) / "converge.csv", csv);
  ordered_json manifest = base_manifest(rc);
  manifest["grid"] = grid_json(grid);
  manifest["function"] = f.name();
  manifest["C"] = rc.C;
  write_json_file(fs::path(rc.out_dir) / "manifest.json", manifest);
  return 0;
}

// --------------------------------------------------------------- statdemo

int cmd_statdemo(const RunConfig& rc) {
  if (!rc.use_scheme && (rc.p || rc.q))
    throw std::invalid_argument("statdemo needs --scheme, not a fixed (p,q)");
  const SeqScheme scheme = remark1_scheme(rc.cp, rc.cq);

  auto qn = [&](std::int64_t n) { return scheme.rule(static_cast<int>(n)).q(); };
  auto pn = [&](std::int64_t n) { return scheme.rule(static_cast<int>(n)).p(); };
  auto pn_pow = [&](std::int64_t n) {
    return std::pow(scheme.rule(static_cast<int>(n)).p(), static_cast<double>(n));
  };
  auto qn_pow = [&](std::int64_t n) {
    return std::pow(scheme.rule(static_cast<int>(n)).q(), static_cast<double>(n));
  };

  if (rc.self_test) {
    std::vector<CheckRow> rows;
    const auto all = natural_density([](std::int64_t) { return true; }, 1000);
    rows.push_back({"density of the full set is 1", all.density == 1.0});
    const auto sq = natural_density(
        [](std::int64_t j) {
          const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(
              static_cast<double>(j))));
          return r * r == j;
        },
        10000);
    rows.push_back({"squares up to 1e4 have density 0.01", sq.density == 0.01});
    const auto st = st_convergence_check(qn, 1.0, rc.eps, 10000);
    rows.push_back({"q_n violator density at 1e4 is at most 0.005",
                    st.density <= 0.005});
    return report_checks("statdemo", rows);
  }

  const auto d_qn = st_convergence_check(qn, 1.0, rc.eps, rc.N);
  const auto d_pn = st_convergence_check(pn, 1.0, rc.eps, rc.N);
  const auto d_pn_pow = st_convergence_check(pn_pow, scheme.a, rc.eps, rc.N);
  const auto d_qn_pow = st_convergence_check(qn_pow, scheme.b, rc.eps, rc.N);

  fs::create_directories(rc.out_dir);
  std::string csv =
      "N,qn,pn,pn_pow_n,qn_pow_n,dens_qn,dens_pn,dens_pn_pow,dens_qn_pow\n";
  for (std::size_t i = 0; i < d_qn.profile.size(); ++i) {
    const std::int64_t Ni = d_qn.profile[i].first;
    csv += csv_row({static_cast<double>(Ni), qn(Ni), pn(Ni), pn_pow(Ni),
                    qn_pow(Ni), d_qn.profile[i].second, d_pn.profile[i].second,
                    d_pn_pow.profile[i].second, d_qn_pow.profile[i].second});
  }
  write_text(fs::path(rc.out_dir) / "statdemo.csv", csv);
  ordered_json manifest = base_manifest(rc);
  manifest["eps"] = rc.eps;
  manifest["N"] = rc.N;
  manifest["limits"] = {{"qn", 1.0}, {"pn", 1.0}, {"pn_pow_n", scheme.a},
                        {"qn_pow_n", scheme.b}};
  write_json_file(fs::path(rc.out_dir) / "manifest.json", manifest);
  std::cout << "statdemo: N=" << rc.N << " dens(qn)=" << format_g17(d_qn.density)
            << " dens(pn^n)=" << format_g17(d_pn_pow.density) << "\n";
  return 0;
}

}  // namespace

int run_command(const RunConfig& rc) {
  if (rc.use_scheme && (rc.p || rc.q))
    throw std::invalid_argument("give either --p/--q or --scheme, not both");
  if (rc.p.has_value() != rc.q.has_value())
    throw std::invalid_argument("--p and --q must be given together");
  if (rc.n < 1) throw std::invalid_argument("--n must be >= 1");

  switch (rc.command) {
    case Command::figures: return cmd_figures(rc);
    case Command::eval: return cmd_eval(rc);
    case Command::moments: return cmd_moments(rc);
    case Command::bounds: return cmd_bounds(rc);
    case Command::converge: return cmd_converge(rc);
    case Command::statdemo: return cmd_statdemo(rc);
  }
  throw std::logic_error("run_command: unhandled command");
}

}  // namespace pqmkz
