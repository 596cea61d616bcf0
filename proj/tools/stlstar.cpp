#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "stlstar/io.hpp"
#include "stlstar/oracle.hpp"
#include "stlstar/satset.hpp"
#include "stlstar/signal.hpp"
#include "stlstar/simulate.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitBoundary = 2;
constexpr int kExitShort = 3;
constexpr int kExitParse = 4;
constexpr int kExitError = 5;

int verdict_exit(stlstar::Verdict v) {
  switch (v) {
    case stlstar::Verdict::SAT: return kExitSat;
    case stlstar::Verdict::UNSAT: return kExitUnsat;
    default: return kExitBoundary;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string formula_text(const std::string& inline_expr,
                         const std::string& file) {
  if (!inline_expr.empty()) return inline_expr;
  std::string text = read_file(file);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.pop_back();
  return text;
}

stlstar::FormulaPtr parse_or_exit(const std::string& text,
                                  const stlstar::SignalSchema& schema) {
  std::vector<std::string> warnings;
  stlstar::FormulaPtr f = stlstar::parse(text, schema, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return f;
}

std::vector<stlstar::sim::RepressilatorParams> load_grid(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) return {};
  std::vector<std::string> cols;
  {
    std::stringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  std::vector<stlstar::sim::RepressilatorParams> grid;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    stlstar::sim::RepressilatorParams p;
    std::stringstream ls(line);
    std::string cell;
    size_t k = 0;
    while (std::getline(ls, cell, ',')) {
      if (k >= cols.size())
        throw std::runtime_error("grid row has more cells than header");
      const std::string& col = cols[k++];
      if (col == "alpha") p.alpha = std::stod(cell);
      else if (col == "alpha0") p.alpha0 = std::stod(cell);
      else if (col == "beta") p.beta = std::stod(cell);
      else if (col == "n") p.n = std::stod(cell);
      else if (col == "t_end") p.t_end = stlstar::parse_rational(cell);
      else if (col == "samples") p.samples = std::stoi(cell);
      else if (col == "dt") p.dt = std::stod(cell);
      else throw std::runtime_error("unknown grid column: " + col);
    }
    grid.push_back(p);
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline monitor for temporal logic with a value-freeze "
               "operator over piecewise-linear signals"};
  app.require_subcommand(1);

  std::string sig_path, expr, expr_file, out_path, node_sel = "root";
  std::string grid_path, formulas_path;
  double eps = -1, delta = -1;
  bool allow_short = false, as_json = false;
  int factor = 2;
  stlstar::sim::RepressilatorParams sp;
  double t_end_d = 300;

  auto add_formula_opts = [&](CLI::App* c) {
    c->add_option("-s,--signal", sig_path, "signal CSV")->required();
    auto* e = c->add_option("-e,--expr", expr, "formula text");
    c->add_option("-f,--formula-file", expr_file, "file with formula text")
        ->excludes(e);
  };

  auto* c_check = app.add_subcommand(
      "check", "parse a formula and report its required signal length");
  add_formula_opts(c_check);

  auto* c_mon = app.add_subcommand("monitor", "decide signal satisfaction");
  add_formula_opts(c_mon);
  c_mon->add_option("--eps", eps, "geometric tolerance override");
  c_mon->add_flag("--allow-short", allow_short,
                  "monitor even if the signal is shorter than required");
  c_mon->add_flag("--json", as_json, "emit a JSON report");

  auto* c_sim = app.add_subcommand("simulate", "integrate the oscillator ODEs");
  c_sim->add_option("--alpha", sp.alpha);
  c_sim->add_option("--alpha0", sp.alpha0);
  c_sim->add_option("--beta", sp.beta);
  c_sim->add_option("--n", sp.n);
  c_sim->add_option("--t-end", t_end_d);
  c_sim->add_option("--samples", sp.samples);
  c_sim->add_option("--dt", sp.dt);
  c_sim->add_option("-o,--output", out_path, "output CSV")->required();

  auto* c_sweep = app.add_subcommand("sweep", "monitor over a parameter grid");
  c_sweep->add_option("--grid", grid_path, "parameter grid CSV")->required();
  c_sweep->add_option("--formulas", formulas_path, "file, one formula per line")
      ->required();
  c_sweep->add_option("-o,--output", out_path, "verdict table CSV")->required();

  auto* c_render = app.add_subcommand("render", "plot a satisfaction set");
  add_formula_opts(c_render);
  c_render->add_option("--node", node_sel, "node id (n0, n1, ...) or 'root'");
  c_render->add_option("-o,--output", out_path, "output SVG")->required();
  c_render->add_option("--eps", eps, "geometric tolerance override");

  auto* c_refine = app.add_subcommand(
      "refine", "split every signal segment into equal pieces");
  c_refine->add_option("-s,--signal", sig_path, "signal CSV")->required();
  c_refine->add_option("--factor", factor, "pieces per segment")
      ->check(CLI::PositiveNumber);
  c_refine->add_option("-o,--output", out_path, "output CSV")->required();

  auto* c_diff = app.add_subcommand(
      "oracle-diff", "compare the engine against the lattice reference");
  add_formula_opts(c_diff);
  c_diff->add_option("--delta", delta, "lattice spacing (default: derived)");
  c_diff->add_option("--eps", eps, "geometric tolerance override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed() || c_mon->parsed() || c_render->parsed() ||
        c_diff->parsed()) {
      stlstar::Signal s = stlstar::load_csv_file(sig_path);
      if (expr.empty() && expr_file.empty())
        throw CLI::RequiredError("-e or -f");
      stlstar::FormulaPtr f;
      try {
        f = parse_or_exit(formula_text(expr, expr_file), s.schema());
      } catch (const stlstar::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
      }

      if (c_check->parsed()) {
        auto ls = stlstar::check_length(s, f);
        std::cout << "formula: " << stlstar::pretty_print(f, s.schema())
                  << "\nrequired length: " << stlstar::rat_to_string(ls.needed)
                  << "\nsignal length:   " << stlstar::rat_to_string(ls.have)
                  << "\nlength ok: " << (ls.ok ? "yes" : "no") << "\n";
        return ls.ok ? kExitSat : kExitShort;
      }

      stlstar::MonitorOptions opts;
      opts.allow_short = allow_short;
      opts.eps_override = eps;
      opts.keep_intermediate = c_render->parsed() || c_diff->parsed() || as_json;

      if (c_diff->parsed()) {
        stlstar::oracle::GridSpec g = delta < 0
            ? stlstar::oracle::default_grid(s)
            : stlstar::oracle::GridSpec{stlstar::parse_rational(
                  std::to_string(delta))};
        if (!(g.step > 0)) {
          std::cerr << "error: --delta must be positive\n";
          return kExitError;
        }
        stlstar::MonitorReport rep = stlstar::monitor(s, f, opts);
        auto diffs = stlstar::oracle::compare(s, f, g, rep.nodes.back().region);
        if (diffs.empty()) {
          std::cout << "no disagreements\n";
          return 0;
        }
        for (const auto& d : diffs)
          std::cout << "disagreement at t=" << d.t << " t*=" << d.tstar
                    << " engine=" << (d.engine ? "true" : "false")
                    << " reference=" << (d.oracle ? "true" : "false") << "\n";
        return 1;
      }

      stlstar::MonitorReport rep;
      try {
        rep = stlstar::monitor(s, f, opts);
      } catch (const stlstar::ShortSignalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitShort;
      }

      if (c_render->parsed()) {
        const stlstar::NodeSet* node = nullptr;
        if (node_sel == "root") {
          node = &rep.nodes.back();
        } else {
          for (const auto& n : rep.nodes)
            if (n.id == node_sel) node = &n;
          if (!node) throw std::runtime_error("unknown node id: " + node_sel);
        }
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << stlstar::region_to_svg(node->region, node->formula);
        std::cout << "wrote " << out_path << "\n";
        return verdict_exit(rep.verdict);
      }

      if (as_json)
        std::cout << stlstar::report_to_json(rep).dump(2) << "\n";
      else
        std::cout << stlstar::verdict_name(rep.verdict) << "\n";
      return verdict_exit(rep.verdict);
    }

    if (c_sim->parsed()) {
      sp.t_end = stlstar::parse_rational(std::to_string(t_end_d));
      stlstar::Signal s = stlstar::sim::integrate(sp);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      stlstar::save_csv(s, out);
      std::cout << "wrote " << out_path << "\n";
      return 0;
    }

    if (c_sweep->parsed()) {
      auto grid = load_grid(grid_path);
      std::vector<std::string> formulas;
      {
        std::istringstream in(read_file(formulas_path));
        std::string line;
        while (std::getline(in, line))
          if (!line.empty()) formulas.push_back(line);
      }
      auto rows = stlstar::sim::sweep(grid, formulas);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      stlstar::sim::sweep_to_csv(rows, out);
      std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
      return 0;
    }

    if (c_refine->parsed()) {
      stlstar::Signal s = stlstar::load_csv_file(sig_path);
      stlstar::Signal fine = s.refine(factor);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      stlstar::save_csv(fine, out);
      std::cout << "wrote " << out_path << " (" << fine.sample_count()
                << " samples)\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
