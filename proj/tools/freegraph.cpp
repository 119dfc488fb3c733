// Command-line front end; talks to the library only through freegraph.h.
#include "freegraph/freegraph.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace {

struct Sub {
  CLI::App* app = nullptr;
  std::string command;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
};

void add_value(Sub& s, const std::string& key, const std::string& help, bool positional = false) {
  auto& slot = s.values[key];
  if (positional)
    s.app->add_option(key, slot, help)->required();
  else
    s.app->add_option("--" + key, slot, help);
}

void add_flag(Sub& s, const std::string& key, const std::string& help) {
  s.app->add_flag("--" + key, s.flags[key], help);
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free probability on weighted graphs: traces, laws, Fock-model checks and block-Wishart simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string tol, seed, out;
  bool quiet = false;
  app.add_option("--tol", tol, "Tolerance for consistency checks (default 1e-9)");
  app.add_option("--seed", seed, "Random seed (default 0)");
  app.add_option("--out", out, "Write the report here instead of stdout");
  app.add_flag("--quiet", quiet, "Do not print the report");

  std::vector<Sub> subs(7);
  auto make = [&](std::size_t i, const std::string& name, const std::string& help) -> Sub& {
    subs[i].command = name;
    subs[i].app = app.add_subcommand(name, help);
    return subs[i];
  };

  {
    Sub& s = make(0, "classify", "Vertex classification and structure report");
    add_value(s, "graph", "Graph file", true);
  }
  {
    Sub& s = make(1, "trace", "Canonical trace of a word or expression");
    add_value(s, "graph", "Graph file", true);
    add_value(s, "word", "Oriented-edge labels, e.g. e1+,e1-");
    add_value(s, "expr", "Polynomial expression");
    add_flag(s, "exact", "Rational arithmetic (requires rational sqrt(mu(s)mu(t)))");
  }
  {
    Sub& s = make(2, "moments", "Moment table k,m_k of a corner element");
    add_value(s, "graph", "Graph file", true);
    add_value(s, "expr", "Self-adjoint expression");
    add_value(s, "vertex", "Corner vertex (default: inferred)");
    add_value(s, "max-order", "Highest moment (default 8)");
    add_flag(s, "exact", "Rational arithmetic");
  }
  {
    Sub& s = make(3, "law", "Spectral law estimate from moments");
    add_value(s, "graph", "Graph file", true);
    add_value(s, "expr", "Self-adjoint expression");
    add_value(s, "vertex", "Corner vertex (default: inferred)");
    add_value(s, "max-order", "Number of moments (default 20)");
    add_value(s, "eta", "Imaginary offset for Stieltjes inversion (default 1e-3)");
    add_value(s, "grid-points", "Grid size (default 2000)");
    add_value(s, "grid-lo", "Grid start");
    add_value(s, "grid-hi", "Grid end");
    add_value(s, "max-dz", "Relation search bound in z (default 4)");
    add_value(s, "max-dg", "Relation search bound in G (default 4)");
    add_value(s, "density", "Write x,density CSV here");
  }
  {
    Sub& s = make(4, "series", "Solve the algebraic system for the loop-trace series");
    add_value(s, "graph", "Graph file", true);
    add_value(s, "degree", "Truncation degree (default 6)");
    add_value(s, "vertex", "Only this base vertex");
    add_flag(s, "check", "Cross-check coefficients against the trace engine");
  }
  {
    Sub& s = make(5, "fock-check", "Identity suite on the truncated Fock model");
    add_value(s, "graph", "Graph file", true);
    add_value(s, "depth", "Truncation depth (default 5)");
    add_value(s, "commutator-tol", "Tolerance for exact operator identities (default 1e-12)");
    add_value(s, "random-polys", "Random polynomials for --calculus (default 100)");
    add_flag(s, "calculus", "Also run the free difference quotient identities");
  }
  {
    Sub& s = make(6, "wishart", "Block-Wishart Monte Carlo against trace predictions");
    add_value(s, "ratios", "Block ratios gamma_1..gamma_k, gamma_1 = 1 (default 1,2)");
    add_value(s, "n", "Base size (default 100)");
    add_value(s, "samples", "Sample count (default 100)");
    add_value(s, "expr", "Expression over X[e<i>_<j>+/-] (default X[e1_2+]*X[e1_2-])");
    add_value(s, "max-moment", "Highest moment (default 4)");
    add_value(s, "hist", "Write eigenvalue histogram CSV here");
    add_value(s, "bins", "Histogram bins (default 50)");
    add_flag(s, "diagonal", "Add loops mapped to (A_ii + A_ii*)/sqrt(2)");
  }

  CLI11_PARSE(app, argc, argv);

  Sub* chosen = nullptr;
  for (auto& s : subs)
    if (s.app->parsed()) chosen = &s;

  fg_config* cfg = nullptr;
  auto fail = [&](const char* msg) {
    std::fprintf(stderr, "freegraph: error: %s\n", msg);
    fg_config_free(cfg);
    return 1;
  };
  if (fg_config_new(chosen->command.c_str(), &cfg) != FG_OK) return fail(fg_last_error());

  std::vector<std::pair<std::string, std::string>> settings;
  if (chosen->command == "law") settings.emplace_back("max-order", "20");
  if (!tol.empty()) settings.emplace_back("tol", tol);
  if (!seed.empty()) settings.emplace_back("seed", seed);
  for (const auto& [k, v] : chosen->values) {
    const std::string opt = k == "graph" ? "graph" : "--" + k;
    if (chosen->app->count(opt) > 0) settings.emplace_back(k, v);
  }
  for (const auto& [k, v] : chosen->flags)
    if (v) settings.emplace_back(k, "true");
  for (const auto& [k, v] : settings)
    if (fg_config_set(cfg, k.c_str(), v.c_str()) != FG_OK) return fail(fg_last_error());

  fg_report* rep = nullptr;
  if (fg_run(cfg, &rep) != FG_OK) return fail(fg_last_error());
  fg_config_free(cfg);
  cfg = nullptr;

  int code = fg_report_exit_code(rep);
  const std::string text = fg_report_text(rep);
  if (!out.empty()) {
    if (!write_file(out, text)) {
      fg_report_free(rep);
      return fail(("cannot write " + out).c_str());
    }
  } else if (!quiet) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  }
  for (size_t i = 0; i < fg_report_file_count(rep); ++i) {
    const std::string path = fg_report_file_path(rep, i);
    if (!write_file(path, fg_report_file_content(rep, i))) {
      fg_report_free(rep);
      return fail(("cannot write " + path).c_str());
    }
  }
  fg_report_free(rep);
  return code;
}
