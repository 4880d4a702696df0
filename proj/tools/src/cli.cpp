// Copyright 2026 The gltrees Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gltrees_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gltrees/digest.hpp"
#include "gltrees/errors.hpp"
#include "gltrees/gl_algebra.hpp"
#include "gltrees/inverse.hpp"
#include "gltrees/poly.hpp"
#include "gltrees/quotient.hpp"
#include "gltrees/trees.hpp"
#include "selftest.hpp"

namespace gltrees::cli {

namespace {

using nlohmann::json;

struct Config {
  bool json = false;
  std::string out_dir;
  std::optional<unsigned> threads;
  std::size_t max_vertices = kDefaultMaxVertices;
  std::size_t max_rows = QuotientOptions{}.max_rows;
  std::size_t max_degree = QuotientOptions{}.max_degree;
  bool allow_large = false;

  unsigned thread_count() const {
    if (threads) return std::max(1u, *threads);
    if (const char* env = std::getenv("GLTREES_THREADS")) {
      try {
        const long v = std::stol(env);
        if (v > 0) return static_cast<unsigned>(v);
      } catch (const std::exception&) {
      }
      throw std::invalid_argument(std::string("GLTREES_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
  }
};

/// What a command hands back for printing and certificate persistence.
struct Outcome {
  std::string command;
  json parameters;
  json payload;  // deterministic
  std::string text;
  int exit_code = kOk;
  bool certify = true;
  bool text_is_json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_comments(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    out += line + " ";
  }
  return out;
}

std::size_t infer_variables(const std::string& text) {
  std::size_t n = 1;
  static const std::regex var("x([0-9]+)");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
    n = std::max<std::size_t>(n, std::stoul((*it)[1].str()));
  }
  return n;
}

Polynomial load_potential(const std::string& path, std::optional<std::size_t> n) {
  const std::string text = strip_comments(read_file(path));
  return parse_poly(text, n ? *n : infer_variables(text));
}

std::optional<int> parse_e(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::nullopt;
  std::size_t used = 0;
  int e = 0;
  try {
    e = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || e < 1) throw std::invalid_argument("--e must be a positive integer or 'inf'");
  return e;
}

json vector_json(const TreeVector& v) {
  json terms = json::array();
  for (const auto& [t, c] : v) terms.push_back({{"tree", t.code()}, {"coefficient", to_string(c)}});
  return terms;
}

json vector_json(const RootedVector& v) {
  json terms = json::array();
  for (const auto& [t, c] : v) terms.push_back({{"tree", t.code()}, {"coefficient", to_string(c)}});
  return terms;
}

json map_json(const PolyMap& f) {
  json out = json::array();
  for (const auto& fi : f) out.push_back(to_string(fi));
  return out;
}

std::string certificate_name(const Outcome& o) {
  std::string name = o.command;
  std::replace(name.begin(), name.end(), ' ', '-');
  for (const auto& [k, v] : o.parameters.items()) {
    std::string value = v.is_string() ? v.get<std::string>() : v.dump();
    std::string clean;
    for (char c : value) clean += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    name += "_" + k + clean;
  }
  return name;
}

void write_certificate(const Config& cfg, const Outcome& o, double seconds, std::ostream& err) {
  if (cfg.out_dir.empty() || !o.certify) return;
  std::filesystem::create_directories(cfg.out_dir);
  json cert;
  cert["schema"] = "gltrees.certificate/1";
  cert["command"] = o.command;
  cert["parameters"] = o.parameters;
  cert["payload"] = o.payload;
  cert["tool_version"] = GLTREES_VERSION;
  cert["content_hash"] = sha256_hex(cert.dump());
  const std::filesystem::path base = std::filesystem::path(cfg.out_dir) / certificate_name(o);
  std::ofstream(base.string() + ".json") << cert.dump(2) << "\n";
  // Timing varies between runs, so it lives beside the certificate, not in it.
  json timing = {{"content_hash", cert["content_hash"]}, {"wall_clock_seconds", seconds}};
  std::ofstream(base.string() + ".timing.json") << timing.dump(2) << "\n";
  err << "certificate: " << base.string() << ".json\n";
}

QuotientOptions quotient_options(const Config& cfg) {
  QuotientOptions opt;
  opt.max_degree = cfg.max_degree;
  opt.max_rows = cfg.max_rows;
  opt.allow_large = cfg.allow_large;
  opt.threads = cfg.thread_count();
  return opt;
}

// ---------------------------------------------------------------------------
// Commands

struct TreesArgs {
  std::size_t vertices = 0;
  bool rooted = false;
  std::string code;
  int r = 0;
};

Outcome trees_enum(const Config& cfg, const TreesArgs& a) {
  const std::size_t bound = cfg.allow_large ? std::max(a.vertices, cfg.max_vertices) : cfg.max_vertices;
  json trees = json::array();
  std::string text;
  auto emit = [&](const std::string& code) {
    trees.push_back(code);
    text += code + "\n";
  };
  if (a.rooted) {
    for (const auto& t : enumerate_rooted(a.vertices, bound)) emit(t.code());
  } else {
    for (const auto& t : enumerate_free(a.vertices, bound)) emit(t.code());
  }
  Outcome o{"trees enum", {{"vertices", a.vertices}, {"rooted", a.rooted}}, {}, text};
  o.payload = {{"count", trees.size()}, {"trees", trees}};
  return o;
}

Outcome trees_aut(const TreesArgs& a) {
  const std::uint64_t order = a.rooted ? aut_order(parse_rooted(a.code)) : aut_order(parse_free(a.code));
  const std::string code = a.rooted ? parse_rooted(a.code).code() : parse_free(a.code).code();
  Outcome o{"trees aut", {{"code", code}, {"rooted", a.rooted}}, {{"aut_order", order}}, std::to_string(order) + "\n"};
  return o;
}

Outcome trees_chain(const TreesArgs& a) {
  const FreeTree t = parse_free(a.code);
  const bool has = has_naked_chain(t, a.r);
  return {"trees chain", {{"code", t.code()}, {"r", a.r}}, {{"has_naked_chain", has}}, has ? "true\n" : "false\n"};
}

Outcome trees_canon(const TreesArgs& a) {
  const std::string code = a.rooted ? parse_rooted(a.code).code() : parse_free(a.code).code();
  return {"trees canon", {{"input", a.code}, {"rooted", a.rooted}}, {{"code", code}}, code + "\n"};
}

struct GlArgs {
  std::string s, t;
  bool module = false;
};

Outcome gl_product_cmd(const GlArgs& a) {
  const RootedTree s = parse_rooted(a.s);
  Outcome o{"gl product", {{"s", s.code()}, {"module", a.module}}, {}, {}};
  if (a.module) {
    const FreeTree t = parse_free(a.t);
    const TreeVector v = gl_act(s, t);
    o.parameters["t"] = t.code();
    o.payload = {{"terms", vector_json(v)}};
    o.text = to_string(v);
  } else {
    const RootedTree t = parse_rooted(a.t);
    const RootedVector v = gl_product(s, t);
    o.parameters["t"] = t.code();
    o.payload = {{"terms", vector_json(v)}};
    o.text = to_string(v);
  }
  return o;
}

struct QuotArgs {
  int r = 0;
  std::string e;
  std::size_t m = 0;
  std::size_t M = 0;
  bool nu = false;
  std::string mode = "single-branch";
  std::string rank_method = "auto";
};

void apply_quot_args(QuotientOptions& opt, const QuotArgs& a) {
  opt.mode = a.mode == "full" ? SpanningMode::full : SpanningMode::single_branch;
  opt.rank_method = a.rank_method == "fraction-free" ? RankMethod::fraction_free
                    : a.rank_method == "modular"     ? RankMethod::modular
                                                     : RankMethod::automatic;
}

std::string report_line(const QuotientReport& rep) {
  std::ostringstream s;
  s << "m=" << rep.params.m << "  dim M=" << rep.dim_module << "  rank N=" << rep.rank
    << "  dim quotient=" << rep.dim_quotient;
  if (rep.nu_in_submodule) s << "  nu in N: " << (*rep.nu_in_submodule ? "yes" : "no");
  return s.str();
}

Outcome quot_rank(const Config& cfg, const QuotArgs& a) {
  QuotientOptions opt = quotient_options(cfg);
  apply_quot_args(opt, a);
  const std::optional<int> e = parse_e(a.e);
  SubmoduleTower tower(a.r, e, opt);
  const QuotientReport rep = tower.report(a.m, a.nu);
  Outcome o{"quot rank", {{"r", a.r}, {"e", format_e(e)}, {"m", a.m}, {"nu", a.nu}, {"mode", to_string(opt.mode)}},
            rep.payload(), {}};
  if (cfg.json) {
    o.text = rep.to_json().dump(2) + "\n";
    o.text_is_json = true;
  } else {
    std::ostringstream s;
    s << "(r=" << a.r << ", e=" << format_e(e) << ") " << report_line(rep) << "\n"
      << "generators: " << rep.chain_trees << " chain trees, " << rep.high_degree_trees << " high-degree trees, "
      << rep.product_vectors << " product vectors\n"
      << "rank method: " << rep.rank_method << "\n"
      << "content hash: " << rep.content_hash << "\n";
    o.text = s.str();
  }
  return o;
}

Outcome quot_window(const Config& cfg, const QuotArgs& a) {
  QuotientOptions opt = quotient_options(cfg);
  apply_quot_args(opt, a);
  const std::optional<int> e = parse_e(a.e);
  const WindowReport w = gap_window_check(a.r, e, a.M, opt);
  json payload = w.to_json();
  Outcome o{"quot window", {{"r", a.r}, {"e", format_e(e)}, {"M", a.M}}, payload, {}};
  if (cfg.json) {
    o.text = payload.dump(2) + "\n";
    o.text_is_json = true;
  } else {
    std::ostringstream s;
    s << "(r=" << a.r << ", e=" << format_e(e) << ") window " << a.M + 1 << ".." << 2 * a.M << "\n";
    for (const auto& q : w.degrees) s << "  " << report_line(q) << "\n";
    if (!w.complete) s << "stopped: " << w.stopped_reason << "\n";
    s << "verdict: " << (w.verdict ? "nu vanishes on the whole window" : "not established") << "\n";
    o.text = s.str();
  }
  if (!w.complete) o.exit_code = kGuard;
  return o;
}

struct PolyArgs {
  std::string file;
  std::optional<std::size_t> n;
  std::optional<unsigned> nilpotent;
};

Outcome poly_hess(const Config& cfg, const PolyArgs& a) {
  const Polynomial p = load_potential(a.file, a.n);
  const PolyMatrix h = hessian(p);
  json rows = json::array();
  for (const auto& row : h) rows.push_back(map_json(row));
  Outcome o{"poly hess", {{"polynomial", to_string(p)}, {"n", p.variables()}}, {{"hessian", rows}}, {}};
  std::string text = "P = " + to_string(p) + "\nHess P =\n" + to_string(h);
  if (a.nilpotent) {
    const bool nil = mat_nilpotent(h, *a.nilpotent);
    o.parameters["nilpotent"] = *a.nilpotent;
    o.payload["nilpotent"] = nil;
    text += "(Hess P)^" + std::to_string(*a.nilpotent) + " = 0: " + (nil ? "true" : "false") + "\n";
    if (!nil) o.exit_code = kVerification;
  }
  o.text = cfg.json ? o.payload.dump(2) + "\n" : text;
  o.text_is_json = cfg.json;
  return o;
}

struct InvArgs {
  std::string potential;
  std::optional<std::size_t> n;
  std::size_t mmax = 0;
  std::size_t M = 0;
  std::string method = "zhao";
  bool verify = false;
};

json series_json(const InverseSeries& s) {
  json out = json::array();
  for (std::size_t m = 1; m <= s.size(); ++m) {
    const Polynomial& q = s.q[m - 1];
    json entry = {{"m", m}, {"Q", to_string(q)}, {"N", map_json(s.n[m - 1])}, {"homogeneous", q.is_homogeneous()}};
    entry["degree"] = q.degree() ? json(*q.degree()) : json(nullptr);
    out.push_back(std::move(entry));
  }
  return out;
}

std::string series_text(const InverseSeries& s) {
  std::string out;
  for (std::size_t m = 1; m <= s.size(); ++m) out += "Q^(" + std::to_string(m) + ") = " + to_string(s.q[m - 1]) + "\n";
  return out;
}

Outcome inv_series(const Config& cfg, const InvArgs& a) {
  const Polynomial p = load_potential(a.potential, a.n);
  InverseOptions opt;
  opt.max_tree_vertices = cfg.max_vertices;
  Outcome o{"inv series", {{"potential", to_string(p)}, {"n", p.variables()}, {"mmax", a.mmax}, {"method", a.method}},
            {}, {}};
  std::optional<InverseSeries> tree, zhao;
  if (a.method == "tree" || a.method == "both") tree = q_series_tree(p, a.mmax, opt);
  if (a.method == "zhao" || a.method == "both") zhao = q_series_zhao(p, a.mmax, opt);
  const InverseSeries& main = zhao ? *zhao : *tree;
  o.payload = {{"series", series_json(main)}, {"source", to_string(main.source)}};
  std::string text = series_text(main);
  if (tree && zhao) {
    for (std::size_t m = 1; m <= a.mmax; ++m) {
      if (!(tree->q[m - 1] == zhao->q[m - 1])) {
        throw VerificationError("tree formula and recursion disagree at Q^(" + std::to_string(m) + ")");
      }
    }
    o.payload["methods_agree"] = true;
    text += "tree formula and recursion agree through m=" + std::to_string(a.mmax) + "\n";
  }
  o.text = cfg.json ? o.payload.dump(2) + "\n" : text;
  o.text_is_json = cfg.json;
  return o;
}

Outcome inv_gap(const Config& cfg, const InvArgs& a) {
  const Polynomial p = load_potential(a.potential, a.n);
  InverseOptions opt;
  opt.max_tree_vertices = cfg.max_vertices;
  const GapInversion g = gap_inversion(p, a.M, opt);
  Outcome o{"inv gap", {{"potential", to_string(p)}, {"n", p.variables()}, {"M", a.M}, {"verify", a.verify}}, {}, {}};
  json q = json::array();
  for (const auto& qi : g.q) q.push_back(to_string(qi));
  o.payload = {{"Q", q}, {"cross_checked", g.cross_checked}};
  o.payload["obstruction"] = g.obstruction ? json(*g.obstruction) : json(nullptr);
  std::string text;
  if (g.inverse) {
    const PolyMap f = special_map(p);
    o.payload["inverse"] = map_json(*g.inverse);
    o.payload["inverse_degree"] = degree(*g.inverse).value_or(0);
    text += "G = X + sum_{m<=" + std::to_string(a.M) + "} grad Q^(m):\n" + to_string(*g.inverse);
    if (a.verify) {
      const unsigned trunc = degree(f).value_or(1) * degree(*g.inverse).value_or(1);
      const bool ok = verify_inverse(f, *g.inverse, trunc);
      o.payload["verified"] = ok;
      text += std::string("F o G = G o F = X: ") + (ok ? "verified" : "FAILED") + " (truncation " +
              std::to_string(trunc) + ")\n";
      if (!ok) o.exit_code = kVerification;
    }
  } else {
    o.payload["inverse"] = nullptr;
    text += "no polynomial inverse from this window: Q^(" + std::to_string(*g.obstruction) + ") != 0\n";
  }
  o.text = cfg.json ? o.payload.dump(2) + "\n" : text;
  o.text_is_json = cfg.json;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gltrees: tree formulas, Grossman-Larson quotient modules and formal inverses", "gltrees"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(GLTREES_VERSION));

  Config cfg;
  app.add_flag("--json", cfg.json, "Machine-readable output");
  app.add_option("--out", cfg.out_dir, "Write certificates into this directory");
  app.add_option("--threads", cfg.threads, "Worker threads (default: GLTREES_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--max-vertices", cfg.max_vertices, "Tree enumeration guard")->check(CLI::PositiveNumber);
  app.add_option("--max-rows", cfg.max_rows, "Spanning-set size guard")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", cfg.max_degree, "Quotient degree guard")->check(CLI::PositiveNumber);
  app.add_flag("--allow-large", cfg.allow_large, "Lift the resource guards");

  std::function<Outcome()> action;

  TreesArgs ta;
  auto* trees = app.add_subcommand("trees", "Tree enumeration and invariants")->require_subcommand(1);
  auto* t_enum = trees->add_subcommand("enum", "List trees with M vertices by canonical code");
  t_enum->add_option("--vertices", ta.vertices)->required()->check(CLI::PositiveNumber);
  t_enum->add_flag("--rooted", ta.rooted);
  t_enum->callback([&] { action = [&] { return trees_enum(cfg, ta); }; });
  auto* t_aut = trees->add_subcommand("aut", "Automorphism group order");
  t_aut->add_option("code", ta.code)->required();
  t_aut->add_flag("--rooted", ta.rooted);
  t_aut->callback([&] { action = [&] { return trees_aut(ta); }; });
  auto* t_chain = trees->add_subcommand("chain", "Whether a free tree contains a naked r-chain");
  t_chain->add_option("code", ta.code)->required();
  t_chain->add_option("--r", ta.r)->required()->check(CLI::Range(2, 1 << 20));
  t_chain->callback([&] { action = [&] { return trees_chain(ta); }; });
  auto* t_canon = trees->add_subcommand("canon", "Canonical code of a code or edge list \"1-2,2-3\"");
  t_canon->add_option("tree", ta.code)->required();
  t_canon->add_flag("--rooted", ta.rooted);
  t_canon->callback([&] { action = [&] { return trees_canon(ta); }; });

  GlArgs ga;
  auto* gl = app.add_subcommand("gl", "Grossman-Larson product and module action")->require_subcommand(1);
  auto* g_prod = gl->add_subcommand("product", "S.T for rooted S and rooted T (free T with --module)");
  g_prod->add_option("S", ga.s)->required();
  g_prod->add_option("T", ga.t)->required();
  g_prod->add_flag("--module", ga.module);
  g_prod->callback([&] { action = [&] { return gl_product_cmd(ga); }; });

  QuotArgs qa;
  auto* quot = app.add_subcommand("quot", "Quotient modules M/N(r,e)")->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--r", qa.r)->required()->check(CLI::Range(2, 1 << 20));
    sub->add_option("--e", qa.e, "Degree bound or 'inf'")->required();
    sub->add_option("--mode", qa.mode)->check(CLI::IsMember({"single-branch", "full"}));
    sub->add_option("--rank-method", qa.rank_method)->check(CLI::IsMember({"auto", "fraction-free", "modular"}));
  };
  auto* q_rank = quot->add_subcommand("rank", "Rank of N(r,e) and dimension of the quotient in degree m");
  add_common(q_rank);
  q_rank->add_option("--m", qa.m)->required()->check(CLI::PositiveNumber);
  q_rank->add_flag("--nu", qa.nu, "Also decide whether nu_m lies in N(r,e)");
  q_rank->callback([&] { action = [&] { return quot_rank(cfg, qa); }; });
  auto* q_window = quot->add_subcommand("window", "Check nu_m in N(r,e) for M+1 <= m <= 2M");
  add_common(q_window);
  q_window->add_option("--M", qa.M)->required()->check(CLI::PositiveNumber);
  q_window->callback([&] { action = [&] { return quot_window(cfg, qa); }; });

  PolyArgs pa;
  auto* poly = app.add_subcommand("poly", "Polynomials over Q(i)")->require_subcommand(1);
  auto* p_hess = poly->add_subcommand("hess", "Hessian of the polynomial in FILE");
  p_hess->add_option("file", pa.file)->required()->check(CLI::ExistingFile);
  p_hess->add_option("--n", pa.n, "Variable count (default: largest index used)")->check(CLI::Range(1, 16));
  p_hess->add_option("--nilpotent", pa.nilpotent, "Test (Hess P)^R = 0")->check(CLI::PositiveNumber);
  p_hess->callback([&] { action = [&] { return poly_hess(cfg, pa); }; });

  InvArgs ia;
  auto* inv = app.add_subcommand("inv", "Formal inverses of X - grad P")->require_subcommand(1);
  auto* i_series = inv->add_subcommand("series", "Q^(1..mmax)");
  i_series->add_option("--potential", ia.potential)->required()->check(CLI::ExistingFile);
  i_series->add_option("--n", ia.n)->check(CLI::Range(1, 16));
  i_series->add_option("--mmax", ia.mmax)->required()->check(CLI::PositiveNumber);
  i_series->add_option("--method", ia.method)->check(CLI::IsMember({"tree", "zhao", "both"}));
  i_series->callback([&] { action = [&] { return inv_series(cfg, ia); }; });
  auto* i_gap = inv->add_subcommand("gap", "Polynomial inverse when Q^(M+1..2M) vanish");
  i_gap->add_option("--potential", ia.potential)->required()->check(CLI::ExistingFile);
  i_gap->add_option("--n", ia.n)->check(CLI::Range(1, 16));
  i_gap->add_option("--M", ia.M)->required()->check(CLI::PositiveNumber);
  i_gap->add_flag("--verify", ia.verify, "Check F o G = G o F = X exactly");
  i_gap->callback([&] { action = [&] { return inv_gap(cfg, ia); }; });

  std::string level = "quick";
  auto* selftest = app.add_subcommand("selftest", "Replay the built-in checks");
  selftest->add_option("--level", level)->check(CLI::IsMember({"quick", "paper", "extended"}));
  selftest->callback([&] {
    action = [&] {
      const SelftestLevel lv = level == "extended" ? SelftestLevel::extended
                               : level == "paper"  ? SelftestLevel::paper
                                                   : SelftestLevel::quick;
      std::ostringstream report;
      const std::size_t failures = run_selftest(lv, cfg.thread_count(), report);
      Outcome o{"selftest", {{"level", level}}, {{"failures", failures}}, report.str()};
      o.certify = false;
      o.exit_code = failures ? kVerification : kOk;
      return o;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << GLTREES_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    for (auto* sub = &app; sub;) {
      auto chosen = sub->get_subcommands();
      if (chosen.empty()) {
        err << sub->help();
        break;
      }
      sub = chosen.front();
    }
    return kUsage;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = action();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.json && !o.text_is_json) {
      json j = o.payload;
      j["parameters"] = o.parameters;
      o.text = j.dump(2) + "\n";
    }
    out << o.text;
    write_certificate(cfg, o, seconds, err);
    return o.exit_code;
  } catch (const ResourceLimitError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kGuard;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace gltrees::cli
