// lmodel command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success / true, 1 definite negative answer, 2 usage or data error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lmodel/lmodel.h"

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

// Thrown to unwind to main with a message and exit code 2.
struct Failure {
  std::string message;
};

struct GraphDeleter {
  void operator()(lm_graph* g) const { lm_graph_free(g); }
};
struct PairsDeleter {
  void operator()(lm_pairs* p) const { lm_pairs_free(p); }
};
struct HeightsDeleter {
  void operator()(lm_heights* h) const { lm_heights_free(h); }
};
struct StringDeleter {
  void operator()(char* s) const { lm_string_free(s); }
};
using GraphPtr = std::unique_ptr<lm_graph, GraphDeleter>;
using PairsPtr = std::unique_ptr<lm_pairs, PairsDeleter>;
using HeightsPtr = std::unique_ptr<lm_heights, HeightsDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

// Returns the status when it is LM_OK or LM_NO, otherwise fails with context.
lm_status check(lm_status st, const std::string& context) {
  if (st == LM_OK || st == LM_NO) {
    return st;
  }
  throw Failure{context + ": " + lm_last_error()};
}

std::string take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Failure{"cannot open '" + path + "'"};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    throw Failure{"cannot write '" + path + "'"};
  }
}

GraphPtr load_graph(const std::string& path) {
  lm_graph* g = nullptr;
  check(lm_graph_load(path.c_str(), &g), "loading graph '" + path + "'");
  return GraphPtr(g);
}

PairsPtr load_pairs(const lm_graph* g, const std::string& path) {
  const std::string text = read_text(path);
  lm_pairs* p = nullptr;
  check(lm_pairs_from_json(g, text.c_str(), &p), "loading pairs '" + path + "'");
  return PairsPtr(p);
}

HeightsPtr load_heights(const lm_graph* g, const std::string& path) {
  const std::string text = read_text(path);
  lm_heights* h = nullptr;
  check(lm_heights_from_json(g, text.c_str(), &h), "loading heights '" + path + "'");
  return HeightsPtr(h);
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  if (text.empty()) {
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw Failure{std::string("bad number '") + item + "' in " + flag};
    }
  }
  return out;
}

std::vector<int> parse_signs(const std::string& text, const char* flag) {
  std::vector<int> out;
  if (text.empty()) {
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "+" || item == "+1" || item == "1") {
      out.push_back(1);
    } else if (item == "-" || item == "-1") {
      out.push_back(-1);
    } else {
      throw Failure{std::string("bad sign '") + item + "' in " + flag + " (use + or -)"};
    }
  }
  return out;
}

double parse_scalar(const std::string& text, double fallback, const char* flag) {
  if (text.empty()) {
    return fallback;
  }
  const auto values = parse_list(text, flag);
  if (values.size() != 1) {
    throw Failure{std::string(flag) + " expects a single number"};
  }
  return values.front();
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

// Stage timings and counts, printed to stderr so stdout stays canonical.
class RunReport {
public:
  void stage(const std::string& name, Clock::time_point since) {
    timings_[name] = std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  }
  void set(const std::string& key, Json value) { doc_[key] = std::move(value); }
  void counts(const lm_graph* g, const lm_pairs* p) {
    doc_["vertices"] = lm_graph_vertex_count(g);
    doc_["edges"] = lm_graph_edge_count(g);
    if (p != nullptr) {
      lm_cgraph_stats stats{};
      check(lm_cgraph_stats_get(p, &stats), "collision graph");
      doc_["pairs"] = lm_pairs_count(p);
      doc_["arcs"] = stats.arcs;
      doc_["two_cycles"] = stats.two_cycles;
    }
  }
  void print(bool quiet) const {
    if (quiet) {
      return;
    }
    Json out = doc_;
    out["timings_ms"] = timings_;
    std::cerr << out.dump() << "\n";
  }

private:
  Json doc_ = Json::object();
  Json timings_ = Json::object();
};

struct Common {
  std::string out;
  std::string dot;
  bool quiet = false;
};

void write_dot(const lm_pairs* p, const std::string& path) {
  if (path.empty()) {
    return;
  }
  char* dot = nullptr;
  check(lm_cgraph_dot(p, &dot), "rendering collision graph");
  write_output(path, take(dot));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-free height planning for L-models of moving graphs"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("-q,--quiet", common.quiet, "Suppress the run report on stderr");

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "Output path (default stdout)");
  };

  // generate
  auto* gen = app.add_subcommand("generate", "Write a built-in moving graph");
  std::string family;
  std::size_t gm = 1;
  std::size_t gn = 1;
  std::string ga, gb, gc, gd, gsx, gsy;
  gen->add_option("--family", family, "dixon1 | dixon2 | s2")->required();
  gen->add_option("--m", gm, "Dixon-1: number of p vertices");
  gen->add_option("--n", gn, "Dixon-1: number of q vertices");
  gen->add_option("--a", ga, "Dixon-1: a_1..a_{m-1} comma separated; Dixon-2/S2: scalar a");
  gen->add_option("--b", gb, "Dixon-1: b_1..b_{n-1}; Dixon-2/S2: scalar b");
  gen->add_option("--c", gc, "S2: scalar c");
  gen->add_option("--d", gd, "Dixon-2: scalar d");
  gen->add_option("--sx", gsx, "Dixon-1: signs of p_1..p_{m-1}, e.g. +,-,+");
  gen->add_option("--sy", gsy, "Dixon-1: signs of q_1..q_{n-1}");
  add_out(gen);

  // validate
  auto* val = app.add_subcommand("validate", "Check that edge lengths stay constant");
  std::string val_graph;
  std::size_t val_samples = 512;
  double val_tol = 1e-9;
  val->add_option("graph", val_graph, "Graph file")->required();
  val->add_option("--samples", val_samples, "Sample count");
  val->add_option("--tol", val_tol, "Allowed deviation from the mean length");
  add_out(val);

  // detect
  auto* det = app.add_subcommand("detect", "Find all vertex-edge collision pairs");
  std::string det_graph;
  lm_detect_config cfg;
  lm_detect_config_default(&cfg);
  std::string interval;
  bool report_margin = false;
  det->add_option("graph", det_graph, "Graph file")->required();
  det->add_option("--samples", cfg.samples, "Samples over the analysis interval");
  det->add_option("--eps", cfg.collide_eps, "Gap below which a minimum counts as a collision");
  det->add_option("--refine-tol", cfg.refine_tol, "Golden-section bracket width");
  det->add_option("--interval", interval, "Analysis interval a:b (default: the graph's domain)");
  det->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  det->add_flag("--report-margin", report_margin, "Record the minimum gap of every non-colliding pair");
  det->add_option("--dot", common.dot, "Also write the collision graph as DOT");
  add_out(det);

  // cgraph
  auto* cg = app.add_subcommand("cgraph", "Render the collision graph as DOT");
  std::string cg_pairs;
  std::string cg_graph;
  cg->add_option("pairs", cg_pairs, "Pairs file")->required();
  cg->add_option("--graph", cg_graph, "Graph file (default: the path recorded in the pairs file)");
  cg->add_option("--dot", common.dot, "Alias for --out");
  add_out(cg);

  // plan
  auto* pl = app.add_subcommand("plan", "Compute collision-free heights via the partition condition");
  std::string pl_graph, pl_pairs, pl_upper;
  bool closed_form = false;
  pl->add_option("graph", pl_graph, "Graph file")->required();
  pl->add_option("pairs", pl_pairs, "Pairs file")->required();
  pl->add_option("--upper", pl_upper, "Use this partition: comma separated upper edge names, rest lower");
  pl->add_flag("--closed-form", closed_form, "Dixon-1 graphs: emit the closed-form height table");
  pl->add_option("--dot", common.dot, "Also write the collision graph as DOT");
  add_out(pl);

  // verify
  auto* ver = app.add_subcommand("verify", "Check a height table against the collision pairs");
  std::string ver_graph, ver_pairs, ver_heights;
  ver->add_option("graph", ver_graph, "Graph file")->required();
  ver->add_option("pairs", ver_pairs, "Pairs file")->required();
  ver->add_option("heights", ver_heights, "Heights file")->required();
  add_out(ver);

  // exists
  auto* ex = app.add_subcommand("exists", "Decide exactly whether any collision-free heights exist");
  std::string ex_graph, ex_pairs;
  ex->add_option("graph", ex_graph, "Graph file")->required();
  ex->add_option("pairs", ex_pairs, "Pairs file")->required();
  add_out(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  RunReport report;
  try {
    if (*gen) {
      const auto start = Clock::now();
      lm_graph* raw = nullptr;
      if (family == "dixon1") {
        const auto a = parse_list(ga, "--a");
        const auto b = parse_list(gb, "--b");
        const auto sx = gsx.empty() ? std::vector<int>(a.size(), 1) : parse_signs(gsx, "--sx");
        const auto sy = gsy.empty() ? std::vector<int>(b.size(), 1) : parse_signs(gsy, "--sy");
        if (a.size() + 1 != gm || b.size() + 1 != gn) {
          throw Failure{"--a needs m-1 values and --b needs n-1 values"};
        }
        if (sx.size() != a.size() || sy.size() != b.size()) {
          throw Failure{"--sx needs m-1 signs and --sy needs n-1 signs"};
        }
        check(lm_family_dixon1(gm, gn, a.data(), b.data(), sx.data(), sy.data(), &raw), "dixon1");
      } else if (family == "dixon2") {
        check(lm_family_dixon2(parse_scalar(ga, 1.0, "--a"), parse_scalar(gb, 2.0, "--b"),
                               parse_scalar(gd, 3.0, "--d"), &raw),
              "dixon2");
      } else if (family == "s2") {
        check(lm_family_s2(parse_scalar(ga, 1.0, "--a"), parse_scalar(gb, 11.0 / 5.0, "--b"),
                           parse_scalar(gc, 3.0 / 2.0, "--c"), &raw),
              "s2");
      } else {
        throw Failure{"unknown family '" + family + "' (dixon1, dixon2, s2)"};
      }
      GraphPtr g(raw);
      char* text = nullptr;
      check(lm_graph_to_json(g.get(), &text), "serialising graph");
      write_output(common.out, take(text));
      report.stage("generate", start);
      report.counts(g.get(), nullptr);
      report.print(common.quiet);
      return kExitOk;
    }

    if (*val) {
      auto g = load_graph(val_graph);
      char* text = nullptr;
      const lm_status st = check(lm_graph_validate(g.get(), val_samples, val_tol, &text), "validating");
      write_output(common.out, take(text));
      return st == LM_OK ? kExitOk : kExitNo;
    }

    if (*det) {
      auto start = Clock::now();
      auto g = load_graph(det_graph);
      if (!interval.empty()) {
        const auto colon = interval.find(':');
        if (colon == std::string::npos) {
          throw Failure{"--interval expects a:b"};
        }
        const double lo = parse_scalar(interval.substr(0, colon), 0.0, "--interval");
        const double hi = parse_scalar(interval.substr(colon + 1), 0.0, "--interval");
        lm_graph* windowed = nullptr;
        check(lm_graph_with_domain(g.get(), lo, hi, &windowed), "setting interval");
        g.reset(windowed);
      }
      report.stage("load", start);
      if (check(lm_graph_is_periodic(g.get()), "periodicity check") == LM_NO) {
        std::cerr << "warning: motion is not periodic on the analysis interval; collisions outside it are "
                     "not detected\n";
      }
      cfg.report_margin = report_margin ? 1 : 0;
      start = Clock::now();
      lm_pairs* raw = nullptr;
      check(lm_detect(g.get(), &cfg, &raw), "detecting collisions");
      PairsPtr pairs(raw);
      report.stage("detect", start);
      if (lm_pairs_ambiguous_count(pairs.get()) > 0) {
        std::cerr << "warning: " << lm_pairs_ambiguous_count(pairs.get())
                  << " non-colliding pair(s) came within 10*eps of zero; see \"ambiguous\" in the output\n";
      }
      char* text = nullptr;
      check(lm_pairs_to_json(pairs.get(), det_graph.c_str(), &text), "serialising pairs");
      write_output(common.out, take(text));
      write_dot(pairs.get(), common.dot);
      report.counts(g.get(), pairs.get());
      report.set("smallest_clear_gap", lm_pairs_smallest_clear_gap(pairs.get()));
      report.print(common.quiet);
      return kExitOk;
    }

    if (*cg) {
      std::string graph_path = cg_graph;
      if (graph_path.empty()) {
        char* ref = nullptr;
        check(lm_pairs_graph_ref(read_text(cg_pairs).c_str(), &ref), "reading pairs file");
        graph_path = take(ref);
      }
      auto g = load_graph(graph_path);
      auto pairs = load_pairs(g.get(), cg_pairs);
      char* dot = nullptr;
      check(lm_cgraph_dot(pairs.get(), &dot), "rendering collision graph");
      write_output(!common.dot.empty() ? common.dot : common.out, take(dot));
      report.counts(g.get(), pairs.get());
      report.print(common.quiet);
      return kExitOk;
    }

    if (*pl) {
      auto start = Clock::now();
      auto g = load_graph(pl_graph);
      auto pairs = load_pairs(g.get(), pl_pairs);
      report.stage("load", start);
      write_dot(pairs.get(), common.dot);
      report.counts(g.get(), pairs.get());
      start = Clock::now();

      lm_heights* raw = nullptr;
      char* text = nullptr;
      if (closed_form) {
        check(lm_heights_dixon1(g.get(), &raw), "closed-form heights");
        report.set("outcome", "closed-form heights");
      } else {
        const auto names = split_names(pl_upper);
        std::vector<const char*> upper;
        for (const auto& n : names) {
          upper.push_back(n.c_str());
        }
        char* plan_report = nullptr;
        const lm_status st = check(
            lm_plan(pairs.get(), pl_upper.empty() ? nullptr : upper.data(), upper.size(), &raw, &plan_report),
            "planning");
        const std::string plan_text = take(plan_report);
        report.stage("plan", start);
        if (st == LM_NO) {
          write_output(common.out, plan_text);
          report.set("outcome", "no partition");
          report.print(common.quiet);
          return kExitNo;
        }
        report.set("outcome", "partition found");
      }
      HeightsPtr h(raw);
      check(lm_heights_to_json(h.get(), &text), "serialising heights");
      write_output(common.out, take(text));
      report.print(common.quiet);
      return kExitOk;
    }

    if (*ver) {
      auto g = load_graph(ver_graph);
      auto pairs = load_pairs(g.get(), ver_pairs);
      auto h = load_heights(g.get(), ver_heights);
      char* text = nullptr;
      const lm_status st = check(lm_verify(pairs.get(), h.get(), &text), "verifying");
      write_output(common.out, take(text));
      return st == LM_OK ? kExitOk : kExitNo;
    }

    if (*ex) {
      auto start = Clock::now();
      auto g = load_graph(ex_graph);
      auto pairs = load_pairs(g.get(), ex_pairs);
      report.counts(g.get(), pairs.get());
      lm_heights* raw = nullptr;
      char* text = nullptr;
      const lm_status st = check(lm_exists(pairs.get(), &raw, &text), "deciding existence");
      HeightsPtr witness(raw);
      report.stage("exists", start);
      Json out = Json::parse(take(text));
      if (witness) {
        char* heights = nullptr;
        check(lm_heights_to_json(witness.get(), &heights), "serialising witness");
        out["witness"] = Json::parse(take(heights))["heights"];
      }
      write_output(common.out, out.dump(2) + "\n");
      report.set("outcome", st == LM_OK ? "exists" : "none");
      report.print(common.quiet);
      return st == LM_OK ? kExitOk : kExitNo;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitError;
  }
  return kExitError;
}
