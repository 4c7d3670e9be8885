// sumnet command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumnet/sumnet.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct DesignDeleter {
  void operator()(sumnet_design* d) const { sumnet_design_free(d); }
};
struct NetworkDeleter {
  void operator()(sumnet_network* n) const { sumnet_network_free(n); }
};
struct CodeDeleter {
  void operator()(sumnet_code* c) const { sumnet_code_free(c); }
};
using DesignPtr = std::unique_ptr<sumnet_design, DesignDeleter>;
using NetworkPtr = std::unique_ptr<sumnet_network, NetworkDeleter>;
using CodePtr = std::unique_ptr<sumnet_code, CodeDeleter>;

/// Thrown to unwind with a specific exit code after printing a message.
struct Exit {
  int code;
};

int exit_code_for(int status) {
  switch (status) {
    case SUMNET_ERR_INVALID_DESIGN:
    case SUMNET_ERR_PARSE:
    case SUMNET_ERR_SHAPE_MISMATCH:
      return kExitFailed;
    case SUMNET_ERR_INTERNAL:
      return kExitFailed;
    default:
      return kExitUsage;
  }
}

void check(int status) {
  if (status == SUMNET_OK) return;
  std::cerr << "error: " << sumnet_status_name(status) << ": " << sumnet_last_error() << "\n";
  throw Exit{exit_code_for(status)};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  sumnet_string_free(s);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Exit{kExitUsage};
  }
}

struct DesignSource {
  bool fano = false;
  std::optional<int> sts;
  std::string load;
};

struct Options {
  DesignSource source;
  std::string format = "text";
  std::string save;
  std::string dot;
  std::string dot_terminals;
  std::string json_out;
  std::uint32_t field = 0;
  std::string save_code;
  std::string code_file;
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
  int gamma = 0;
  bool exhaustive = false;
};

void add_design_source(CLI::App* cmd, DesignSource& src) {
  auto* fano = cmd->add_flag("--fano", src.fano, "Use the Fano plane");
  auto* sts = cmd->add_option("--sts", src.sts, "Bose Steiner triple system of order v (v = 3 mod 6)");
  auto* load = cmd->add_option("--load", src.load, "Read a design JSON file");
  fano->excludes(sts)->excludes(load);
  sts->excludes(load);
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

DesignPtr open_design(const DesignSource& src) {
  sumnet_design* d = nullptr;
  if (src.fano) {
    check(sumnet_design_fano(&d));
  } else if (src.sts) {
    check(sumnet_design_sts(*src.sts, &d));
  } else if (!src.load.empty()) {
    check(sumnet_design_load(src.load.c_str(), &d));
  } else {
    std::cerr << "error: one of --fano, --sts <v>, --load <file> is required\n";
    throw Exit{kExitUsage};
  }
  return DesignPtr(d);
}

NetworkPtr open_network(const sumnet_design* d) {
  sumnet_network* n = nullptr;
  check(sumnet_network_build(d, &n));
  return NetworkPtr(n);
}

std::string bits(const json& arr) {
  std::string out;
  for (const auto& b : arr) out += std::to_string(b.get<int>());
  return out;
}

void print_rows(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) std::cout << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
}

void print_violations(const json& list) {
  for (const auto& v : list) {
    std::cout << "  [" << v["check"].get<std::string>() << "] " << v["message"].get<std::string>() << "\n";
  }
}

void print_check(const std::string& name, const json& check) {
  std::cout << std::left << std::setw(16) << name << (check["ok"].get<bool>() ? "pass" : "FAIL") << "\n";
  for (const auto& f : check["failures"]) {
    std::cout << "  " << f["subject"].get<std::string>() << ": " << f["detail"].get<std::string>() << "\n";
  }
}

int cmd_design(const Options& o) {
  auto d = open_design(o.source);
  char* raw = nullptr;
  int valid = 0;
  check(sumnet_design_report_json(d.get(), &raw, &valid));
  const auto report = take(raw);
  if (!o.save.empty()) {
    check(sumnet_design_save(d.get(), o.save.c_str()));
  }
  if (o.format == "json") {
    std::cout << report;
  } else {
    const auto doc = json::parse(report);
    print_rows({{"v", doc["v"].dump()},
                {"k", doc["k"].dump()},
                {"lambda", doc["lambda"].dump()},
                {"b", doc["b"].dump()},
                {"r", doc["r"].is_null() ? "-" : doc["r"].dump()},
                {"valid", valid ? "yes" : "no"}});
    std::cout << "blocks\n";
    int j = 1;
    for (const auto& block : doc["design"]["blocks"]) {
      std::cout << "  B" << j++ << "  {";
      bool first = true;
      for (const auto& p : block) {
        std::cout << (first ? "" : ", ") << p.get<int>();
        first = false;
      }
      std::cout << "}\n";
    }
    print_violations(doc["violations"]);
  }
  return valid ? kExitOk : kExitFailed;
}

int cmd_build(const Options& o) {
  auto d = open_design(o.source);
  auto n = open_network(d.get());
  char* raw = nullptr;
  int valid = 0;
  check(sumnet_network_validate(n.get(), &raw, &valid));
  const auto report = take(raw);
  if (!o.dot.empty()) {
    char* dot = nullptr;
    check(sumnet_network_to_dot(n.get(), o.dot_terminals.empty() ? nullptr : o.dot_terminals.c_str(), &dot));
    write_file(o.dot, take(dot));
  }
  if (!o.json_out.empty()) {
    char* text = nullptr;
    check(sumnet_network_to_json(n.get(), &text));
    write_file(o.json_out, take(text));
  }
  if (o.format == "json") {
    std::cout << report;
  } else {
    const auto doc = json::parse(report);
    print_rows({{"nodes", doc["nodes"].dump()},
                {"edges", doc["edges"].dump()},
                {"bottlenecks", doc["bottlenecks"].dump()},
                {"|M|", doc["bottleneck_incident_edges"].dump()},
                {"valid", valid ? "yes" : "no"}});
    print_violations(doc["violations"]);
  }
  return valid ? kExitOk : kExitFailed;
}

CodePtr build_code(const sumnet_network* n, std::uint32_t p) {
  sumnet_code* c = nullptr;
  check(sumnet_code_build(n, p, SUMNET_REGIME_AUTO, &c));
  return CodePtr(c);
}

int cmd_code(const Options& o) {
  auto d = open_design(o.source);
  auto n = open_network(d.get());
  auto c = build_code(n.get(), o.field);
  if (!o.save_code.empty()) check(sumnet_code_save(c.get(), o.save_code.c_str()));
  char* raw = nullptr;
  int ok = 0;
  check(sumnet_verify(n.get(), c.get(), &raw, &ok));
  const auto report = take(raw);
  if (o.format == "json") {
    std::cout << report;
  } else {
    const auto doc = json::parse(report);
    const auto& rate = doc["rate"];
    auto rate_text = rate["m"].dump() + "/" + rate["n"].dump();
    if (const auto reduced = rate["reduced"]["text"].get<std::string>(); reduced != rate_text) {
      rate_text += " = " + reduced;
    }
    print_rows({{"field", "GF(" + doc["field"].dump() + ")"},
                {"regime", doc["regime"].get<std::string>()},
                {"rate", rate_text},
                {"terminals", doc["terminals"].dump()}});
    print_check("transfer_check", doc["transfer_check"]);
    print_check("lemma1_check", doc["lemma1_check"]);
    print_check("lemma2_check", doc["lemma2_check"]);
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_capacity(const Options& o) {
  auto d = open_design(o.source);
  char* raw = nullptr;
  check(sumnet_capacity(d.get(), o.field, &raw));
  const auto report = take(raw);
  if (o.format == "json") {
    std::cout << report;
  } else {
    const auto doc = json::parse(report);
    const auto& p = doc["params"];
    print_rows({{"design", "v=" + doc["v"].dump() + " k=" + doc["k"].dump() + " b=" + doc["b"].dump()},
                {"field", "GF(" + doc["field"].dump() + ")"},
                {"regime", doc["regime"].get<std::string>()},
                {"code", "(m, n) = (" + p["m"].dump() + ", " + p["n"].dump() + ")"},
                {"achieved", doc["achieved"]["text"].get<std::string>()},
                {"upper bound", doc["upper"]["text"].get<std::string>()},
                {"capacity", doc["capacity"].is_null() ? "unknown" : doc["capacity"]["text"].get<std::string>()},
                {"match", doc["matches"].get<bool>() ? "yes" : "no"}});
  }
  return kExitOk;
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("SUMNET_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    std::cerr << "error: SUMNET_SEED is not an unsigned integer: " << env << "\n";
    throw Exit{kExitUsage};
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  auto d = open_design(o.source);
  auto n = open_network(d.get());
  CodePtr c;
  if (!o.code_file.empty()) {
    sumnet_code* raw = nullptr;
    check(sumnet_code_load(o.code_file.c_str(), &raw));
    c.reset(raw);
  } else {
    c = build_code(n.get(), o.field);
  }
  const auto seed = resolve_seed(o);
  char* raw = nullptr;
  int ok = 0;
  check(sumnet_simulate(n.get(), c.get(), o.trials, seed, &raw, &ok));
  const auto report = take(raw);
  if (o.format == "json") {
    std::cout << report;
  } else {
    const auto doc = json::parse(report);
    print_rows({{"field", "GF(" + doc["field"].dump() + ")"},
                {"seed", doc["seed"].dump()},
                {"trials", doc["trials"].dump()},
                {"passed", doc["passed"].dump() + "/" + doc["trials"].dump()},
                {"result", ok ? "pass" : "FAIL"}});
    for (const auto& w : doc["witnesses"]) {
      std::cout << "  " << w["subject"].get<std::string>() << ": " << w["detail"].get<std::string>() << "\n";
    }
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_counterexample(const Options& o) {
  char* raw = nullptr;
  check(sumnet_counterexample(o.gamma, o.exhaustive ? 1 : 0, &raw));
  const auto report = take(raw);
  if (o.format == "json") {
    std::cout << report;
    return kExitOk;
  }
  const auto doc = json::parse(report);
  print_rows({{"gamma", doc["gamma"].dump()},
              {"t", doc["t"].dump()},
              {"n'", doc["nprime"].dump()},
              {"k'", doc["kprime"].dump()},
              {"x1", bits(doc["x1"])},
              {"x2", bits(doc["x2"])},
              {"x1 + x2", bits(doc["true_sum"])}});
  std::cout << "\nhat_h0(2)  decoded  verdict\n";
  for (const auto& out : doc["outcomes"]) {
    std::cout << std::left << std::setw(11) << out["hat_h0_of_2"].dump() << std::setw(9)
              << bits(out["decoded"]) << out["verdict"].get<std::string>() << "\n";
  }
  if (doc.contains("search")) {
    std::cout << "\nexhaustive search\n";
    for (const auto& s : doc["search"]) {
      std::cout << "  hat_h0(2)=" << s["hat_h0_of_2"].dump() << ": " << s["pairs_checked"].dump()
                << " pairs checked, ";
      if (s["witness"].is_null()) {
        std::cout << "no failing pair\n";
      } else {
        const auto& w = s["witness"];
        std::cout << "fails on x1=" << bits(w["x1"]) << " x2=" << bits(w["x2"]) << " (decoded "
                  << bits(w["decoded"]) << ")\n";
      }
    }
    const auto& u = doc["unicast_control"];
    std::cout << "  unicast control: " << u["pairs_checked"].dump() << " pairs, "
              << (u["all_correct"].get<bool>() ? "all correct" : "FAILURES") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-networks from block designs: construction, linear codes and verification"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(sumnet_version()));

  Options o;

  auto* design = app.add_subcommand("design", "Generate or load a design and validate it");
  add_design_source(design, o.source);
  add_format(design, o);
  design->add_option("--save", o.save, "Write the design as JSON");

  auto* build = app.add_subcommand("build", "Build and validate the sum-network of a design");
  add_design_source(build, o.source);
  add_format(build, o);
  build->add_option("--dot", o.dot, "Write a Graphviz DOT file");
  build->add_option("--dot-terminals", o.dot_terminals, "Restrict the DOT drawing to these terminals, e.g. t_p1,t_B1");
  build->add_option("--json", o.json_out, "Write the network as JSON");

  auto* code = app.add_subcommand("code", "Synthesize a linear code and verify it");
  add_design_source(code, o.source);
  add_format(code, o);
  code->add_option("--field", o.field, "Prime field order p")->required();
  code->add_option("--save-code", o.save_code, "Write the code as JSON");

  auto* capacity = app.add_subcommand("capacity", "Report achieved rate against the capacity bound");
  add_design_source(capacity, o.source);
  add_format(capacity, o);
  capacity->add_option("--field", o.field, "Prime field order p")->required();

  auto* simulate = app.add_subcommand("simulate", "Run seeded random source assignments through the code");
  add_design_source(simulate, o.source);
  add_format(simulate, o);
  auto* field_opt = simulate->add_option("--field", o.field, "Prime field order p");
  auto* code_opt = simulate->add_option("--code", o.code_file, "Use a saved code instead of synthesizing one");
  simulate->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
  simulate->add_option("--seed", o.seed, "RNG seed (falls back to SUMNET_SEED, then 0)");

  auto* counter = app.add_subcommand("counterexample", "Alphabet-change demo on the two-source sum-network");
  add_format(counter, o);
  counter->add_option("--gamma", o.gamma, "Block length exponent (t = 2^gamma), gamma >= 2")->required();
  counter->add_flag("--exhaustive", o.exhaustive, "Enumerate every message pair (k' <= 10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*design) return cmd_design(o);
    if (*build) return cmd_build(o);
    if (*code) return cmd_code(o);
    if (*capacity) return cmd_capacity(o);
    if (*simulate) {
      if (field_opt->count() == 0 && code_opt->count() == 0) {
        std::cerr << "error: simulate needs --field <p> or --code <file>\n";
        return kExitUsage;
      }
      return cmd_simulate(o);
    }
    if (*counter) return cmd_counterexample(o);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}
