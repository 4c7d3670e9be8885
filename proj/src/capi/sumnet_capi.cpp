#include "sumnet/sumnet.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sumnet/alphabet_ext.hpp"
#include "sumnet/coding.hpp"
#include "sumnet/design.hpp"
#include "sumnet/error.hpp"
#include "sumnet/network.hpp"
#include "sumnet/verify.hpp"

struct sumnet_design {
  sumnet::Design value;
};
struct sumnet_network {
  sumnet::SumNetwork value;
};
struct sumnet_code {
  sumnet::NetworkCode value;
};

namespace {

using json = nlohmann::ordered_json;

thread_local std::string last_error;

int status_of(sumnet::ErrorCode code) {
  using sumnet::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SUMNET_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotPrime: return SUMNET_ERR_NOT_PRIME;
    case ErrorCode::DimensionMismatch: return SUMNET_ERR_DIMENSION_MISMATCH;
    case ErrorCode::FieldMismatch: return SUMNET_ERR_FIELD_MISMATCH;
    case ErrorCode::UnsupportedOrder: return SUMNET_ERR_UNSUPPORTED_ORDER;
    case ErrorCode::ParseError: return SUMNET_ERR_PARSE;
    case ErrorCode::InvalidDesign: return SUMNET_ERR_INVALID_DESIGN;
    case ErrorCode::OutOfRange: return SUMNET_ERR_OUT_OF_RANGE;
    case ErrorCode::CharMismatch: return SUMNET_ERR_CHAR_MISMATCH;
    case ErrorCode::UnsupportedLambda: return SUMNET_ERR_UNSUPPORTED_LAMBDA;
    case ErrorCode::DegenerateVPrime: return SUMNET_ERR_DEGENERATE_VPRIME;
    case ErrorCode::ShapeMismatch: return SUMNET_ERR_SHAPE_MISMATCH;
    case ErrorCode::InvalidGamma: return SUMNET_ERR_INVALID_GAMMA;
    case ErrorCode::TooLarge: return SUMNET_ERR_TOO_LARGE;
    case ErrorCode::Io: return SUMNET_ERR_IO;
    case ErrorCode::Overflow: return SUMNET_ERR_OVERFLOW;
  }
  return SUMNET_ERR_INTERNAL;
}

int fail(int status, std::string message) {
  last_error = std::move(message);
  return status;
}

/// Runs fn, translating exceptions into status codes.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return SUMNET_OK;
  } catch (const sumnet::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SUMNET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SUMNET_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path);
  if (!in) throw sumnet::Error(sumnet::ErrorCode::Io, std::string("cannot open ") + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json bits_json(const sumnet::BitVector& v) {
  json out = json::array();
  for (auto b : v) out.push_back(static_cast<int>(b));
  return out;
}

json violations_json(const sumnet::ValidationReport& report) {
  json out = json::array();
  for (const auto& v : report.violations) out.push_back({{"check", v.check}, {"message", v.message}});
  return out;
}

json failures_json(const std::vector<sumnet::VerifyResult::Failure>& failures) {
  json out = json::array();
  for (const auto& f : failures) out.push_back({{"subject", f.subject}, {"detail", f.detail}});
  return out;
}

json check_json(const sumnet::VerifyResult& r) {
  return {{"ok", r.ok()}, {"failures", failures_json(r.failures)}};
}

json rational_json(const sumnet::Rational& r) {
  return {{"num", r.num()}, {"den", r.den()}, {"text", r.str()}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

#define SUMNET_REQUIRE(cond, what)                                                    \
  do {                                                                                \
    if (!(cond)) return fail(SUMNET_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); \
  } while (0)

}  // namespace

extern "C" {

const char* sumnet_version(void) { return "0.1.0"; }

const char* sumnet_status_name(int status) {
  switch (status) {
    case SUMNET_OK: return "OK";
    case SUMNET_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SUMNET_ERR_NOT_PRIME: return "NotPrime";
    case SUMNET_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case SUMNET_ERR_FIELD_MISMATCH: return "FieldMismatch";
    case SUMNET_ERR_UNSUPPORTED_ORDER: return "UnsupportedOrder";
    case SUMNET_ERR_PARSE: return "ParseError";
    case SUMNET_ERR_INVALID_DESIGN: return "InvalidDesign";
    case SUMNET_ERR_OUT_OF_RANGE: return "OutOfRange";
    case SUMNET_ERR_CHAR_MISMATCH: return "CharMismatch";
    case SUMNET_ERR_UNSUPPORTED_LAMBDA: return "UnsupportedLambda";
    case SUMNET_ERR_DEGENERATE_VPRIME: return "DegenerateVPrime";
    case SUMNET_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
    case SUMNET_ERR_INVALID_GAMMA: return "InvalidGamma";
    case SUMNET_ERR_TOO_LARGE: return "TooLarge";
    case SUMNET_ERR_IO: return "Io";
    case SUMNET_ERR_OVERFLOW: return "Overflow";
    case SUMNET_ERR_INTERNAL: return "Internal";
    default: return "Unknown";
  }
}

const char* sumnet_last_error(void) { return last_error.c_str(); }

void sumnet_string_free(char* s) { std::free(s); }

int sumnet_design_fano(sumnet_design** out) {
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = new sumnet_design{sumnet::fano()}; });
}

int sumnet_design_sts(int v, sumnet_design** out) {
  SUMNET_REQUIRE(out, "out");
  if (v < 0) return fail(SUMNET_ERR_UNSUPPORTED_ORDER, "negative order");
  return guarded([&] { *out = new sumnet_design{sumnet::sts_bose(static_cast<std::size_t>(v))}; });
}

int sumnet_design_from_json(const char* text, sumnet_design** out) {
  SUMNET_REQUIRE(text, "json");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = new sumnet_design{sumnet::design_from_json(text)}; });
}

int sumnet_design_load(const char* path, sumnet_design** out) {
  SUMNET_REQUIRE(path, "path");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = new sumnet_design{sumnet::load_design(path)}; });
}

int sumnet_design_save(const sumnet_design* d, const char* path) {
  SUMNET_REQUIRE(d, "design");
  SUMNET_REQUIRE(path, "path");
  return guarded([&] { sumnet::save_design(d->value, path); });
}

int sumnet_design_to_json(const sumnet_design* d, char** out) {
  SUMNET_REQUIRE(d, "design");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = copy_string(sumnet::design_to_json(d->value)); });
}

int sumnet_design_report_json(const sumnet_design* d, char** out, int* valid) {
  SUMNET_REQUIRE(d, "design");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] {
    const auto& design = d->value;
    const auto report = sumnet::verify_design(design);
    const auto r = design.replication();
    json doc = {{"schema", "sumnet.design-report/1"},
                {"v", design.v()},
                {"k", design.k()},
                {"lambda", design.lambda()},
                {"b", design.b()},
                {"r", r ? json(*r) : json(nullptr)},
                {"valid", report.ok()},
                {"violations", violations_json(report)},
                {"design", json::parse(sumnet::design_to_json(design))}};
    *out = copy_string(dump(doc));
    if (valid) *valid = report.ok() ? 1 : 0;
  });
}

int sumnet_design_params(const sumnet_design* d, int* v, int* k, int* lambda, int* b, int* r) {
  SUMNET_REQUIRE(d, "design");
  const auto& design = d->value;
  if (v) *v = static_cast<int>(design.v());
  if (k) *k = static_cast<int>(design.k());
  if (lambda) *lambda = static_cast<int>(design.lambda());
  if (b) *b = static_cast<int>(design.b());
  if (r) *r = design.replication() ? static_cast<int>(*design.replication()) : -1;
  return SUMNET_OK;
}

void sumnet_design_free(sumnet_design* d) { delete d; }

int sumnet_network_build(const sumnet_design* d, sumnet_network** out) {
  SUMNET_REQUIRE(d, "design");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = new sumnet_network{sumnet::build_sum_network(d->value)}; });
}

int sumnet_network_from_json(const char* text, sumnet_network** out) {
  SUMNET_REQUIRE(text, "json");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = new sumnet_network{sumnet::network_from_json(text)}; });
}

int sumnet_network_to_json(const sumnet_network* n, char** out) {
  SUMNET_REQUIRE(n, "network");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = copy_string(sumnet::network_to_json(n->value)); });
}

int sumnet_network_to_dot(const sumnet_network* n, const char* terminal_filter, char** out) {
  SUMNET_REQUIRE(n, "network");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] {
    sumnet::DotOptions options;
    if (terminal_filter && *terminal_filter) {
      std::stringstream list(terminal_filter);
      std::string label;
      while (std::getline(list, label, ',')) {
        sumnet::NodeId node{};
        try {
          node = sumnet::parse_node_label(label);
        } catch (const sumnet::Error& e) {
          throw sumnet::Error(sumnet::ErrorCode::InvalidArgument, e.what());
        }
        if (!node.is_terminal()) {
          throw sumnet::Error(sumnet::ErrorCode::InvalidArgument, label + " is not a terminal");
        }
        n->value.node_index(node);  // range check
        options.terminals.push_back(node);
      }
    }
    *out = copy_string(sumnet::network_to_dot(n->value, options));
  });
}

int sumnet_network_validate(const sumnet_network* n, char** report, int* valid) {
  SUMNET_REQUIRE(n, "network");
  return guarded([&] {
    const auto& net = n->value;
    const auto r = sumnet::validate_network(net);
    std::size_t bottlenecks = 0, incident = 0;
    for (const auto& e : net.edges()) {
      if (e.kind == sumnet::EdgeClass::Bottleneck) ++bottlenecks;
      if (e.kind != sumnet::EdgeClass::Direct) ++incident;
    }
    if (report) {
      json doc = {{"schema", "sumnet.network-report/1"},
                  {"nodes", net.nodes().size()},
                  {"edges", net.edges().size()},
                  {"bottlenecks", bottlenecks},
                  {"bottleneck_incident_edges", incident},
                  {"valid", r.ok()},
                  {"violations", violations_json(r)}};
      *report = copy_string(dump(doc));
    }
    if (valid) *valid = r.ok() ? 1 : 0;
  });
}

int sumnet_network_node_count(const sumnet_network* n, size_t* nodes, size_t* edges) {
  SUMNET_REQUIRE(n, "network");
  if (nodes) *nodes = n->value.nodes().size();
  if (edges) *edges = n->value.edges().size();
  return SUMNET_OK;
}

void sumnet_network_free(sumnet_network* n) { delete n; }

int sumnet_code_build(const sumnet_network* n, uint32_t p, int regime, sumnet_code** out) {
  SUMNET_REQUIRE(n, "network");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] {
    const sumnet::PrimeField field(p);
    switch (regime) {
      case SUMNET_REGIME_AUTO:
        *out = new sumnet_code{sumnet::build_code(n->value, field)};
        break;
      case SUMNET_REGIME_CHAR_DIVIDES:
        *out = new sumnet_code{sumnet::build_code_char_divides(n->value, field)};
        break;
      case SUMNET_REGIME_CHAR_NOT_DIVIDES:
        *out = new sumnet_code{sumnet::build_code_char_not_divides(n->value, field)};
        break;
      default:
        throw sumnet::Error(sumnet::ErrorCode::InvalidArgument, "unknown regime " + std::to_string(regime));
    }
  });
}

int sumnet_code_from_json(const char* text, sumnet_code** out) {
  SUMNET_REQUIRE(text, "json");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = new sumnet_code{sumnet::code_from_json(text)}; });
}

int sumnet_code_load(const char* path, sumnet_code** out) {
  SUMNET_REQUIRE(path, "path");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = new sumnet_code{sumnet::code_from_json(read_file(path))}; });
}

int sumnet_code_to_json(const sumnet_code* c, char** out) {
  SUMNET_REQUIRE(c, "code");
  SUMNET_REQUIRE(out, "out");
  return guarded([&] { *out = copy_string(sumnet::code_to_json(c->value)); });
}

int sumnet_code_save(const sumnet_code* c, const char* path) {
  SUMNET_REQUIRE(c, "code");
  SUMNET_REQUIRE(path, "path");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) throw sumnet::Error(sumnet::ErrorCode::Io, std::string("cannot write ") + path);
    out << sumnet::code_to_json(c->value);
    if (!out) throw sumnet::Error(sumnet::ErrorCode::Io, std::string("write failed for ") + path);
  });
}

int sumnet_code_rate(const sumnet_code* c, int64_t* m, int64_t* n) {
  SUMNET_REQUIRE(c, "code");
  if (m) *m = static_cast<int64_t>(c->value.params.m);
  if (n) *n = static_cast<int64_t>(c->value.params.n);
  return SUMNET_OK;
}

void sumnet_code_free(sumnet_code* c) { delete c; }

int sumnet_verify(const sumnet_network* n, const sumnet_code* c, char** report, int* all_ok) {
  SUMNET_REQUIRE(n, "network");
  SUMNET_REQUIRE(c, "code");
  return guarded([&] {
    const auto& code = c->value;
    const auto transfer = sumnet::transfer_check(n->value, code);
    const auto lemma1 = sumnet::lemma1_check(n->value, code);
    const auto lemma2 = sumnet::lemma2_check(n->value, code);
    const bool ok = transfer.ok() && lemma1.ok() && lemma2.ok();
    if (report) {
      const auto& p = code.params;
      json doc = {{"schema", "sumnet.verify/1"},
                  {"field", code.field.modulus()},
                  {"regime", sumnet::to_string(code.regime)},
                  {"params", {{"m", p.m}, {"n", p.n}, {"vprime", p.vprime}, {"bprime", p.bprime}, {"x", p.x}}},
                  {"rate", {{"m", p.m}, {"n", p.n}, {"reduced", rational_json(sumnet::Rational(
                                                         static_cast<std::int64_t>(p.m),
                                                         static_cast<std::int64_t>(p.n)))}}},
                  {"terminals", code.psi.size()},
                  {"transfer_check", check_json(transfer)},
                  {"lemma1_check", check_json(lemma1)},
                  {"lemma2_check", check_json(lemma2)},
                  {"ok", ok}};
      *report = copy_string(dump(doc));
    }
    if (all_ok) *all_ok = ok ? 1 : 0;
  });
}

int sumnet_simulate(const sumnet_network* n, const sumnet_code* c, uint64_t trials, uint64_t seed,
                    char** report, int* all_ok) {
  SUMNET_REQUIRE(n, "network");
  SUMNET_REQUIRE(c, "code");
  return guarded([&] {
    const auto summary = sumnet::run_trials(n->value, c->value, trials, seed);
    if (report) {
      json doc = {{"schema", "sumnet.simulate/1"},
                  {"field", c->value.field.modulus()},
                  {"trials", summary.trials},
                  {"seed", summary.seed},
                  {"passed", summary.passed},
                  {"ok", summary.ok()},
                  {"witnesses", failures_json(summary.witnesses)}};
      *report = copy_string(dump(doc));
    }
    if (all_ok) *all_ok = summary.ok() ? 1 : 0;
  });
}

int sumnet_capacity(const sumnet_design* d, uint32_t p, char** report) {
  SUMNET_REQUIRE(d, "design");
  SUMNET_REQUIRE(report, "report");
  return guarded([&] {
    const sumnet::PrimeField field(p);
    const auto cap = sumnet::capacity_report(d->value, field);
    const auto& pr = cap.params;
    json doc = {{"schema", "sumnet.capacity/1"},
                {"v", d->value.v()},
                {"k", d->value.k()},
                {"b", d->value.b()},
                {"field", p},
                {"regime", sumnet::to_string(cap.regime)},
                {"params", {{"m", pr.m}, {"n", pr.n}, {"vprime", pr.vprime}, {"bprime", pr.bprime}, {"x", pr.x}}},
                {"achieved", rational_json(cap.achieved)},
                {"upper", rational_json(cap.upper)},
                {"capacity", cap.matches() ? rational_json(cap.upper) : json(nullptr)},
                {"matches", cap.matches()}};
    *report = copy_string(dump(doc));
  });
}

int sumnet_counterexample(int gamma, int exhaustive, char** report) {
  SUMNET_REQUIRE(report, "report");
  return guarded([&] {
    const auto demo = sumnet::run_counterexample(gamma);
    const auto& pr = demo.params;
    json outcomes = json::array();
    for (const auto& o : demo.outcomes) {
      outcomes.push_back({{"hat_h0_of_2", static_cast<int>(o.image_of_two)},
                          {"decoded", bits_json(o.decoded)},
                          {"verdict", o.correct ? "correct" : "fails"}});
    }
    json doc = {{"schema", "sumnet.counterexample/1"},
                {"gamma", pr.gamma},
                {"t", pr.t},
                {"nprime", pr.nprime},
                {"kprime", pr.kprime},
                {"x1", bits_json(demo.x1)},
                {"x2", bits_json(demo.x2)},
                {"true_sum", bits_json(demo.true_sum)},
                {"outcomes", std::move(outcomes)}};
    if (exhaustive) {
      const auto search = sumnet::exhaustive_failure_search(gamma);
      json searches = json::array();
      for (const auto& s : search.searches) {
        json entry = {{"hat_h0_of_2", static_cast<int>(s.image_of_two)}, {"pairs_checked", s.pairs_checked}};
        if (s.witness_outcome) {
          entry["witness"] = {{"x1", bits_json(s.witness_x1)},
                              {"x2", bits_json(s.witness_x2)},
                              {"decoded", bits_json(s.witness_outcome->decoded)}};
        } else {
          entry["witness"] = nullptr;
        }
        searches.push_back(std::move(entry));
      }
      doc["search"] = std::move(searches);
      doc["unicast_control"] = {{"pairs_checked", search.unicast_pairs_checked},
                                {"all_correct", search.unicast_all_correct}};
    }
    *report = copy_string(dump(doc));
  });
}

}  // extern "C"
