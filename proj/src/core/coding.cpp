#include "sumnet/coding.hpp"

#include <algorithm>

#include <json.hpp>

#include "sumnet/error.hpp"

namespace sumnet {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kCodeSchema = "sumnet.code/1";

void require_lambda_one(const Design& d) {
  if (d.lambda() != 1) {
    throw Error(ErrorCode::UnsupportedLambda,
                "code synthesis needs lambda = 1, design has lambda = " + std::to_string(d.lambda()));
  }
}

std::size_t rank_in_row(const Design& d, std::size_t point, std::size_t block) {
  const auto& around = d.blocks_at(point);
  const auto it = std::lower_bound(around.begin(), around.end(), block);
  if (it == around.end() || *it != block) {
    throw Error(ErrorCode::OutOfRange, "point " + std::to_string(point + 1) + " is not in block " +
                                           std::to_string(block + 1));
  }
  return static_cast<std::size_t>(it - around.begin());
}

/// Point of block j whose color in column j is `color` (1-based).
std::size_t point_with_color(const ColoredIncidence& ac, std::size_t block, int color) {
  for (std::size_t i = 0; i < ac.rows(); ++i) {
    if (ac(i, block) == color) return i;
  }
  throw Error(ErrorCode::OutOfRange, "block " + std::to_string(block + 1) + " has no color " +
                                         std::to_string(color));
}

/// Decoder with an m x width identity-like block for every input: the sum of
/// each direct source and the leading m symbols of each head edge.
FieldMatrix plain_sum_decoder(const std::vector<NodeId>& inputs, const CodeParams& params,
                              const PrimeField& f) {
  std::size_t width = 0;
  for (const auto& in : inputs) width += input_width(in, params);
  FieldMatrix map(f, params.m, width);
  const auto eye = FieldMatrix::identity(f, params.m);
  std::size_t col = 0;
  for (const auto& in : inputs) {
    map.set_block(0, col, eye);
    col += input_width(in, params);
  }
  return map;
}

json matrix_to_json(const FieldMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto span = m.row(r);
    rows.push_back(json(std::vector<std::uint32_t>(span.begin(), span.end())));
  }
  return rows;
}

FieldMatrix matrix_from_json(const json& j, const PrimeField& f, std::size_t expect_cols) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "code JSON: matrix must be an array of rows");
  FieldMatrix m(f, j.size(), expect_cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) throw Error(ErrorCode::ParseError, "code JSON: matrix row must be an array");
    if (j[r].size() != expect_cols) {
      throw Error(ErrorCode::ShapeMismatch, "code JSON: row has " + std::to_string(j[r].size()) +
                                                " entries, expected " + std::to_string(expect_cols));
    }
    for (std::size_t c = 0; c < expect_cols; ++c) {
      const auto& x = j[r][c];
      if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= f.modulus()) {
        throw Error(ErrorCode::ParseError, "code JSON: entry " + x.dump() + " is not a residue mod " +
                                               std::to_string(f.modulus()));
      }
      m.set(r, c, x.get<std::int64_t>());
    }
  }
  return m;
}

}  // namespace

const char* to_string(Regime r) noexcept {
  return r == Regime::CharDivides ? "char-divides" : "char-not-divides";
}

Regime regime_for(const Design& d, const PrimeField& f) {
  return f.divides(static_cast<std::int64_t>(d.k()) - 1) ? Regime::CharDivides : Regime::CharNotDivides;
}

CodeParams CodeParams::fractional(const Design& d) {
  require_lambda_one(d);
  const auto r = d.replication();
  if (!r) throw Error(ErrorCode::InvalidDesign, "design has no integral replication number");
  CodeParams p;
  p.x = d.v() % d.k();
  p.vprime = d.v() - p.x;
  if (p.vprime == 0) throw Error(ErrorCode::DegenerateVPrime, "v' = 0: the design has v < k");
  p.bprime = *r * p.vprime / d.k();
  p.m = p.vprime;
  p.n = p.vprime + p.bprime;
  return p;
}

FieldMatrix source_projection(const Design& d, std::size_t ordinal, std::size_t m, const PrimeField& f) {
  const auto sources = d.v() + d.b();
  if (ordinal >= sources) throw Error(ErrorCode::OutOfRange, "source ordinal out of range");
  FieldMatrix out(f, m, sources * m);
  out.set_block(0, ordinal * m, FieldMatrix::identity(f, m));
  return out;
}

FieldMatrix partial_sum_row(const Design& d, std::size_t point, const CodeParams& params,
                            const PrimeField& f) {
  if (point >= d.v()) throw Error(ErrorCode::OutOfRange, "point index out of range");
  const auto m = params.m;
  FieldMatrix out(f, m, (d.v() + d.b()) * m);
  const auto eye = FieldMatrix::identity(f, m);
  out.set_block(0, point * m, eye);
  for (auto j : d.blocks_at(point)) out.set_block(0, (d.v() + j) * m, eye);
  return out;
}

SelectorSpec resolve_selector(const Design& d, std::size_t alpha, std::size_t beta) {
  const auto a = incidence_matrix(d);
  const auto gamma = block_index_gamma(a, alpha, beta);
  const auto ac = color_incidence(a);
  return {alpha, beta, static_cast<std::size_t>(ac(alpha, gamma)), gamma};
}

FieldMatrix selector_matrix(const SelectorSpec& spec, const CodeParams& params, const Design& d,
                            const PrimeField& f) {
  if (spec.color < 1 || spec.color > d.k()) {
    throw Error(ErrorCode::OutOfRange, "selector color " + std::to_string(spec.color) + " outside 1.." +
                                           std::to_string(d.k()));
  }
  if (spec.gamma >= d.b()) throw Error(ErrorCode::OutOfRange, "selector block index out of range");
  if (params.vprime == 0 || params.vprime % d.k() != 0) {
    throw Error(ErrorCode::ShapeMismatch, "selector needs fractional parameters with k | v'");
  }
  const auto s = params.slice(d);
  FieldMatrix out(f, s, (d.v() + d.b()) * params.m);
  const auto col = (d.v() + spec.gamma) * params.m + (spec.color - 1) * s;
  out.set_block(0, col, FieldMatrix::identity(f, s));
  return out;
}

std::vector<NodeId> decoder_inputs(const SumNetwork& n, const NodeId& terminal) {
  std::vector<NodeId> inputs;
  for (auto e : n.in_edges(terminal)) inputs.push_back(n.edges()[e].tail);
  return inputs;
}

std::size_t input_width(const NodeId& tail, const CodeParams& params) {
  if (tail.kind == NodeKind::BottleneckHead) return params.n;
  if (tail.is_source()) return params.m;
  throw Error(ErrorCode::ShapeMismatch, node_label(tail) + " cannot feed a terminal");
}

NetworkCode build_code_char_divides(const SumNetwork& n, const PrimeField& f) {
  const auto& d = n.design();
  require_lambda_one(d);
  if (regime_for(d, f) != Regime::CharDivides) {
    throw Error(ErrorCode::CharMismatch, std::to_string(f.modulus()) + " does not divide k-1 = " +
                                             std::to_string(d.k() - 1));
  }
  NetworkCode code{Regime::CharDivides, f, CodeParams::scalar(), {}, {}};
  for (std::size_t i = 0; i < d.v(); ++i) code.phi.push_back(partial_sum_row(d, i, code.params, f));
  for (std::size_t t = 0; t < n.num_sources(); ++t) {
    const auto terminal = n.terminal_at(t);
    auto inputs = decoder_inputs(n, terminal);
    auto map = plain_sum_decoder(inputs, code.params, f);
    code.psi.push_back({terminal, std::move(inputs), std::move(map)});
  }
  return code;
}

NetworkCode build_code_char_not_divides(const SumNetwork& n, const PrimeField& f) {
  const auto& d = n.design();
  require_lambda_one(d);
  if (regime_for(d, f) != Regime::CharNotDivides) {
    throw Error(ErrorCode::CharMismatch, std::to_string(f.modulus()) + " divides k-1 = " +
                                             std::to_string(d.k() - 1));
  }
  const auto params = CodeParams::fractional(d);
  const auto s = params.slice(d);
  const auto k = static_cast<std::int64_t>(d.k());
  const auto ac = color_incidence(incidence_matrix(d));

  NetworkCode code{Regime::CharNotDivides, f, params, {}, {}};
  for (std::size_t i = 0; i < d.v(); ++i) {
    std::vector<FieldMatrix> parts{partial_sum_row(d, i, params, f)};
    for (std::size_t beta = 0; beta < d.blocks_at(i).size(); ++beta) {
      parts.push_back(selector_matrix(resolve_selector(d, i, beta), params, d, f));
    }
    code.phi.push_back(FieldMatrix::vstack(parts));
  }

  const auto correction = FieldMatrix::identity(f, s).scaled(-(k - 1));
  for (std::size_t t = 0; t < n.num_sources(); ++t) {
    const auto terminal = n.terminal_at(t);
    auto inputs = decoder_inputs(n, terminal);
    // Head edges contribute [I_{v'} 0] phi_i = X'_i; direct edges add Z_1 + Z_2.
    auto map = plain_sum_decoder(inputs, params, f);
    if (terminal.kind == NodeKind::TerminalBlock) {
      const auto j = terminal.index;
      std::size_t col = 0;
      for (const auto& in : inputs) {
        if (in.kind == NodeKind::BottleneckHead) {
          const auto point = in.index;
          const auto color = static_cast<std::size_t>(ac(point, j));
          const auto beta = rank_in_row(d, point, j);
          // -(k-1) U_{alpha beta} lands on the color-th slice of the output.
          map.add_block((color - 1) * s, col + params.vprime + beta * s, correction);
        }
        col += input_width(in, params);
      }
    }
    code.psi.push_back({terminal, std::move(inputs), std::move(map)});
  }
  return code;
}

NetworkCode build_code(const SumNetwork& n, const PrimeField& f) {
  return regime_for(n.design(), f) == Regime::CharDivides ? build_code_char_divides(n, f)
                                                           : build_code_char_not_divides(n, f);
}

FieldMatrix reconstruct_block_source(const NetworkCode& code, const Design& d, std::size_t block) {
  if (code.regime != Regime::CharNotDivides) {
    throw Error(ErrorCode::InvalidArgument, "block reconstruction needs a fractional code");
  }
  if (block >= d.b()) throw Error(ErrorCode::OutOfRange, "block index out of range");
  const auto ac = color_incidence(incidence_matrix(d));
  const auto s = code.params.slice(d);
  std::vector<FieldMatrix> parts;
  for (std::size_t u = 1; u <= d.k(); ++u) {
    const auto alpha = point_with_color(ac, block, static_cast<int>(u));
    const auto beta = rank_in_row(d, alpha, block);
    const auto& phi = code.phi.at(alpha);
    parts.push_back(phi.block(code.params.vprime + beta * s, 0, s, phi.cols()));
  }
  return FieldMatrix::vstack(parts);
}

std::string code_to_json(const NetworkCode& code) {
  json phi = json::array();
  for (const auto& m : code.phi) phi.push_back(matrix_to_json(m));
  json psi = json::array();
  for (const auto& dec : code.psi) {
    json inputs = json::array();
    for (const auto& in : dec.inputs) inputs.push_back(node_label(in));
    psi.push_back({{"terminal", node_label(dec.terminal)},
                   {"inputs", std::move(inputs)},
                   {"map", matrix_to_json(dec.map)}});
  }
  const auto& p = code.params;
  json doc = {{"schema", kCodeSchema},
              {"field", code.field.modulus()},
              {"regime", to_string(code.regime)},
              {"params", {{"m", p.m}, {"n", p.n}, {"vprime", p.vprime}, {"bprime", p.bprime}, {"x", p.x}}},
              {"phi", std::move(phi)},
              {"psi", std::move(psi)}};
  return doc.dump() + "\n";
}

NetworkCode code_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("code JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("schema", "") != kCodeSchema) {
      throw Error(ErrorCode::ParseError, "code JSON: missing or unsupported schema");
    }
    const PrimeField f(doc.at("field").get<std::uint32_t>());
    const auto regime_text = doc.at("regime").get<std::string>();
    Regime regime;
    if (regime_text == to_string(Regime::CharDivides)) {
      regime = Regime::CharDivides;
    } else if (regime_text == to_string(Regime::CharNotDivides)) {
      regime = Regime::CharNotDivides;
    } else {
      throw Error(ErrorCode::ParseError, "code JSON: unknown regime " + regime_text);
    }
    const auto& jp = doc.at("params");
    CodeParams params{jp.at("m").get<std::size_t>(), jp.at("n").get<std::size_t>(),
                      jp.at("vprime").get<std::size_t>(), jp.at("bprime").get<std::size_t>(),
                      jp.at("x").get<std::size_t>()};
    if (params.m == 0 || params.n == 0) throw Error(ErrorCode::ShapeMismatch, "code JSON: m and n must be positive");

    NetworkCode code{regime, f, params, {}, {}};
    const auto& jphi = doc.at("phi");
    std::size_t cols = 0;
    if (!jphi.empty() && jphi[0].is_array() && !jphi[0].empty() && jphi[0][0].is_array()) cols = jphi[0][0].size();
    if (cols % params.m != 0) throw Error(ErrorCode::ShapeMismatch, "code JSON: phi width is not a multiple of m");
    for (const auto& jm : jphi) {
      auto m = matrix_from_json(jm, f, cols);
      if (m.rows() != params.n) {
        throw Error(ErrorCode::ShapeMismatch, "code JSON: phi has " + std::to_string(m.rows()) +
                                                  " rows, expected n = " + std::to_string(params.n));
      }
      code.phi.push_back(std::move(m));
    }
    for (const auto& jd : doc.at("psi")) {
      TerminalDecoder dec{parse_node_label(jd.at("terminal").get<std::string>()), {}, FieldMatrix(f, 0, 0)};
      std::size_t width = 0;
      for (const auto& jin : jd.at("inputs")) {
        dec.inputs.push_back(parse_node_label(jin.get<std::string>()));
        width += input_width(dec.inputs.back(), params);
      }
      dec.map = matrix_from_json(jd.at("map"), f, width);
      if (dec.map.rows() != params.m) {
        throw Error(ErrorCode::ShapeMismatch, "code JSON: decoder for " + node_label(dec.terminal) +
                                                  " has " + std::to_string(dec.map.rows()) + " rows, expected m");
      }
      code.psi.push_back(std::move(dec));
    }
    return code;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("code JSON: ") + e.what());
  }
}

}  // namespace sumnet
