#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sumnet/design.hpp"
#include "sumnet/field.hpp"
#include "sumnet/network.hpp"

namespace sumnet {

/// Which of the two code families applies: p | (k-1) or not.
enum class Regime { CharDivides, CharNotDivides };

const char* to_string(Regime r) noexcept;
Regime regime_for(const Design& d, const PrimeField& f);

/// Block lengths of an (m, n) fractional code.
///
/// Scalar (char-divides) codes have m = n = 1. Fractional codes use
/// v' = v - x with v = x (mod k), b' = r v'/k, m = v' and n = v' + b'.
struct CodeParams {
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t vprime = 0;
  std::size_t bprime = 0;
  std::size_t x = 0;

  static CodeParams scalar() { return {}; }
  /// Throws UnsupportedLambda for lambda != 1 and DegenerateVPrime if v' = 0.
  static CodeParams fractional(const Design& d);

  /// Width of one selector slice, v'/k.
  std::size_t slice(const Design& d) const { return vprime / d.k(); }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// The decoding map of one terminal: `map` is m x (sum of input widths), with
/// column blocks in the order of `inputs` (head edges carry n symbols, direct
/// edges carry m).
struct TerminalDecoder {
  NodeId terminal;
  std::vector<NodeId> inputs;
  FieldMatrix map;

  friend bool operator==(const TerminalDecoder&, const TerminalDecoder&) = default;
};

/// A linear code given by its global encoding matrices. Sources are stacked
/// points first then blocks, m symbols each, so every matrix acting on the
/// source vector has (v+b)m columns.
struct NetworkCode {
  Regime regime;
  PrimeField field;
  CodeParams params;
  /// phi[i] is the n x (v+b)m global map carried by bottleneck e_i.
  std::vector<FieldMatrix> phi;
  /// One decoder per terminal, ordered points first then blocks.
  std::vector<TerminalDecoder> psi;

  friend bool operator==(const NetworkCode&, const NetworkCode&) = default;
};

/// Selector U_{alpha beta}: the `color`-th slice of block source `gamma`,
/// where gamma is the beta-th block through point alpha and color is
/// A_c(alpha, gamma). Indices are 0-based; color is 1-based like A_c.
struct SelectorSpec {
  std::size_t alpha;
  std::size_t beta;
  std::size_t color;
  std::size_t gamma;
};

/// m x (v+b)m projection onto source number `ordinal`.
FieldMatrix source_projection(const Design& d, std::size_t ordinal, std::size_t m, const PrimeField& f);

/// X'_i = X_{p_i} + sum of X_B over B in <p_i>, as an m x (v+b)m matrix.
FieldMatrix partial_sum_row(const Design& d, std::size_t point, const CodeParams& params,
                            const PrimeField& f);

SelectorSpec resolve_selector(const Design& d, std::size_t alpha, std::size_t beta);

/// (v'/k) x (v+b)m matrix picking the selector slice. Throws OutOfRange for
/// a color outside 1..k or a block index outside the design.
FieldMatrix selector_matrix(const SelectorSpec& spec, const CodeParams& params, const Design& d,
                            const PrimeField& f);

/// Scalar code: phi_i = X'_i, decoders add the direct edges. Requires
/// p | (k-1) and lambda = 1.
NetworkCode build_code_char_divides(const SumNetwork& n, const PrimeField& f);

/// (v', v'+b') code: phi_i = [X'_i; U_i1; ...; U_ir]. Block terminals
/// subtract (k-1) X_B, rebuilt from the selectors. Requires p not dividing
/// (k-1) and lambda = 1.
NetworkCode build_code_char_not_divides(const SumNetwork& n, const PrimeField& f);

/// Picks the family by regime_for().
NetworkCode build_code(const SumNetwork& n, const PrimeField& f);

/// Stacks the selector rows of the k bottlenecks that carry slices of block
/// j, read out of the code's phi matrices. For a correct fractional code
/// this equals the projection onto X_{B_j}.
FieldMatrix reconstruct_block_source(const NetworkCode& code, const Design& d, std::size_t block);

/// Input layout of a terminal decoder in the network: in-edge tails in edge
/// order.
std::vector<NodeId> decoder_inputs(const SumNetwork& n, const NodeId& terminal);

/// Symbols carried by an edge leaving `tail`: n for bottleneck heads, m for sources.
std::size_t input_width(const NodeId& tail, const CodeParams& params);

std::string code_to_json(const NetworkCode& code);
/// Throws ParseError or ShapeMismatch (dimensions inconsistent with the params).
NetworkCode code_from_json(std::string_view text);

}  // namespace sumnet
