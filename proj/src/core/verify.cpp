#include "sumnet/verify.hpp"

#include <limits>
#include <numeric>
#include <random>

#include "sumnet/error.hpp"

namespace sumnet {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "rational multiply overflows");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "rational add overflows");
  return out;
}

std::string vector_text(const SymbolVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

/// Global map of the value on an edge leaving `tail`.
FieldMatrix input_map(const SumNetwork& n, const NetworkCode& code, const NodeId& tail) {
  if (tail.kind == NodeKind::BottleneckHead) return code.phi.at(tail.index);
  return source_projection(n.design(), n.ordinal(tail), code.params.m, code.field);
}

FieldMatrix sum_map(const SumNetwork& n, const NetworkCode& code) {
  const auto m = code.params.m;
  FieldMatrix out(code.field, m, n.num_sources() * m);
  const auto eye = FieldMatrix::identity(code.field, m);
  for (std::size_t s = 0; s < n.num_sources(); ++s) out.set_block(0, s * m, eye);
  return out;
}

/// Sum over the points of block j plus every block of <B_j>.
FieldMatrix lemma2_target(const SumNetwork& n, const NetworkCode& code, std::size_t block) {
  const auto& d = n.design();
  const auto m = code.params.m;
  FieldMatrix out(code.field, m, n.num_sources() * m);
  const auto eye = FieldMatrix::identity(code.field, m);
  for (auto p : d.block(block)) out.set_block(0, p * m, eye);
  for (auto b : d.neighborhood(block)) out.set_block(0, (d.v() + b) * m, eye);
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = checked_mul(num, -1);
    den = checked_mul(den, -1);
  }
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return {checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)), checked_mul(a.den_, b.den_)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(checked_mul(b.num_, -1), b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  return {checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero rational");
  return {checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_)};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return checked_mul(a.num_, b.den_) <=> checked_mul(b.num_, a.den_);
}

void check_code_shape(const SumNetwork& n, const NetworkCode& code) {
  const auto& d = n.design();
  const auto width = n.num_sources() * code.params.m;
  if (code.phi.size() != d.v()) {
    throw Error(ErrorCode::ShapeMismatch, "code has " + std::to_string(code.phi.size()) +
                                              " bottleneck maps, network has " + std::to_string(d.v()));
  }
  for (std::size_t i = 0; i < code.phi.size(); ++i) {
    const auto& phi = code.phi[i];
    if (!(phi.field() == code.field) || phi.rows() != code.params.n || phi.cols() != width) {
      throw Error(ErrorCode::ShapeMismatch, "phi_" + std::to_string(i + 1) + " is " +
                                                std::to_string(phi.rows()) + "x" + std::to_string(phi.cols()) +
                                                ", expected " + std::to_string(code.params.n) + "x" +
                                                std::to_string(width));
    }
    // mt_i only sees its in-edges, so phi_i must vanish on every other source.
    std::vector<bool> feeds(n.num_sources(), false);
    for (auto e : n.in_edges({NodeKind::BottleneckTail, i})) {
      const auto& tail = n.edges()[e].tail;
      if (tail.is_source()) feeds[n.ordinal(tail)] = true;
    }
    for (std::size_t s = 0; s < n.num_sources(); ++s) {
      if (feeds[s] || phi.block(0, s * code.params.m, phi.rows(), code.params.m).is_zero()) continue;
      throw Error(ErrorCode::ShapeMismatch, "phi_" + std::to_string(i + 1) + " depends on " +
                                                node_label(n.source_at(s)) + ", which does not feed mt" +
                                                std::to_string(i + 1));
    }
  }
  if (code.psi.size() != n.num_sources()) {
    throw Error(ErrorCode::ShapeMismatch, "code has " + std::to_string(code.psi.size()) +
                                              " decoders, network has " + std::to_string(n.num_sources()) +
                                              " terminals");
  }
  for (std::size_t t = 0; t < code.psi.size(); ++t) {
    const auto& dec = code.psi[t];
    const auto terminal = n.terminal_at(t);
    if (!(dec.terminal == terminal)) {
      throw Error(ErrorCode::ShapeMismatch, "decoder " + std::to_string(t + 1) + " is for " +
                                                node_label(dec.terminal) + ", expected " + node_label(terminal));
    }
    if (dec.inputs != decoder_inputs(n, terminal)) {
      throw Error(ErrorCode::ShapeMismatch, "decoder inputs of " + node_label(terminal) +
                                                " do not match the terminal's in-edges");
    }
    std::size_t cols = 0;
    for (const auto& in : dec.inputs) cols += input_width(in, code.params);
    if (dec.map.rows() != code.params.m || dec.map.cols() != cols || !(dec.map.field() == code.field)) {
      throw Error(ErrorCode::ShapeMismatch, "decoder map of " + node_label(terminal) + " has wrong shape");
    }
  }
}

VerifyResult transfer_check(const SumNetwork& n, const NetworkCode& code) {
  check_code_shape(n, code);
  const auto m = code.params.m;
  const auto expected = sum_map(n, code);
  VerifyResult result;
  for (const auto& dec : code.psi) {
    std::vector<FieldMatrix> parts;
    for (const auto& in : dec.inputs) parts.push_back(input_map(n, code, in));
    const auto transfer = dec.map * FieldMatrix::vstack(parts);
    if (transfer == expected) continue;
    // Name the first source whose coefficient block is not the identity.
    std::string detail;
    for (std::size_t s = 0; s < n.num_sources() && detail.empty(); ++s) {
      const auto got = transfer.block(0, s * m, m, m);
      if (!(got == FieldMatrix::identity(code.field, m))) {
        for (std::size_t c = 0; c < m && detail.empty(); ++c) {
          for (std::size_t r = 0; r < m; ++r) {
            if (got(r, c) != (r == c ? 1u : 0u)) {
              detail = "coefficient of " + node_label(n.source_at(s)) + "[" + std::to_string(c + 1) +
                       "] in output symbol " + std::to_string(r + 1) + " is " + std::to_string(got(r, c)) +
                       ", expected " + (r == c ? "1" : "0") + "; witness: " + node_label(n.source_at(s)) +
                       " = e" + std::to_string(c + 1) + ", all other sources 0";
              break;
            }
          }
        }
      }
    }
    result.failures.push_back({node_label(dec.terminal), detail});
  }
  return result;
}

FieldMatrix local_encoding(const SumNetwork& n, const NetworkCode& code, std::size_t point) {
  const auto m = code.params.m;
  const auto& phi = code.phi.at(point);
  std::vector<FieldMatrix> parts;
  for (auto e : n.in_edges({NodeKind::BottleneckTail, point})) {
    const auto& tail = n.edges()[e].tail;
    if (!tail.is_source()) throw Error(ErrorCode::ShapeMismatch, "mt" + std::to_string(point + 1) + " fed by a non-source");
    parts.push_back(phi.block(0, n.ordinal(tail) * m, phi.rows(), m));
  }
  if (parts.empty()) return FieldMatrix(code.field, phi.rows(), 0);
  return FieldMatrix::hstack(parts);
}

namespace {

/// Evaluates the network edge by edge. Topological order and local encodings
/// are computed once so repeated runs only do the vector arithmetic.
class Simulator {
 public:
  Simulator(const SumNetwork& n, const NetworkCode& code) : n_(n), code_(code) {
    check_code_shape(n, code);
    auto order = n.topological_order();
    if (!order) throw Error(ErrorCode::ShapeMismatch, "network is cyclic");
    order_ = std::move(*order);
    for (std::size_t i = 0; i < n.design().v(); ++i) local_.push_back(local_encoding(n, code, i));
    for (const auto& node : order_) {
      if (node.kind == NodeKind::BottleneckHead && n.in_edges(node).size() != 1) {
        throw Error(ErrorCode::ShapeMismatch, node_label(node) + " needs exactly one in-edge");
      }
    }
  }

  std::vector<SymbolVector> run(const std::vector<SymbolVector>& sources) {
    const auto m = code_.params.m;
    if (sources.size() != n_.num_sources()) {
      throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(n_.num_sources()) + " source vectors");
    }
    for (const auto& s : sources) {
      if (s.size() != m) {
        throw Error(ErrorCode::ShapeMismatch, "source vectors must have m = " + std::to_string(m) + " symbols");
      }
    }
    edge_value_.assign(n_.edges().size(), {});
    std::vector<SymbolVector> outputs(n_.num_sources());
    for (const auto& node : order_) {
      switch (node.kind) {
        case NodeKind::SourcePoint:
        case NodeKind::SourceBlock:
          emit(node, sources[n_.ordinal(node)]);
          break;
        case NodeKind::BottleneckTail:
          emit(node, local_[node.index].apply(gather(node)));
          break;
        case NodeKind::BottleneckHead:
          emit(node, gather(node));
          break;
        case NodeKind::TerminalPoint:
        case NodeKind::TerminalBlock: {
          const auto t = n_.ordinal(node);
          outputs[t] = code_.psi[t].map.apply(gather(node));
          break;
        }
      }
    }
    return outputs;
  }

 private:
  SymbolVector gather(const NodeId& node) const {
    SymbolVector in;
    for (auto e : n_.in_edges(node)) in.insert(in.end(), edge_value_[e].begin(), edge_value_[e].end());
    return in;
  }
  void emit(const NodeId& node, const SymbolVector& value) {
    for (auto e : n_.out_edges(node)) edge_value_[e] = value;
  }

  const SumNetwork& n_;
  const NetworkCode& code_;
  std::vector<NodeId> order_;
  std::vector<FieldMatrix> local_;
  std::vector<SymbolVector> edge_value_;
};

}  // namespace

std::vector<SymbolVector> simulate(const SumNetwork& n, const NetworkCode& code,
                                   const std::vector<SymbolVector>& sources) {
  return Simulator(n, code).run(sources);
}

TrialSummary run_trials(const SumNetwork& n, const NetworkCode& code, std::uint64_t trials,
                        std::uint64_t seed) {
  const auto& f = code.field;
  const auto m = code.params.m;
  std::mt19937_64 rng(seed);
  // Rejection sampling keeps the stream identical across standard libraries.
  const std::uint64_t p = f.modulus();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % p;
  auto draw = [&]() -> std::uint32_t {
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    return static_cast<std::uint32_t>(x % p);
  };

  Simulator sim(n, code);
  TrialSummary summary;
  summary.trials = trials;
  summary.seed = seed;
  std::vector<SymbolVector> sources(n.num_sources(), SymbolVector(m));
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SymbolVector expected(m, 0);
    for (auto& s : sources) {
      for (std::size_t c = 0; c < m; ++c) {
        s[c] = draw();
        expected[c] = f.add(expected[c], s[c]);
      }
    }
    const auto outputs = sim.run(sources);
    bool pass = true;
    for (std::size_t t = 0; t < outputs.size(); ++t) {
      if (outputs[t] == expected) continue;
      pass = false;
      if (summary.witnesses.size() < TrialSummary::kMaxWitnesses) {
        summary.witnesses.push_back({node_label(n.terminal_at(t)),
                                     "trial " + std::to_string(trial) + ": decoded " + vector_text(outputs[t]) +
                                         ", sum " + vector_text(expected)});
      }
    }
    if (pass) ++summary.passed;
  }
  return summary;
}

VerifyResult lemma1_check(const SumNetwork& n, const NetworkCode& code) {
  check_code_shape(n, code);
  VerifyResult result;
  for (std::size_t i = 0; i < n.design().v(); ++i) {
    const auto target = partial_sum_row(n.design(), i, code.params, code.field);
    if (!row_space_contains(code.phi[i], target)) {
      result.failures.push_back({"e" + std::to_string(i + 1), "X'_" + std::to_string(i + 1) +
                                                                  " is not a function of phi_" + std::to_string(i + 1)});
    }
  }
  return result;
}

bool partial_sum_recoverable(const SumNetwork& n, const NetworkCode& code, std::size_t block,
                             const std::vector<std::size_t>& points) {
  const auto target = lemma2_target(n, code, block);
  if (points.empty()) return target.is_zero();
  std::vector<FieldMatrix> parts;
  for (auto p : points) parts.push_back(code.phi.at(p));
  return row_space_contains(FieldMatrix::vstack(parts), target);
}

VerifyResult lemma2_check(const SumNetwork& n, const NetworkCode& code) {
  check_code_shape(n, code);
  VerifyResult result;
  const auto& d = n.design();
  for (std::size_t j = 0; j < d.b(); ++j) {
    if (!partial_sum_recoverable(n, code, j, d.block(j))) {
      result.failures.push_back({node_label({NodeKind::TerminalBlock, j}),
                                 "partial sum over B" + std::to_string(j + 1) +
                                     " and <B" + std::to_string(j + 1) + "> is not a function of its bottlenecks"});
    }
  }
  return result;
}

Rational cutset_bound(const Design& d) {
  if (d.lambda() != 1) throw Error(ErrorCode::UnsupportedLambda, "bounds are stated for lambda = 1");
  const auto v = static_cast<std::int64_t>(d.v()), b = static_cast<std::int64_t>(d.b()),
             k = static_cast<std::int64_t>(d.k());
  const Rational bound(v, v + b);
  const Rational closed(k * (k - 1), k * (k - 1) + v - 1);
  if (bound != closed) {
    throw Error(ErrorCode::InvalidDesign, "v/(v+b) = " + bound.str() + " disagrees with k(k-1)/(k(k-1)+v-1) = " +
                                              closed.str());
  }
  return bound;
}

CapacityReport capacity_report(const Design& d, const PrimeField& f) {
  if (d.lambda() != 1) throw Error(ErrorCode::UnsupportedLambda, "capacity is reported for lambda = 1 only");
  const auto regime = regime_for(d, f);
  if (regime == Regime::CharDivides) return {regime, Rational(1), Rational(1), CodeParams::scalar()};
  const auto params = CodeParams::fractional(d);
  const Rational achieved(static_cast<std::int64_t>(params.m), static_cast<std::int64_t>(params.n));
  return {regime, achieved, cutset_bound(d), params};
}

}  // namespace sumnet
