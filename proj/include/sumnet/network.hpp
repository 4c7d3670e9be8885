#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumnet/design.hpp"
#include "sumnet/report.hpp"

namespace sumnet {

enum class NodeKind {
  SourcePoint,
  SourceBlock,
  BottleneckTail,
  BottleneckHead,
  TerminalPoint,
  TerminalBlock,
};

/// A vertex of the sum-network, named by what it stands for. The index is the
/// 0-based point index (for point kinds and bottleneck ends) or block index.
struct NodeId {
  NodeKind kind;
  std::size_t index;

  bool is_source() const noexcept {
    return kind == NodeKind::SourcePoint || kind == NodeKind::SourceBlock;
  }
  bool is_terminal() const noexcept {
    return kind == NodeKind::TerminalPoint || kind == NodeKind::TerminalBlock;
  }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Labels: s_p1, s_B1, mt1, mh1, t_p1, t_B1 (1-indexed).
std::string node_label(const NodeId& n);
/// Inverse of node_label; throws Error(ParseError).
NodeId parse_node_label(std::string_view label);

enum class EdgeClass { Bottleneck, SourceToTail, HeadToTerminal, Direct };

const char* to_string(EdgeClass c) noexcept;

struct Edge {
  NodeId tail;
  NodeId head;
  EdgeClass kind;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// The DAG built from a design. Nodes are ordered by (kind, index); edges by
/// (tail, head). The constructor does not check the construction rules;
/// validate_network() does.
class SumNetwork {
 public:
  SumNetwork(Design design, std::vector<Edge> edges);

  const Design& design() const noexcept { return design_; }
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::size_t num_sources() const noexcept { return design_.v() + design_.b(); }
  /// Position of a source or terminal among its kind: points first, then blocks.
  std::size_t ordinal(const NodeId& n) const;
  NodeId source_at(std::size_t ordinal) const;
  NodeId terminal_at(std::size_t ordinal) const;

  /// Dense index of a node in nodes().
  std::size_t node_index(const NodeId& n) const;

  /// Indices into edges() of the edges entering / leaving n, in edge order.
  const std::vector<std::size_t>& in_edges(const NodeId& n) const { return in_.at(node_index(n)); }
  const std::vector<std::size_t>& out_edges(const NodeId& n) const { return out_.at(node_index(n)); }

  /// Index into edges() of the bottleneck edge e_i.
  std::optional<std::size_t> bottleneck_edge(std::size_t point) const;

  /// Node order such that every edge goes forward; nullopt if cyclic.
  std::optional<std::vector<NodeId>> topological_order() const;

  /// Copy with one edge removed.
  SumNetwork without_edge(std::size_t edge_index) const;

  friend bool operator==(const SumNetwork& a, const SumNetwork& b) {
    return a.design_ == b.design_ && a.edges_ == b.edges_;
  }

 private:
  Design design_;
  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Bottleneck edges (mt_i, mh_i), the edges feeding mt_i from s_{p_i} and the
/// sources of <p_i>, the edges from mh_i to t_{p_i} and the terminals of
/// <p_i>, plus every direct source-to-terminal edge.
SumNetwork build_sum_network(const Design& d);

/// Node/degree counts, |M|, acyclicity, source/terminal degree rules and
/// all-pairs source-to-terminal reachability.
ValidationReport validate_network(const SumNetwork& n);

struct DotOptions {
  /// When non-empty, only these terminals, their in-edges, the bottlenecks
  /// feeding them and those bottlenecks' source edges are drawn.
  std::vector<NodeId> terminals;
};

std::string network_to_dot(const SumNetwork& n, const DotOptions& options = {});
std::string network_to_json(const SumNetwork& n);
/// Throws ParseError for malformed documents and InvalidDesign for bad designs.
SumNetwork network_from_json(std::string_view text);

}  // namespace sumnet
