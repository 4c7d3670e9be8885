#include "sumnet/network.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sumnet/error.hpp"

namespace sumnet {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kNetworkSchema = "sumnet.network/1";

bool edge_less(const Edge& a, const Edge& b) {
  return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
}

std::optional<EdgeClass> parse_edge_class(std::string_view s) {
  for (auto c : {EdgeClass::Bottleneck, EdgeClass::SourceToTail, EdgeClass::HeadToTerminal,
                 EdgeClass::Direct}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

bool class_matches_endpoints(const Edge& e) {
  switch (e.kind) {
    case EdgeClass::Bottleneck:
      return e.tail.kind == NodeKind::BottleneckTail && e.head.kind == NodeKind::BottleneckHead &&
             e.tail.index == e.head.index;
    case EdgeClass::SourceToTail:
      return e.tail.is_source() && e.head.kind == NodeKind::BottleneckTail;
    case EdgeClass::HeadToTerminal:
      return e.tail.kind == NodeKind::BottleneckHead && e.head.is_terminal();
    case EdgeClass::Direct:
      return e.tail.is_source() && e.head.is_terminal();
  }
  return false;
}

}  // namespace

std::string node_label(const NodeId& n) {
  const auto i = std::to_string(n.index + 1);
  switch (n.kind) {
    case NodeKind::SourcePoint: return "s_p" + i;
    case NodeKind::SourceBlock: return "s_B" + i;
    case NodeKind::BottleneckTail: return "mt" + i;
    case NodeKind::BottleneckHead: return "mh" + i;
    case NodeKind::TerminalPoint: return "t_p" + i;
    case NodeKind::TerminalBlock: return "t_B" + i;
  }
  return "?";
}

NodeId parse_node_label(std::string_view label) {
  static constexpr std::pair<std::string_view, NodeKind> kPrefixes[] = {
      {"s_p", NodeKind::SourcePoint},    {"s_B", NodeKind::SourceBlock},
      {"mt", NodeKind::BottleneckTail},  {"mh", NodeKind::BottleneckHead},
      {"t_p", NodeKind::TerminalPoint},  {"t_B", NodeKind::TerminalBlock},
  };
  for (const auto& [prefix, kind] : kPrefixes) {
    if (!label.starts_with(prefix)) continue;
    const auto digits = label.substr(prefix.size());
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && value >= 1) {
      return {kind, value - 1};
    }
  }
  throw Error(ErrorCode::ParseError, "bad node label '" + std::string(label) + "'");
}

const char* to_string(EdgeClass c) noexcept {
  switch (c) {
    case EdgeClass::Bottleneck: return "bottleneck";
    case EdgeClass::SourceToTail: return "source-to-tail";
    case EdgeClass::HeadToTerminal: return "head-to-terminal";
    case EdgeClass::Direct: return "direct";
  }
  return "?";
}

SumNetwork::SumNetwork(Design design, std::vector<Edge> edges)
    : design_(std::move(design)), edges_(std::move(edges)) {
  const auto v = design_.v(), b = design_.b();
  for (auto kind : {NodeKind::SourcePoint, NodeKind::SourceBlock, NodeKind::BottleneckTail,
                    NodeKind::BottleneckHead, NodeKind::TerminalPoint, NodeKind::TerminalBlock}) {
    const bool block_kind = kind == NodeKind::SourceBlock || kind == NodeKind::TerminalBlock;
    for (std::size_t i = 0; i < (block_kind ? b : v); ++i) nodes_.push_back({kind, i});
  }
  std::stable_sort(edges_.begin(), edges_.end(), edge_less);
  in_.resize(nodes_.size());
  out_.resize(nodes_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[node_index(edges_[e].tail)].push_back(e);
    in_[node_index(edges_[e].head)].push_back(e);
  }
}

std::size_t SumNetwork::node_index(const NodeId& n) const {
  const auto v = design_.v(), b = design_.b();
  std::size_t offset = 0, limit = v;
  switch (n.kind) {
    case NodeKind::SourcePoint: offset = 0; limit = v; break;
    case NodeKind::SourceBlock: offset = v; limit = b; break;
    case NodeKind::BottleneckTail: offset = v + b; limit = v; break;
    case NodeKind::BottleneckHead: offset = 2 * v + b; limit = v; break;
    case NodeKind::TerminalPoint: offset = 3 * v + b; limit = v; break;
    case NodeKind::TerminalBlock: offset = 4 * v + b; limit = b; break;
  }
  if (n.index >= limit) throw Error(ErrorCode::OutOfRange, "node " + node_label(n) + " does not exist");
  return offset + n.index;
}

std::size_t SumNetwork::ordinal(const NodeId& n) const {
  switch (n.kind) {
    case NodeKind::SourcePoint:
    case NodeKind::TerminalPoint:
      if (n.index < design_.v()) return n.index;
      break;
    case NodeKind::SourceBlock:
    case NodeKind::TerminalBlock:
      if (n.index < design_.b()) return design_.v() + n.index;
      break;
    default:
      break;
  }
  throw Error(ErrorCode::OutOfRange, node_label(n) + " is not a source or terminal");
}

NodeId SumNetwork::source_at(std::size_t ordinal) const {
  if (ordinal < design_.v()) return {NodeKind::SourcePoint, ordinal};
  if (ordinal < num_sources()) return {NodeKind::SourceBlock, ordinal - design_.v()};
  throw Error(ErrorCode::OutOfRange, "source ordinal out of range");
}

NodeId SumNetwork::terminal_at(std::size_t ordinal) const {
  if (ordinal < design_.v()) return {NodeKind::TerminalPoint, ordinal};
  if (ordinal < num_sources()) return {NodeKind::TerminalBlock, ordinal - design_.v()};
  throw Error(ErrorCode::OutOfRange, "terminal ordinal out of range");
}

std::optional<std::size_t> SumNetwork::bottleneck_edge(std::size_t point) const {
  for (auto e : out_edges({NodeKind::BottleneckTail, point})) {
    if (edges_[e].kind == EdgeClass::Bottleneck) return e;
  }
  return std::nullopt;
}

std::optional<std::vector<NodeId>> SumNetwork::topological_order() const {
  std::vector<std::size_t> indegree(nodes_.size());
  for (const auto& e : edges_) ++indegree[node_index(e.head)];
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::vector<NodeId> order;
  while (!ready.empty()) {
    const auto u = ready.front();
    ready.pop_front();
    order.push_back(nodes_[u]);
    for (auto e : out_[u]) {
      const auto w = node_index(edges_[e].head);
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (order.size() != nodes_.size()) return std::nullopt;
  return order;
}

SumNetwork SumNetwork::without_edge(std::size_t edge_index) const {
  auto edges = edges_;
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(edge_index));
  return SumNetwork(design_, std::move(edges));
}

SumNetwork build_sum_network(const Design& d) {
  if (auto report = verify_design(d); !report.ok()) throw InvalidDesignError(std::move(report));
  const auto v = d.v(), b = d.b();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < v; ++i) {
    const NodeId tail{NodeKind::BottleneckTail, i}, head{NodeKind::BottleneckHead, i};
    edges.push_back({tail, head, EdgeClass::Bottleneck});
    edges.push_back({{NodeKind::SourcePoint, i}, tail, EdgeClass::SourceToTail});
    edges.push_back({head, {NodeKind::TerminalPoint, i}, EdgeClass::HeadToTerminal});
    for (auto j : d.blocks_at(i)) {
      edges.push_back({{NodeKind::SourceBlock, j}, tail, EdgeClass::SourceToTail});
      edges.push_back({head, {NodeKind::TerminalBlock, j}, EdgeClass::HeadToTerminal});
    }
  }
  for (std::size_t i = 0; i < v; ++i) {
    const NodeId t{NodeKind::TerminalPoint, i};
    const auto& around = d.blocks_at(i);
    for (std::size_t l = 0; l < v; ++l) {
      if (l != i) edges.push_back({{NodeKind::SourcePoint, l}, t, EdgeClass::Direct});
    }
    for (std::size_t l = 0; l < b; ++l) {
      if (!std::binary_search(around.begin(), around.end(), l)) {
        edges.push_back({{NodeKind::SourceBlock, l}, t, EdgeClass::Direct});
      }
    }
  }
  for (std::size_t j = 0; j < b; ++j) {
    const NodeId t{NodeKind::TerminalBlock, j};
    const auto around = d.neighborhood(j);
    for (std::size_t l = 0; l < v; ++l) {
      if (!d.contains(j, l)) edges.push_back({{NodeKind::SourcePoint, l}, t, EdgeClass::Direct});
    }
    for (std::size_t l = 0; l < b; ++l) {
      if (!std::binary_search(around.begin(), around.end(), l)) {
        edges.push_back({{NodeKind::SourceBlock, l}, t, EdgeClass::Direct});
      }
    }
  }
  SumNetwork net(d, std::move(edges));
  const auto& built = net.edges();
  const auto dup = std::adjacent_find(built.begin(), built.end(), [](const Edge& x, const Edge& y) {
    return x.tail == y.tail && x.head == y.head;
  });
  if (dup != built.end()) {
    throw Error(ErrorCode::ShapeMismatch, "construction produced parallel edge " +
                                              node_label(dup->tail) + "->" + node_label(dup->head));
  }
  return net;
}

ValidationReport validate_network(const SumNetwork& n) {
  ValidationReport report;
  const auto& d = n.design();
  const auto v = d.v(), b = d.b();

  const auto expected_nodes = 2 * (v + b) + 2 * v;
  if (n.nodes().size() != expected_nodes) {
    report.add("node-count", std::to_string(n.nodes().size()) + " nodes, expected 2(v+b)+2v = " +
                                 std::to_string(expected_nodes));
  }

  std::size_t bottlenecks = 0, incident = 0;
  for (std::size_t e = 0; e < n.edges().size(); ++e) {
    const auto& edge = n.edges()[e];
    if (!class_matches_endpoints(edge)) {
      report.add("edge-class", node_label(edge.tail) + "->" + node_label(edge.head) +
                                   " is tagged " + to_string(edge.kind));
    }
    if (edge.kind == EdgeClass::Bottleneck) ++bottlenecks;
    if (edge.kind != EdgeClass::Direct) ++incident;
    if (e > 0 && n.edges()[e - 1].tail == edge.tail && n.edges()[e - 1].head == edge.head) {
      report.add("parallel-edge", node_label(edge.tail) + "->" + node_label(edge.head));
    }
  }
  if (bottlenecks != v) {
    report.add("bottleneck-count", std::to_string(bottlenecks) + " bottleneck edges, expected v = " +
                                       std::to_string(v));
  }
  for (std::size_t i = 0; i < v; ++i) {
    if (!n.bottleneck_edge(i)) report.add("bottleneck-count", "missing bottleneck e" + std::to_string(i + 1));
  }

  const auto r = d.replication();
  if (r) {
    for (std::size_t i = 0; i < v; ++i) {
      const auto in = n.in_edges({NodeKind::BottleneckTail, i}).size();
      const auto out = n.out_edges({NodeKind::BottleneckHead, i}).size();
      if (in != *r + 1) {
        report.add("tail-degree", "mt" + std::to_string(i + 1) + " has in-degree " + std::to_string(in) +
                                      ", expected r+1 = " + std::to_string(*r + 1));
      }
      if (out != *r + 1) {
        report.add("head-degree", "mh" + std::to_string(i + 1) + " has out-degree " +
                                      std::to_string(out) + ", expected r+1 = " + std::to_string(*r + 1));
      }
    }
    const auto expected_m = v + 2 * v * (*r + 1);
    if (incident != expected_m) {
      report.add("bottleneck-incident-count", "|M| = " + std::to_string(incident) +
                                                  ", expected v+2v(r+1) = " + std::to_string(expected_m));
    }
  } else {
    report.add("replication", "design has no integral replication number r");
  }

  for (const auto& node : n.nodes()) {
    if (node.is_source() && !n.in_edges(node).empty()) {
      report.add("source-in", node_label(node) + " has incoming edges");
    }
    if (node.is_terminal() && !n.out_edges(node).empty()) {
      report.add("terminal-out", node_label(node) + " has outgoing edges");
    }
  }

  if (!n.topological_order()) report.add("acyclic", "graph contains a directed cycle");

  for (std::size_t s = 0; s < n.num_sources(); ++s) {
    const auto source = n.source_at(s);
    std::vector<bool> seen(n.nodes().size(), false);
    std::deque<std::size_t> queue{n.node_index(source)};
    seen[queue.front()] = true;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto e : n.out_edges(n.nodes()[u])) {
        const auto w = n.node_index(n.edges()[e].head);
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t t = 0; t < n.num_sources(); ++t) {
      const auto terminal = n.terminal_at(t);
      if (!seen[n.node_index(terminal)]) {
        report.add("reachability", node_label(terminal) + " is not reachable from " + node_label(source));
      }
    }
  }
  return report;
}

std::string network_to_dot(const SumNetwork& n, const DotOptions& options) {
  const std::set<NodeId> wanted(options.terminals.begin(), options.terminals.end());
  const bool filtered = !wanted.empty();

  std::set<std::size_t> heads_used;  // bottleneck indices feeding a wanted terminal
  if (filtered) {
    for (const auto& e : n.edges()) {
      if (e.kind == EdgeClass::HeadToTerminal && wanted.count(e.head)) heads_used.insert(e.tail.index);
    }
  }
  auto keep_node = [&](const NodeId& node) {
    if (!filtered || node.is_source()) return true;
    if (node.is_terminal()) return wanted.count(node) > 0;
    return heads_used.count(node.index) > 0;
  };
  auto keep_edge = [&](const Edge& e) {
    if (!filtered) return true;
    switch (e.kind) {
      case EdgeClass::Bottleneck:
      case EdgeClass::SourceToTail: return heads_used.count(e.head.index) > 0;
      case EdgeClass::HeadToTerminal:
      case EdgeClass::Direct: return wanted.count(e.head) > 0;
    }
    return false;
  };

  std::ostringstream out;
  out << "digraph sumnet {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  out << "  { rank=source;";
  for (const auto& node : n.nodes()) {
    if (node.is_source()) out << " \"" << node_label(node) << "\";";
  }
  out << " }\n";
  for (const auto& node : n.nodes()) {
    if (!node.is_source() && keep_node(node)) {
      out << "  \"" << node_label(node) << "\"" << (node.is_terminal() ? " [shape=box]" : "") << ";\n";
    }
  }
  for (const auto& e : n.edges()) {
    if (!keep_edge(e)) continue;
    out << "  \"" << node_label(e.tail) << "\" -> \"" << node_label(e.head) << "\"";
    switch (e.kind) {
      case EdgeClass::Bottleneck:
        out << " [label=\"e" << e.tail.index + 1 << "\", style=bold, penwidth=3, arrowsize=1.5]";
        break;
      case EdgeClass::Direct:
        out << " [style=dashed, color="
            << (e.head.kind == NodeKind::TerminalPoint ? "blue" : "red") << "]";
        break;
      default:
        out << " [arrowhead=none]";
        break;
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string network_to_json(const SumNetwork& n) {
  json design = json::parse(design_to_json(n.design()));
  design.erase("schema");
  json nodes = json::array();
  for (const auto& node : n.nodes()) nodes.push_back(node_label(node));
  json edges = json::array();
  for (const auto& e : n.edges()) {
    edges.push_back({{"tail", node_label(e.tail)}, {"head", node_label(e.head)}, {"class", to_string(e.kind)}});
  }
  json doc = {{"schema", kNetworkSchema},
              {"design", std::move(design)},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

SumNetwork network_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("network JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != kNetworkSchema) {
    throw Error(ErrorCode::ParseError, "network JSON: missing or unsupported schema");
  }
  if (!doc.contains("design") || !doc.contains("edges") || !doc["edges"].is_array()) {
    throw Error(ErrorCode::ParseError, "network JSON: needs 'design' and 'edges'");
  }
  Design d = design_from_json(doc["design"].dump());
  std::vector<Edge> edges;
  for (const auto& je : doc["edges"]) {
    if (!je.is_object() || !je.contains("tail") || !je.contains("head") || !je.contains("class") ||
        !je["tail"].is_string() || !je["head"].is_string() || !je["class"].is_string()) {
      throw Error(ErrorCode::ParseError, "network JSON: malformed edge " + je.dump());
    }
    const auto kind = parse_edge_class(je["class"].get<std::string>());
    if (!kind) throw Error(ErrorCode::ParseError, "network JSON: unknown edge class " + je["class"].dump());
    edges.push_back({parse_node_label(je["tail"].get<std::string>()),
                     parse_node_label(je["head"].get<std::string>()), *kind});
  }
  try {
    SumNetwork net(std::move(d), std::move(edges));
    if (doc.contains("nodes")) {
      std::vector<std::string> listed;
      for (const auto& jn : doc["nodes"]) listed.push_back(jn.get<std::string>());
      std::vector<std::string> expected;
      for (const auto& node : net.nodes()) expected.push_back(node_label(node));
      if (listed != expected) throw Error(ErrorCode::ParseError, "network JSON: node list does not match design");
    }
    return net;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OutOfRange) throw Error(ErrorCode::ParseError, std::string("network JSON: ") + e.what());
    throw;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("network JSON: ") + e.what());
  }
}

}  // namespace sumnet
