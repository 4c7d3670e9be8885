#include "sumnet/design.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sumnet {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kDesignSchema = "sumnet.design/1";

std::string describe(const ValidationReport& report) {
  std::string out = "invalid design:";
  for (const auto& v : report.violations) out += " [" + v.check + "] " + v.message + ";";
  return out;
}

std::string block_text(const Design::Block& block) {
  std::string s = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(block[i] + 1);
  }
  return s + "}";
}

}  // namespace

Design::Design(std::size_t v, std::size_t k, std::size_t lambda, std::vector<Block> blocks)
    : v_(v), k_(k), lambda_(lambda), blocks_(std::move(blocks)), point_blocks_(v) {
  if (v == 0) throw Error(ErrorCode::InvalidArgument, "a design needs at least one point");
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    auto& block = blocks_[j];
    std::sort(block.begin(), block.end());
    for (auto p : block) {
      if (p >= v) {
        throw Error(ErrorCode::InvalidArgument, "block " + std::to_string(j + 1) + " names point " +
                                                    std::to_string(p + 1) + " outside 1.." +
                                                    std::to_string(v));
      }
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i == 0 || block[i] != block[i - 1]) point_blocks_[block[i]].push_back(j);
    }
  }
}

std::optional<std::size_t> Design::replication() const noexcept {
  if (k_ < 2) return std::nullopt;
  const auto num = lambda_ * (v_ - 1);
  if (num % (k_ - 1) != 0) return std::nullopt;
  return num / (k_ - 1);
}

bool Design::contains(std::size_t block, std::size_t point) const {
  const auto& b = blocks_.at(block);
  return std::binary_search(b.begin(), b.end(), point);
}

std::vector<std::size_t> Design::neighborhood(std::size_t block) const {
  std::set<std::size_t> out;
  for (auto p : blocks_.at(block)) out.insert(point_blocks_[p].begin(), point_blocks_[p].end());
  return {out.begin(), out.end()};
}

ValidationReport verify_design(const Design& d) {
  ValidationReport report;
  const auto v = d.v(), k = d.k();
  if (k < 2 || k > v) {
    report.add("parameters", "block size k=" + std::to_string(k) + " must satisfy 2 <= k <= v=" +
                                 std::to_string(v));
  }
  if (d.lambda() == 0) report.add("parameters", "lambda must be positive");
  if (d.b() == 0) report.add("parameters", "design has no blocks");

  for (std::size_t j = 0; j < d.b(); ++j) {
    const auto& block = d.block(j);
    if (std::adjacent_find(block.begin(), block.end()) != block.end()) {
      report.add("block-size", "block " + std::to_string(j + 1) + " " + block_text(block) +
                                   " repeats a point");
    } else if (block.size() != k) {
      report.add("block-size", "block " + std::to_string(j + 1) + " " + block_text(block) + " has " +
                                   std::to_string(block.size()) + " points, expected " +
                                   std::to_string(k));
    }
  }

  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = a + 1; b < v; ++b) {
      std::size_t count = 0;
      for (std::size_t j = 0; j < d.b(); ++j) {
        if (d.contains(j, a) && d.contains(j, b)) ++count;
      }
      if (count != d.lambda()) {
        report.add("pair-coverage", "pair {" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                        "} covered " + std::to_string(count) + " times, expected " +
                                        std::to_string(d.lambda()));
      }
    }
  }

  const auto r = d.replication();
  if (!r) {
    if (k >= 2) {
      report.add("replication", "lambda(v-1)/(k-1) = " + std::to_string(d.lambda() * (v - 1)) + "/" +
                                    std::to_string(k - 1) + " is not an integer");
    }
  } else {
    for (std::size_t p = 0; p < v; ++p) {
      if (d.blocks_at(p).size() != *r) {
        report.add("replication", "point " + std::to_string(p + 1) + " lies in " +
                                      std::to_string(d.blocks_at(p).size()) + " blocks, expected r=" +
                                      std::to_string(*r));
      }
    }
    if (d.b() * k != v * *r) {
      report.add("block-count", "bk = " + std::to_string(d.b() * k) + " but vr = " +
                                    std::to_string(v * *r));
    }
  }
  return report;
}

InvalidDesignError::InvalidDesignError(ValidationReport report)
    : Error(ErrorCode::InvalidDesign, describe(report)), report_(std::move(report)) {}

Design fano() {
  return Design(7, 3, 1,
                {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}, {0, 3, 6}, {1, 4, 6}, {2, 5, 6}, {1, 3, 5}});
}

Design sts_bose(std::size_t v) {
  if (v % 6 != 3) {
    throw Error(ErrorCode::UnsupportedOrder,
                "Bose construction needs v = 3 (mod 6), got v=" + std::to_string(v));
  }
  const std::size_t n = v / 3;  // |Z_{2t+1}|
  const std::size_t half = (n + 1) / 2;  // inverse of 2 mod n
  auto point = [n](std::size_t x, std::size_t layer) { return layer * n + x; };
  auto op = [n, half](std::size_t x, std::size_t y) { return ((x + y) * half) % n; };

  std::vector<Design::Block> blocks;
  for (std::size_t x = 0; x < n; ++x) blocks.push_back({point(x, 0), point(x, 1), point(x, 2)});
  for (std::size_t layer = 0; layer < 3; ++layer) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        blocks.push_back({point(x, layer), point(y, layer), point(op(x, y), (layer + 1) % 3)});
      }
    }
  }
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return Design(v, 3, 1, std::move(blocks));
}

std::string design_to_json(const Design& d) {
  json blocks = json::array();
  for (const auto& b : d.blocks()) {
    json row = json::array();
    for (auto p : b) row.push_back(p + 1);
    blocks.push_back(std::move(row));
  }
  json doc = {{"schema", kDesignSchema},
              {"v", d.v()},
              {"k", d.k()},
              {"lambda", d.lambda()},
              {"blocks", std::move(blocks)}};
  return doc.dump(2) + "\n";
}

Design design_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("design JSON: ") + e.what());
  }
  auto field = [&](const char* name) -> std::size_t {
    if (!doc.is_object() || !doc.contains(name) || !doc[name].is_number_unsigned()) {
      throw Error(ErrorCode::ParseError,
                  std::string("design JSON: field '") + name + "' must be a non-negative integer");
    }
    return doc[name].get<std::size_t>();
  };
  if (doc.is_object() && doc.contains("schema") && doc["schema"] != kDesignSchema) {
    throw Error(ErrorCode::ParseError, "design JSON: unsupported schema " + doc["schema"].dump());
  }
  const auto v = field("v"), k = field("k"), lambda = field("lambda");
  if (!doc.contains("blocks") || !doc["blocks"].is_array()) {
    throw Error(ErrorCode::ParseError, "design JSON: 'blocks' must be an array");
  }
  std::vector<Design::Block> blocks;
  for (const auto& jb : doc["blocks"]) {
    if (!jb.is_array()) throw Error(ErrorCode::ParseError, "design JSON: each block must be an array");
    Design::Block block;
    for (const auto& jp : jb) {
      if (!jp.is_number_unsigned() || jp.get<std::size_t>() < 1 || jp.get<std::size_t>() > v) {
        throw Error(ErrorCode::ParseError,
                    "design JSON: block entry " + jp.dump() + " is not a point in 1.." + std::to_string(v));
      }
      block.push_back(jp.get<std::size_t>() - 1);
    }
    blocks.push_back(std::move(block));
  }
  if (v == 0) throw Error(ErrorCode::ParseError, "design JSON: v must be positive");
  Design d(v, k, lambda, std::move(blocks));
  auto report = verify_design(d);
  if (!report.ok()) throw InvalidDesignError(std::move(report));
  return d;
}

Design load_design(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return design_from_json(buf.str());
}

void save_design(const Design& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << design_to_json(d);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

IncidenceMatrix incidence_matrix(const Design& d) {
  IncidenceMatrix a(d.v(), d.b());
  for (std::size_t j = 0; j < d.b(); ++j) {
    for (auto p : d.block(j)) a(p, j) = 1;
  }
  return a;
}

ColoredIncidence color_incidence(const IncidenceMatrix& a) {
  ColoredIncidence ac(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    int color = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a(i, j) != 0) ac(i, j) = ++color;
    }
  }
  return ac;
}

std::size_t block_index_gamma(const IncidenceMatrix& a, std::size_t alpha, std::size_t beta) {
  if (alpha >= a.rows()) throw Error(ErrorCode::OutOfRange, "point index out of range");
  std::size_t seen = 0;
  for (std::size_t t = 0; t < a.cols(); ++t) {
    if (a(alpha, t) != 0 && seen++ == beta) return t;
  }
  throw Error(ErrorCode::OutOfRange, "point " + std::to_string(alpha + 1) + " lies in only " +
                                         std::to_string(seen) + " blocks, rank " +
                                         std::to_string(beta + 1) + " requested");
}

}  // namespace sumnet
