#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumnet/error.hpp"
#include "sumnet/report.hpp"

namespace sumnet {

/// A 2-(v,k,lambda) block design. Points and blocks are 0-indexed in the C++
/// API; every serialized form is 1-indexed.
///
/// Construction only checks that block entries name existing points. Whether
/// the blocks actually form a BIBD is answered by verify_design().
class Design {
 public:
  using Block = std::vector<std::size_t>;

  Design(std::size_t v, std::size_t k, std::size_t lambda, std::vector<Block> blocks);

  std::size_t v() const noexcept { return v_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t lambda() const noexcept { return lambda_; }
  std::size_t b() const noexcept { return blocks_.size(); }

  /// r = lambda (v-1) / (k-1) when that is an integer.
  std::optional<std::size_t> replication() const noexcept;

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& block(std::size_t j) const { return blocks_.at(j); }
  bool contains(std::size_t block, std::size_t point) const;

  /// <p>: indices of the blocks containing `point`, increasing.
  const std::vector<std::size_t>& blocks_at(std::size_t point) const { return point_blocks_.at(point); }

  /// <B>: union of <p> over the points of block j, increasing. Includes j.
  std::vector<std::size_t> neighborhood(std::size_t block) const;

  friend bool operator==(const Design& a, const Design& b) {
    return a.v_ == b.v_ && a.k_ == b.k_ && a.lambda_ == b.lambda_ && a.blocks_ == b.blocks_;
  }

 private:
  std::size_t v_;
  std::size_t k_;
  std::size_t lambda_;
  std::vector<Block> blocks_;
  std::vector<std::vector<std::size_t>> point_blocks_;
};

/// Checks block sizes, pair coverage, replication number and bk = vr.
ValidationReport verify_design(const Design& d);

/// Raised when a loaded design fails verify_design().
class InvalidDesignError : public Error {
 public:
  explicit InvalidDesignError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// The seven-point plane with blocks A..G = {1,2,3},{3,4,5},{1,5,6},{1,4,7},
/// {2,5,7},{3,6,7},{2,4,6}, in that order.
Design fano();

/// Steiner triple system of order v = 6t+3 via the Bose construction over
/// Z_{2t+1} x {0,1,2}. Blocks are sorted lexicographically.
/// Throws Error(UnsupportedOrder) when v is not 3 mod 6.
Design sts_bose(std::size_t v);

std::string design_to_json(const Design& d);
/// Throws ParseError on malformed input and InvalidDesign (message embeds
/// the report) when the blocks do not form a BIBD.
Design design_from_json(std::string_view text);
Design load_design(const std::filesystem::path& path);
void save_design(const Design& d, const std::filesystem::path& path);

namespace detail {

template <typename Tag>
class IntGrid {
 public:
  IntGrid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  int row_sum(std::size_t r) const {
    int s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
    return s;
  }
  int col_sum(std::size_t c) const {
    int s = 0;
    for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
  }

  friend bool operator==(const IntGrid&, const IntGrid&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<int> data_;
};

struct IncidenceTag {};
struct ColoredTag {};

}  // namespace detail

/// v x b 0/1 matrix with a(i,j) = 1 iff point i lies in block j.
using IncidenceMatrix = detail::IntGrid<detail::IncidenceTag>;
/// Incidence matrix whose ones are renumbered 1..k down each column.
using ColoredIncidence = detail::IntGrid<detail::ColoredTag>;

IncidenceMatrix incidence_matrix(const Design& d);
ColoredIncidence color_incidence(const IncidenceMatrix& a);

/// Index of the beta-th block (0-based rank, increasing block order) that
/// contains point alpha. Throws Error(OutOfRange) when beta >= row sum.
std::size_t block_index_gamma(const IncidenceMatrix& a, std::size_t alpha, std::size_t beta);

}  // namespace sumnet
