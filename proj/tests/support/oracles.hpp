#pragma once

// Test-side reference implementations. None of these call into the library's
// algorithms; they recompute answers by brute force from first principles.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "sumnet/coding.hpp"
#include "sumnet/design.hpp"
#include "sumnet/field.hpp"
#include "sumnet/network.hpp"

namespace oracle {

using Blocks = std::vector<std::vector<std::size_t>>;

/// Counts every pair directly. Valid iff blocks have k distinct in-range
/// points, every pair is covered exactly lambda times and no block repeats
/// a point.
inline bool pair_count_valid(std::size_t v, std::size_t k, std::size_t lambda, const Blocks& blocks) {
  if (v < 2 || k < 2 || k > v || lambda == 0 || blocks.empty()) return false;
  std::vector<std::vector<std::size_t>> count(v, std::vector<std::size_t>(v, 0));
  for (const auto& blk : blocks) {
    if (blk.size() != k) return false;
    if (std::set<std::size_t>(blk.begin(), blk.end()).size() != k) return false;
    for (auto p : blk) {
      if (p >= v) return false;
    }
    for (std::size_t a = 0; a < blk.size(); ++a) {
      for (std::size_t b = a + 1; b < blk.size(); ++b) {
        ++count[blk[a]][blk[b]];
        ++count[blk[b]][blk[a]];
      }
    }
  }
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = a + 1; b < v; ++b) {
      if (count[a][b] != lambda) return false;
    }
  }
  return true;
}

/// Develops base blocks modulo v.
inline Blocks cyclic_design(std::size_t v, const Blocks& base) {
  Blocks out;
  for (const auto& blk : base) {
    for (std::size_t s = 0; s < v; ++s) {
      std::vector<std::size_t> shifted;
      for (auto p : blk) shifted.push_back((p + s) % v);
      std::sort(shifted.begin(), shifted.end());
      out.push_back(shifted);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline sumnet::Design sts13() { return {13, 3, 1, cyclic_design(13, {{0, 1, 4}, {0, 2, 7}})}; }

/// Projective plane of order 3 from the difference set {0,1,3,9} mod 13.
inline sumnet::Design pg23() { return {13, 4, 1, cyclic_design(13, {{0, 1, 3, 9}})}; }

/// Fano blocks A..G as printed (1-based).
inline const Blocks& fano_blocks_one_based() {
  static const Blocks blocks = {{1, 2, 3}, {3, 4, 5}, {1, 5, 6}, {1, 4, 7}, {2, 5, 7}, {3, 6, 7}, {2, 4, 6}};
  return blocks;
}

/// True iff every row of target is a GF(p)-combination of the basis rows,
/// found by trying all p^rows coefficient vectors.
inline bool exhaustive_row_space(const sumnet::FieldMatrix& basis, const sumnet::FieldMatrix& target) {
  const auto p = basis.field().modulus();
  const auto rows = basis.rows();
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < rows; ++i) combos *= p;
  for (std::size_t t = 0; t < target.rows(); ++t) {
    bool found = false;
    for (std::uint64_t c = 0; c < combos && !found; ++c) {
      std::vector<std::uint64_t> coeff(rows);
      auto rest = c;
      for (std::size_t i = 0; i < rows; ++i) {
        coeff[i] = rest % p;
        rest /= p;
      }
      bool equal = true;
      for (std::size_t col = 0; col < target.cols() && equal; ++col) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < rows; ++i) acc = (acc + coeff[i] * basis(i, col)) % p;
        equal = acc == target(t, col);
      }
      found = equal;
    }
    if (!found) return false;
  }
  return true;
}

inline sumnet::FieldMatrix random_matrix(const sumnet::PrimeField& f, std::size_t rows, std::size_t cols,
                                         std::mt19937_64& rng) {
  sumnet::FieldMatrix m(f, rows, cols);
  std::uniform_int_distribution<std::uint32_t> dist(0, f.modulus() - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dist(rng));
  }
  return m;
}

/// Replaces every block-terminal decoder with the plain sum of its inputs'
/// partial sums, i.e. the decoder without the -(k-1) X_B correction: head
/// inputs contribute [I_{v'} 0], direct inputs I_m.
inline sumnet::NetworkCode strip_block_correction(sumnet::NetworkCode code) {
  const auto m = code.params.m;
  const auto& f = code.field;
  for (auto& dec : code.psi) {
    if (dec.terminal.kind != sumnet::NodeKind::TerminalBlock) continue;
    std::size_t col = 0;
    sumnet::FieldMatrix map(f, m, dec.map.cols());
    for (const auto& in : dec.inputs) {
      map.set_block(0, col, sumnet::FieldMatrix::identity(f, m));
      col += in.kind == sumnet::NodeKind::BottleneckHead ? code.params.n : m;
    }
    dec.map = map;
  }
  return code;
}

/// Zeroes rows [r0, r0 + count) of phi_i.
inline sumnet::NetworkCode zero_phi_rows(sumnet::NetworkCode code, std::size_t i, std::size_t r0, std::size_t count) {
  auto& phi = code.phi.at(i);
  phi.set_block(r0, 0, sumnet::FieldMatrix(phi.field(), count, phi.cols()));
  return code;
}

/// BFS over the edge list without using the network's adjacency.
inline bool reaches(const sumnet::SumNetwork& n, const sumnet::NodeId& from, const sumnet::NodeId& to) {
  std::set<sumnet::NodeId> seen{from};
  std::vector<sumnet::NodeId> frontier{from};
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    if (cur == to) return true;
    for (const auto& e : n.edges()) {
      if (e.tail == cur && seen.insert(e.head).second) frontier.push_back(e.head);
    }
  }
  return false;
}

struct Slice {
  char block;  // 'A'..'G'
  std::size_t first;  // 1-based first symbol
};
using Slices = std::vector<Slice>;

/// phi_i for the Fano plane over an odd field, assembled directly from the
/// printed layout: X'_i on top, then three 2-symbol slices of block sources.
inline sumnet::FieldMatrix fano_phi(std::size_t point, const Slices& slices, const sumnet::PrimeField& f) {
  const std::size_t m = 6, sources = 14;
  sumnet::FieldMatrix phi(f, 12, sources * m);
  const auto eye = sumnet::FieldMatrix::identity(f, m);
  phi.set_block(0, point * m, eye);
  const auto& blocks = fano_blocks_one_based();
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    for (auto p : blocks[j]) {
      if (p == point + 1) phi.set_block(0, (7 + j) * m, eye);
    }
  }
  std::size_t row = m;
  for (const auto& s : slices) {
    const std::size_t j = static_cast<std::size_t>(s.block - 'A');
    for (std::size_t t = 0; t < 2; ++t) phi.set(row + t, (7 + j) * m + s.first - 1 + t, 1);
    row += 2;
  }
  return phi;
}

inline const std::vector<Slices>& fano_printed_layout() {
  static const std::vector<Slices> layout = {
      {{'A', 1}, {'C', 1}, {'D', 1}}, {{'A', 3}, {'E', 1}, {'G', 1}}, {{'A', 5}, {'B', 1}, {'F', 1}},
      {{'B', 3}, {'D', 3}, {'G', 3}}, {{'B', 5}, {'C', 3}, {'E', 3}}, {{'C', 5}, {'F', 3}, {'G', 5}},
  };
  return layout;
}

}  // namespace oracle
