#include <gtest/gtest.h>

#include <random>
#include <set>

#include "../support/oracles.hpp"
#include "sumnet/error.hpp"
#include "sumnet/field.hpp"

using sumnet::ErrorCode;
using sumnet::FieldElement;
using sumnet::FieldMatrix;
using sumnet::PrimeField;

namespace {

const std::vector<std::uint32_t> kPrimes = {2, 3, 5, 7, 11, 13};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const sumnet::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected sumnet::Error";
  return ErrorCode::InvalidArgument;
}

/// Size of the row space by enumerating every combination.
std::size_t row_space_size(const FieldMatrix& m) {
  const auto p = m.field().modulus();
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) combos *= p;
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::vector<std::uint32_t> acc(m.cols(), 0);
    auto rest = c;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto coeff = rest % p;
      rest /= p;
      for (std::size_t col = 0; col < m.cols(); ++col) acc[col] = (acc[col] + coeff * m(i, col)) % p;
    }
    seen.insert(acc);
  }
  return seen.size();
}

}  // namespace

TEST(PrimeField, RejectsNonPrimes) {
  for (std::uint32_t n : {0u, 1u, 4u, 9u, 15u, 91u}) {
    EXPECT_EQ(code_of([&] { PrimeField f(n); }), ErrorCode::NotPrime) << n;
  }
  EXPECT_NO_THROW(PrimeField(PrimeField::kMaxModulus));
}

TEST(PrimeField, IsPrimeMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 2000; ++n) {
    bool expect = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) expect = false;
    }
    EXPECT_EQ(sumnet::is_prime(n), expect) << n;
  }
}

TEST(PrimeField, AxiomsHoldExhaustively) {
  for (auto p : kPrimes) {
    const PrimeField f(p);
    for (std::uint32_t a = 0; a < p; ++a) {
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      EXPECT_EQ(f.sub(a, a), 0u);
      if (a != 0) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      for (std::uint32_t b = 0; b < p; ++b) {
        EXPECT_EQ(f.add(a, b), (a + b) % p);
        EXPECT_EQ(f.mul(a, b), (a * b) % p);
        EXPECT_EQ(f.sub(f.add(a, b), b), a);
        for (std::uint32_t c = 0; c < p; ++c) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(PrimeField, InverseOfZeroThrows) {
  const PrimeField f(7);
  EXPECT_EQ(code_of([&] { (void)f.inv(0); }), ErrorCode::InvalidArgument);
}

TEST(PrimeField, LargeModulusDoesNotOverflow) {
  const PrimeField f(PrimeField::kMaxModulus);
  const std::uint32_t a = PrimeField::kMaxModulus - 1;
  EXPECT_EQ(f.mul(a, a), 1u);
  EXPECT_EQ(f.add(a, a), PrimeField::kMaxModulus - 2);
  EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.reduce(-1), a);
}

TEST(FieldElement, ArithmeticAndMixedFields) {
  const PrimeField f3(3), f5(5);
  const FieldElement a(f3, 2), b(f3, 2);
  EXPECT_EQ((a + b).value(), 1u);
  EXPECT_EQ((a * b).value(), 1u);
  EXPECT_EQ((a / b).value(), 1u);
  EXPECT_EQ((-a).value(), 1u);
  EXPECT_EQ(FieldElement(f3, -4).value(), 2u);
  EXPECT_EQ(code_of([&] { (void)(a + FieldElement(f5, 1)); }), ErrorCode::FieldMismatch);
  EXPECT_EQ(code_of([&] { (void)FieldElement(f3, 0).inverse(); }), ErrorCode::InvalidArgument);
}

TEST(FieldMatrix, ShapeErrors) {
  const PrimeField f(5);
  const FieldMatrix a(f, 2, 3), b(f, 2, 3);
  EXPECT_EQ(code_of([&] { (void)(a * b); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { (void)(a + FieldMatrix(f, 3, 3)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { (void)(a + FieldMatrix(PrimeField(3), 2, 3)); }), ErrorCode::FieldMismatch);
  EXPECT_EQ(code_of([&] { (void)FieldMatrix::from_rows(f, {{1, 2}, {3}}); }), ErrorCode::DimensionMismatch);
}

TEST(FieldMatrix, ProductMatchesDefinitionAndIsAssociative) {
  std::mt19937_64 rng(7);
  for (auto p : kPrimes) {
    const PrimeField f(p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = oracle::random_matrix(f, 3, 4, rng);
      const auto b = oracle::random_matrix(f, 4, 2, rng);
      const auto c = oracle::random_matrix(f, 2, 5, rng);
      const auto ab = a * b;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          std::uint64_t acc = 0;
          for (std::size_t k = 0; k < 4; ++k) acc += std::uint64_t{a(i, k)} * b(k, j);
          EXPECT_EQ(ab(i, j), acc % p);
        }
      }
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
      EXPECT_EQ(FieldMatrix::identity(f, 3) * a, a);
    }
  }
}

TEST(FieldMatrix, BlocksAndStacking) {
  const PrimeField f(7);
  const auto a = FieldMatrix::from_rows(f, {{1, 2}, {3, 4}});
  const auto b = FieldMatrix::from_rows(f, {{5, 6}});
  const std::vector<FieldMatrix> parts{a, b};
  const auto v = FieldMatrix::vstack(parts);
  EXPECT_EQ(v, FieldMatrix::from_rows(f, {{1, 2}, {3, 4}, {5, 6}}));
  const std::vector<FieldMatrix> side{a, a};
  const auto h = FieldMatrix::hstack(side);
  EXPECT_EQ(h.block(0, 2, 2, 2), a);
  auto z = FieldMatrix(f, 3, 3);
  z.add_block(1, 1, a, -1);
  EXPECT_EQ(z(1, 1), 6u);
  EXPECT_EQ(z(2, 2), 3u);
  const std::vector<std::uint32_t> x{1, 1};
  EXPECT_EQ(a.apply(x), (std::vector<std::uint32_t>{3, 0}));
}

TEST(FieldMatrix, RankMatchesRowSpaceEnumeration) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + trial % 4;
      auto m = oracle::random_matrix(f, rows, 4, rng);
      if (trial % 3 == 0 && rows > 1) {
        // force a dependent row
        for (std::size_t c = 0; c < 4; ++c) m.set(rows - 1, c, f.add(m(0, c), m(0, c)));
      }
      const auto size = row_space_size(m);
      std::size_t expect = 0;
      for (std::size_t s = 1; s < size; s *= p) ++expect;
      EXPECT_EQ(sumnet::mat_rank(m), expect);
    }
  }
}

TEST(FieldMatrix, RowSpaceContainsMatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t rows = 1 + trial % 3;
      const auto basis = oracle::random_matrix(f, rows, 4, rng);
      FieldMatrix target = oracle::random_matrix(f, 1 + trial % 2, 4, rng);
      if (trial % 2 == 0) {
        // half the targets are built inside the span
        target = oracle::random_matrix(f, target.rows(), rows, rng) * basis;
      }
      EXPECT_EQ(sumnet::row_space_contains(basis, target), oracle::exhaustive_row_space(basis, target));
    }
  }
}

TEST(FieldMatrix, EmptyBasisContainsOnlyZero) {
  const PrimeField f(3);
  const FieldMatrix empty(f, 0, 3);
  EXPECT_TRUE(sumnet::row_space_contains(empty, FieldMatrix(f, 1, 3)));
  EXPECT_FALSE(sumnet::row_space_contains(empty, FieldMatrix::from_rows(f, {{0, 1, 0}})));
}
