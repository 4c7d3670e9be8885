#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace sumnet {

/// The prime field GF(p). Residues are canonical values in [0, p).
class PrimeField {
 public:
  static constexpr std::uint32_t kMaxModulus = (1u << 31) - 1;

  /// Throws Error(NotPrime) unless 2 <= p <= kMaxModulus and p is prime.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  std::uint32_t reduce(std::int64_t x) const noexcept;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t neg(std::uint32_t a) const noexcept;
  /// Throws Error(InvalidArgument) for a == 0.
  std::uint32_t inv(std::uint32_t a) const;

  /// True iff p divides n.
  bool divides(std::int64_t n) const noexcept { return n % static_cast<std::int64_t>(p_) == 0; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A single symbol of the alphabet, tagged with its field.
class FieldElement {
 public:
  FieldElement(PrimeField field, std::int64_t value) : field_(field), value_(field.reduce(value)) {}

  std::uint32_t value() const noexcept { return value_; }
  const PrimeField& field() const noexcept { return field_; }

  FieldElement inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  PrimeField field_;
  std::uint32_t value_;
};

/// Dense row-major matrix over a prime field.
class FieldMatrix {
 public:
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  static FieldMatrix identity(PrimeField field, std::size_t n);
  /// Entries are reduced mod p; every row must have the same length.
  static FieldMatrix from_rows(PrimeField field,
                               std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static FieldMatrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  FieldElement at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::int64_t value);
  std::span<const std::uint32_t> row(std::size_t r) const;

  bool is_zero() const noexcept;

  FieldMatrix transpose() const;
  FieldMatrix scaled(std::int64_t factor) const;
  /// Copy of the sub-matrix starting at (r0, c0).
  FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  /// Overwrite the region starting at (r0, c0) with m.
  void set_block(std::size_t r0, std::size_t c0, const FieldMatrix& m);
  /// this(r0.., c0..) += factor * m
  void add_block(std::size_t r0, std::size_t c0, const FieldMatrix& m, std::int64_t factor = 1);

  static FieldMatrix vstack(std::span<const FieldMatrix> parts);
  static FieldMatrix hstack(std::span<const FieldMatrix> parts);

  /// Matrix-vector product; x.size() must equal cols().
  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> x) const;

  friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);

/// Rank over GF(p) by exact Gaussian elimination.
std::size_t mat_rank(const FieldMatrix& a);

/// True iff every row of `target` lies in the row space of `basis`.
bool row_space_contains(const FieldMatrix& basis, const FieldMatrix& target);

}  // namespace sumnet
