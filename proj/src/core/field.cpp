#include "sumnet/field.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "sumnet/error.hpp"

namespace sumnet {

namespace {

void require_same_field(const PrimeField& a, const PrimeField& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::FieldMismatch, "operands live in GF(" + std::to_string(a.modulus()) +
                                              ") and GF(" + std::to_string(b.modulus()) + ")");
  }
}

std::string dims(const FieldMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p > kMaxModulus || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a supported prime modulus");
  }
}

std::uint32_t PrimeField::reduce(std::int64_t x) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  auto r = x % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::add(std::uint32_t a, std::uint32_t b) const noexcept {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
}

std::uint32_t PrimeField::sub(std::uint32_t a, std::uint32_t b) const noexcept {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p_ - b);
}

std::uint32_t PrimeField::mul(std::uint32_t a, std::uint32_t b) const noexcept {
  return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
}

std::uint32_t PrimeField::neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw Error(ErrorCode::InvalidArgument, "zero has no multiplicative inverse");
  // Extended Euclid on (a, p).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a % p_;
  while (new_r != 0) {
    const auto q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t);
}

FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.add(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.sub(a.value_, b.value_)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.mul(a.value_, b.value_)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return a * b.inverse();
}

FieldElement operator-(const FieldElement& a) { return {a.field_, a.field_.neg(a.value_)}; }

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FieldMatrix FieldMatrix::from_rows(PrimeField field,
                                   std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(field, copy);
}

FieldMatrix FieldMatrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  FieldMatrix m(field, rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) {
      throw Error(ErrorCode::DimensionMismatch, "ragged rows in matrix literal");
    }
    for (std::size_t c = 0; c < ncols; ++c) m.data_[r * ncols + c] = field.reduce(rows[r][c]);
  }
  return m;
}

FieldElement FieldMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::OutOfRange, "matrix index out of range");
  return {field_, data_[r * cols_ + c]};
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::OutOfRange, "matrix index out of range");
  data_[r * cols_ + c] = field_.reduce(value);
}

std::span<const std::uint32_t> FieldMatrix::row(std::size_t r) const {
  return {data_.data() + r * cols_, cols_};
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t x) { return x == 0; });
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

FieldMatrix FieldMatrix::scaled(std::int64_t factor) const {
  const auto f = field_.reduce(factor);
  FieldMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.mul(data_[i], f);
  return out;
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows,
                               std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "block exceeds " + dims(*this));
  }
  FieldMatrix out(field_, nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), ncols,
                out.data_.begin() + static_cast<std::ptrdiff_t>(r * ncols));
  }
  return out;
}

void FieldMatrix::set_block(std::size_t r0, std::size_t c0, const FieldMatrix& m) {
  require_same_field(field_, m.field_);
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) {
    throw Error(ErrorCode::DimensionMismatch, dims(m) + " block does not fit in " + dims(*this));
  }
  for (std::size_t r = 0; r < m.rows_; ++r) {
    std::copy_n(m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_), m.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
  }
}

void FieldMatrix::add_block(std::size_t r0, std::size_t c0, const FieldMatrix& m,
                            std::int64_t factor) {
  require_same_field(field_, m.field_);
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) {
    throw Error(ErrorCode::DimensionMismatch, dims(m) + " block does not fit in " + dims(*this));
  }
  const auto f = field_.reduce(factor);
  for (std::size_t r = 0; r < m.rows_; ++r) {
    for (std::size_t c = 0; c < m.cols_; ++c) {
      auto& dst = data_[(r0 + r) * cols_ + c0 + c];
      dst = field_.add(dst, field_.mul(f, m.data_[r * m.cols_ + c]));
    }
  }
}

FieldMatrix FieldMatrix::vstack(std::span<const FieldMatrix> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "vstack of no matrices");
  std::size_t total = 0;
  for (const auto& p : parts) {
    require_same_field(parts.front().field_, p.field_);
    if (p.cols_ != parts.front().cols_) {
      throw Error(ErrorCode::DimensionMismatch, "vstack of " + dims(parts.front()) + " and " + dims(p));
    }
    total += p.rows_;
  }
  FieldMatrix out(parts.front().field_, total, parts.front().cols_);
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.set_block(r, 0, p);
    r += p.rows_;
  }
  return out;
}

FieldMatrix FieldMatrix::hstack(std::span<const FieldMatrix> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "hstack of no matrices");
  std::size_t total = 0;
  for (const auto& p : parts) {
    require_same_field(parts.front().field_, p.field_);
    if (p.rows_ != parts.front().rows_) {
      throw Error(ErrorCode::DimensionMismatch, "hstack of " + dims(parts.front()) + " and " + dims(p));
    }
    total += p.cols_;
  }
  FieldMatrix out(parts.front().field_, parts.front().rows_, total);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(0, c, p);
    c += p.cols_;
  }
  return out;
}

std::vector<std::uint32_t> FieldMatrix::apply(std::span<const std::uint32_t> x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch,
                dims(*this) + " applied to vector of length " + std::to_string(x.size()));
  }
  std::vector<std::uint32_t> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto a = data_[r * cols_ + c];
      if (a != 0) acc = (acc + std::uint64_t{a} * x[c]) % field_.modulus();
    }
    y[r] = static_cast<std::uint32_t>(acc);
  }
  return y;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "sum of " + dims(a) + " and " + dims(b));
  }
  FieldMatrix out(a.field_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return out;
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "difference of " + dims(a) + " and " + dims(b));
  }
  FieldMatrix out(a.field_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return out;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "product of " + dims(a) + " and " + dims(b));
  }
  const std::uint64_t p = a.field_.modulus();
  FieldMatrix out(a.field_, a.rows_, b.cols_);
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t aik = a.data_[i * a.cols_ + k];
      if (aik == 0) continue;
      const auto* brow = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (brow[j] != 0) acc[j] = (acc[j] + aik * brow[j]) % p;
      }
    }
    for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * b.cols_ + j] = static_cast<std::uint32_t>(acc[j]);
  }
  return out;
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) { return a * b; }

std::size_t mat_rank(const FieldMatrix& a) {
  const auto& f = a.field();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::uint32_t> m(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = a.row(r);
    std::copy(src.begin(), src.end(), m.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       m.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                       m.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    }
    const auto inv = f.inv(m[rank * cols + c]);
    for (std::size_t j = c; j < cols; ++j) m[rank * cols + j] = f.mul(m[rank * cols + j], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const auto factor = m[r * cols + c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const auto pv = m[rank * cols + j];
        if (pv != 0) m[r * cols + j] = f.sub(m[r * cols + j], f.mul(factor, pv));
      }
    }
    ++rank;
  }
  return rank;
}

bool row_space_contains(const FieldMatrix& basis, const FieldMatrix& target) {
  require_same_field(basis.field(), target.field());
  if (basis.cols() != target.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "basis " + dims(basis) + " vs target " + dims(target));
  }
  if (target.rows() == 0) return true;
  if (basis.rows() == 0) return target.is_zero();
  const FieldMatrix parts[] = {basis, target};
  return mat_rank(basis) == mat_rank(FieldMatrix::vstack(parts));
}

}  // namespace sumnet
