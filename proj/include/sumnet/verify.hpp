#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumnet/coding.hpp"
#include "sumnet/design.hpp"
#include "sumnet/field.hpp"
#include "sumnet/network.hpp"

namespace sumnet {

/// Exact fraction with den > 0 and gcd(num, den) = 1. Arithmetic throws
/// Error(Overflow) instead of wrapping.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  /// "num/den", always with the denominator.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

struct VerifyResult {
  struct Failure {
    std::string subject;  // terminal or bottleneck label
    std::string detail;
  };
  std::vector<Failure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Checks that the code's phi/psi shapes line up with the network. Throws
/// Error(ShapeMismatch) otherwise.
void check_code_shape(const SumNetwork& n, const NetworkCode& code);

/// Composes every terminal's decoder with the global maps of its in-edges and
/// compares the result against the all-sources sum map [I_m ... I_m].
VerifyResult transfer_check(const SumNetwork& n, const NetworkCode& code);

/// Local encoding at mt_i: the column blocks of phi_i for the sources feeding
/// mt_i, in in-edge order.
FieldMatrix local_encoding(const SumNetwork& n, const NetworkCode& code, std::size_t point);

using SymbolVector = std::vector<std::uint32_t>;

/// Pushes concrete source vectors (indexed by source ordinal, m symbols each)
/// through the graph in topological order. Returns one decoded vector per
/// terminal ordinal.
std::vector<SymbolVector> simulate(const SumNetwork& n, const NetworkCode& code,
                                   const std::vector<SymbolVector>& sources);

struct TrialSummary {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t passed = 0;
  /// One entry per failing trial, capped at kMaxWitnesses.
  std::vector<VerifyResult::Failure> witnesses;

  static constexpr std::size_t kMaxWitnesses = 16;
  bool ok() const noexcept { return passed == trials; }
};

/// Random source assignments from a seeded mt19937_64; each trial passes when
/// every terminal outputs the plain sum of the sources.
TrialSummary run_trials(const SumNetwork& n, const NetworkCode& code, std::uint64_t trials,
                        std::uint64_t seed);

/// X'_i lies in the row space of phi_i for every bottleneck.
VerifyResult lemma1_check(const SumNetwork& n, const NetworkCode& code);

/// For every block B_j, sum_{p in B_j} X_p + sum_{B in <B_j>} X_B lies in the
/// row space of the stacked phi_i, p_i in B_j.
VerifyResult lemma2_check(const SumNetwork& n, const NetworkCode& code);

/// Lemma-2 target for block j checked against the bottlenecks in `points` only.
bool partial_sum_recoverable(const SumNetwork& n, const NetworkCode& code, std::size_t block,
                             const std::vector<std::size_t>& points);

struct CapacityReport {
  Regime regime;
  Rational achieved;
  Rational upper;
  CodeParams params;
  bool matches() const noexcept { return achieved == upper; }
};

/// Achieved rate of the matching code family next to the closed-form upper
/// bound (1 when p | k-1, otherwise k(k-1)/(k(k-1)+v-1)).
CapacityReport capacity_report(const Design& d, const PrimeField& f);

/// v/(v+b); throws if it disagrees with k(k-1)/(k(k-1)+v-1).
Rational cutset_bound(const Design& d);

}  // namespace sumnet
