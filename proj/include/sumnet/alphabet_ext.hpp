#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

// Alphabet-change experiment on the two-source, one-terminal sum-network:
// a scalar GF(3) code (edges forward X1 and X2, the terminal adds them) is
// lifted to binary messages by embedding GF(2)^{k'} into GF(3)^t
// componentwise, running the GF(3) code, and mapping back with a left
// inverse hat_h0 of the embedding. hat_h0(2) is unconstrained; both choices
// are examined.

namespace sumnet {

using BitVector = std::vector<std::uint8_t>;

struct ExtensionParams {
  int gamma;
  std::size_t t;       // 2^gamma, length of the GF(3) block
  std::size_t nprime;  // ceil(2^gamma / log2 3)
  std::size_t kprime;  // nprime - 1, length of the binary messages
};

/// Throws Error(InvalidGamma) unless 2 <= gamma <= kMaxGamma.
ExtensionParams extension_params(int gamma);
inline constexpr int kMaxGamma = 20;

/// Left inverse of h0 (0 -> 0, 1 -> 1) with the given image for 2.
std::uint8_t hat_h0(std::uint8_t a, std::uint8_t image_of_two);

/// h0 componentwise, zero-padded to length t.
std::vector<std::uint8_t> embed(const BitVector& x, std::size_t t);

/// Edge transport of a GF(3)^t word over the binary alphabet: each ternary
/// digit becomes two bits. `unpack_ternary` is its left inverse (the unused
/// pattern 11 maps to 0).
BitVector pack_ternary(const std::vector<std::uint8_t>& word);
std::vector<std::uint8_t> unpack_ternary(const BitVector& bits);

/// Output of the lifted sum code at the terminal.
BitVector extended_sum(const ExtensionParams& params, const BitVector& x1, const BitVector& x2,
                       std::uint8_t image_of_two);

/// Same lifting applied when the terminal demands X1 itself (unicast).
BitVector extended_unicast(const ExtensionParams& params, const BitVector& x1, const BitVector& x2,
                           std::uint8_t image_of_two);

struct CompletionOutcome {
  std::uint8_t image_of_two;
  BitVector decoded;
  bool correct;
};

struct CounterexampleReport {
  ExtensionParams params;
  BitVector x1;
  BitVector x2;
  BitVector true_sum;
  std::vector<CompletionOutcome> outcomes;  // hat_h0(2) = 0, then 1
};

/// Evaluates both completions on (x1, x2); defaults to the all-ones pair.
CounterexampleReport run_counterexample(int gamma);
CounterexampleReport run_counterexample(int gamma, const BitVector& x1, const BitVector& x2);

struct FailureSearch {
  std::uint8_t image_of_two;
  std::uint64_t pairs_checked;
  std::optional<CompletionOutcome> witness_outcome;
  BitVector witness_x1;
  BitVector witness_x2;
};

struct FailureSearchReport {
  ExtensionParams params;
  std::vector<FailureSearch> searches;  // hat_h0(2) = 0, then 1
  std::uint64_t unicast_pairs_checked;
  bool unicast_all_correct;
};

inline constexpr std::size_t kMaxExhaustiveKprime = 10;

/// Enumerates all 4^{k'} message pairs for each completion, stopping at the
/// first failure, and runs the unicast control over every pair. Throws
/// Error(TooLarge) when k' > kMaxExhaustiveKprime.
FailureSearchReport exhaustive_failure_search(int gamma);

}  // namespace sumnet
