#include "sumnet/alphabet_ext.hpp"

#include <cmath>
#include <string>

#include "sumnet/error.hpp"

namespace sumnet {

namespace {

BitVector bits_of(std::uint64_t mask, std::size_t len) {
  BitVector out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
  return out;
}

BitVector xor_sum(const BitVector& a, const BitVector& b) {
  BitVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

void require_length(const ExtensionParams& params, const BitVector& x) {
  if (x.size() != params.kprime) {
    throw Error(ErrorCode::InvalidArgument, "message has " + std::to_string(x.size()) +
                                                " symbols, expected k' = " + std::to_string(params.kprime));
  }
  for (auto b : x) {
    if (b > 1) throw Error(ErrorCode::InvalidArgument, "message symbols must be 0 or 1");
  }
}

/// Decoder side of the lifting: hat_h0 on the first k' coordinates.
BitVector project_back(const std::vector<std::uint8_t>& word, std::size_t kprime, std::uint8_t image_of_two) {
  BitVector out(kprime);
  for (std::size_t i = 0; i < kprime; ++i) out[i] = hat_h0(word[i], image_of_two);
  return out;
}

/// Value received over an edge carrying the GF(3) word `word`.
std::vector<std::uint8_t> transport(const std::vector<std::uint8_t>& word) {
  return unpack_ternary(pack_ternary(word));
}

}  // namespace

ExtensionParams extension_params(int gamma) {
  if (gamma < 2 || gamma > kMaxGamma) {
    throw Error(ErrorCode::InvalidGamma,
                "gamma must lie in 2.." + std::to_string(kMaxGamma) + ", got " + std::to_string(gamma));
  }
  const std::size_t t = std::size_t{1} << gamma;
  // t / log2(3) is irrational, so the ceiling is never at a tie.
  const auto nprime = static_cast<std::size_t>(std::ceil(static_cast<long double>(t) / std::log2(3.0L)));
  return {gamma, t, nprime, nprime - 1};
}

std::uint8_t hat_h0(std::uint8_t a, std::uint8_t image_of_two) {
  switch (a) {
    case 0: return 0;
    case 1: return 1;
    case 2: return image_of_two;
    default: throw Error(ErrorCode::InvalidArgument, "not a GF(3) symbol");
  }
}

std::vector<std::uint8_t> embed(const BitVector& x, std::size_t t) {
  if (x.size() > t) throw Error(ErrorCode::InvalidArgument, "message longer than the GF(3) block");
  std::vector<std::uint8_t> out(t, 0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
  return out;
}

BitVector pack_ternary(const std::vector<std::uint8_t>& word) {
  BitVector bits;
  bits.reserve(2 * word.size());
  for (auto a : word) {
    bits.push_back(static_cast<std::uint8_t>(a >> 1 & 1u));
    bits.push_back(static_cast<std::uint8_t>(a & 1u));
  }
  return bits;
}

std::vector<std::uint8_t> unpack_ternary(const BitVector& bits) {
  std::vector<std::uint8_t> word(bits.size() / 2);
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto a = static_cast<std::uint8_t>(bits[2 * i] << 1 | bits[2 * i + 1]);
    word[i] = a == 3 ? 0 : a;
  }
  return word;
}

BitVector extended_sum(const ExtensionParams& params, const BitVector& x1, const BitVector& x2,
                       std::uint8_t image_of_two) {
  require_length(params, x1);
  require_length(params, x2);
  const auto e1 = transport(embed(x1, params.t));
  const auto e2 = transport(embed(x2, params.t));
  std::vector<std::uint8_t> sum(params.t);
  for (std::size_t i = 0; i < params.t; ++i) sum[i] = static_cast<std::uint8_t>((e1[i] + e2[i]) % 3);
  return project_back(sum, params.kprime, image_of_two);
}

BitVector extended_unicast(const ExtensionParams& params, const BitVector& x1, const BitVector& x2,
                           std::uint8_t image_of_two) {
  require_length(params, x1);
  require_length(params, x2);
  return project_back(transport(embed(x1, params.t)), params.kprime, image_of_two);
}

CounterexampleReport run_counterexample(int gamma) {
  const auto params = extension_params(gamma);
  const BitVector ones(params.kprime, 1);
  return run_counterexample(gamma, ones, ones);
}

CounterexampleReport run_counterexample(int gamma, const BitVector& x1, const BitVector& x2) {
  const auto params = extension_params(gamma);
  CounterexampleReport report{params, x1, x2, {}, {}};
  require_length(params, x1);
  require_length(params, x2);
  report.true_sum = xor_sum(x1, x2);
  for (std::uint8_t image : {std::uint8_t{0}, std::uint8_t{1}}) {
    auto decoded = extended_sum(params, x1, x2, image);
    const bool correct = decoded == report.true_sum;
    report.outcomes.push_back({image, std::move(decoded), correct});
  }
  return report;
}

FailureSearchReport exhaustive_failure_search(int gamma) {
  const auto params = extension_params(gamma);
  if (params.kprime > kMaxExhaustiveKprime) {
    throw Error(ErrorCode::TooLarge, "k' = " + std::to_string(params.kprime) + " exceeds the exhaustive limit " +
                                         std::to_string(kMaxExhaustiveKprime));
  }
  const std::uint64_t count = std::uint64_t{1} << params.kprime;
  FailureSearchReport report{params, {}, 0, true};
  for (std::uint8_t image : {std::uint8_t{0}, std::uint8_t{1}}) {
    FailureSearch search{image, 0, std::nullopt, {}, {}};
    for (std::uint64_t a = 0; a < count && !search.witness_outcome; ++a) {
      const auto x1 = bits_of(a, params.kprime);
      for (std::uint64_t b = 0; b < count; ++b) {
        const auto x2 = bits_of(b, params.kprime);
        ++search.pairs_checked;
        auto decoded = extended_sum(params, x1, x2, image);
        if (decoded != xor_sum(x1, x2)) {
          search.witness_outcome = CompletionOutcome{image, std::move(decoded), false};
          search.witness_x1 = x1;
          search.witness_x2 = x2;
          break;
        }
      }
    }
    report.searches.push_back(std::move(search));
  }
  // Unicast control: the terminal wants X1 itself; either completion works.
  for (std::uint8_t image : {std::uint8_t{0}, std::uint8_t{1}}) {
    for (std::uint64_t a = 0; a < count; ++a) {
      const auto x1 = bits_of(a, params.kprime);
      for (std::uint64_t b = 0; b < count; ++b) {
        ++report.unicast_pairs_checked;
        if (extended_unicast(params, x1, bits_of(b, params.kprime), image) != x1) report.unicast_all_correct = false;
      }
    }
  }
  return report;
}

}  // namespace sumnet
