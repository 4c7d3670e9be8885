#include <gtest/gtest.h>

#include <json.hpp>

#include "../support/oracles.hpp"
#include "sumnet/coding.hpp"
#include "sumnet/error.hpp"
#include "sumnet/verify.hpp"

using sumnet::FieldMatrix;
using sumnet::NodeKind;
using sumnet::PrimeField;
using sumnet::Regime;


TEST(Regime, FollowsCharacteristicOfKMinusOne) {
  const auto fano = sumnet::fano();
  EXPECT_EQ(sumnet::regime_for(fano, PrimeField(2)), Regime::CharDivides);
  EXPECT_EQ(sumnet::regime_for(fano, PrimeField(3)), Regime::CharNotDivides);
  EXPECT_EQ(sumnet::regime_for(oracle::pg23(), PrimeField(3)), Regime::CharDivides);
  EXPECT_EQ(sumnet::regime_for(oracle::pg23(), PrimeField(2)), Regime::CharNotDivides);
}

TEST(CodeParams, FractionalParameters) {
  const auto fano = sumnet::CodeParams::fractional(sumnet::fano());
  EXPECT_EQ(fano.vprime, 6u);
  EXPECT_EQ(fano.bprime, 6u);
  EXPECT_EQ(fano.m, 6u);
  EXPECT_EQ(fano.n, 12u);
  EXPECT_EQ(fano.x, 1u);
  const auto s15 = sumnet::CodeParams::fractional(sumnet::sts_bose(15));
  EXPECT_EQ(s15.m, 15u);
  EXPECT_EQ(s15.n, 50u);
  const auto pg = sumnet::CodeParams::fractional(oracle::pg23());
  EXPECT_EQ(pg.vprime, 12u);
  EXPECT_EQ(pg.n, 24u);
}

TEST(CharDividesCode, FanoScalarCode) {
  const auto n = sumnet::build_sum_network(sumnet::fano());
  const PrimeField f(2);
  const auto code = sumnet::build_code_char_divides(n, f);
  EXPECT_EQ(code.params.m, 1u);
  EXPECT_EQ(code.params.n, 1u);
  ASSERT_EQ(code.phi.size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(code.phi[i], sumnet::partial_sum_row(n.design(), i, code.params, f));
  }
  ASSERT_EQ(code.psi.size(), 14u);
  for (const auto& dec : code.psi) {
    for (std::size_t c = 0; c < dec.map.cols(); ++c) EXPECT_EQ(dec.map(0, c), 1u);
  }
  EXPECT_TRUE(sumnet::transfer_check(n, code).ok());
}

TEST(CharNotDividesCode, FanoMatchesPrintedSelectorLayout) {
  const auto n = sumnet::build_sum_network(sumnet::fano());
  const PrimeField f(3);
  const auto code = sumnet::build_code_char_not_divides(n, f);
  ASSERT_EQ(code.phi.size(), 7u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(code.phi[i], oracle::fano_phi(i, oracle::fano_printed_layout()[i], f)) << "phi_" << i + 1;
  }
  // The last bottleneck carries the third slice of each block through point 7.
  EXPECT_EQ(code.phi[6], oracle::fano_phi(6, oracle::Slices{{'D', 5}, {'E', 5}, {'F', 5}}, f));
  EXPECT_NE(code.phi[6], oracle::fano_phi(6, oracle::Slices{{'D', 5}, {'E', 5}, {'D', 5}}, f));
}

TEST(CharNotDividesCode, SelectorsMatchWorkedBlock) {
  // t_C reads U_12, U_52, U_61 = X_C(1:2), X_C(3:4), X_C(5:6).
  const auto d = sumnet::fano();
  const auto u12 = sumnet::resolve_selector(d, 0, 1);
  const auto u52 = sumnet::resolve_selector(d, 4, 1);
  const auto u61 = sumnet::resolve_selector(d, 5, 0);
  EXPECT_EQ(u12.gamma, 2u);
  EXPECT_EQ(u12.color, 1u);
  EXPECT_EQ(u52.gamma, 2u);
  EXPECT_EQ(u52.color, 2u);
  EXPECT_EQ(u61.gamma, 2u);
  EXPECT_EQ(u61.color, 3u);
}

TEST(CharNotDividesCode, BlockSourcesAreRecoverable) {
  for (const auto& d : {sumnet::fano(), sumnet::sts_bose(9), oracle::pg23()}) {
    const auto n = sumnet::build_sum_network(d);
    const PrimeField f(d.k() == 4 ? 2 : 5);
    const auto code = sumnet::build_code_char_not_divides(n, f);
    for (std::size_t j = 0; j < d.b(); ++j) {
      EXPECT_EQ(sumnet::reconstruct_block_source(code, d, j),
                sumnet::source_projection(d, d.v() + j, code.params.m, f));
    }
  }
}

TEST(CharNotDividesCode, PointsOutsideVPrimeStillDecode) {
  // STS(13): v = 1 (mod 3), so one point is left out of the slices.
  const auto n = sumnet::build_sum_network(oracle::sts13());
  const auto code = sumnet::build_code(n, PrimeField(7));
  EXPECT_EQ(code.params.x, 1u);
  EXPECT_EQ(code.params.m, 12u);
  EXPECT_EQ(code.params.n, 36u);
  EXPECT_TRUE(sumnet::transfer_check(n, code).ok());
}

TEST(BuildCode, RegimeErrors) {
  const auto n = sumnet::build_sum_network(sumnet::fano());
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const sumnet::Error& e) {
      return e.code();
    }
    return sumnet::ErrorCode::Io;
  };
  EXPECT_EQ(code_of([&] { (void)sumnet::build_code_char_divides(n, PrimeField(3)); }),
            sumnet::ErrorCode::CharMismatch);
  EXPECT_EQ(code_of([&] { (void)sumnet::build_code_char_not_divides(n, PrimeField(2)); }),
            sumnet::ErrorCode::CharMismatch);
}

TEST(CodeJson, RoundTripAndShapeChecks) {
  const auto n = sumnet::build_sum_network(sumnet::fano());
  const auto code = sumnet::build_code(n, PrimeField(3));
  const auto text = sumnet::code_to_json(code);
  EXPECT_EQ(sumnet::code_from_json(text), code);

  auto doc = nlohmann::json::parse(text);
  doc["phi"][0].erase(0);
  try {
    (void)sumnet::code_from_json(doc.dump());
    FAIL();
  } catch (const sumnet::Error& e) {
    EXPECT_EQ(e.code(), sumnet::ErrorCode::ShapeMismatch);
  }
  doc = nlohmann::json::parse(text);
  doc["phi"][0][0][0] = 3;
  EXPECT_THROW((void)sumnet::code_from_json(doc.dump()), sumnet::Error);
  EXPECT_THROW((void)sumnet::code_from_json("[]"), sumnet::Error);
}

TEST(CodeStructure, DecoderInputsFollowEdges) {
  const auto n = sumnet::build_sum_network(sumnet::sts_bose(9));
  const auto code = sumnet::build_code(n, PrimeField(5));
  for (const auto& dec : code.psi) {
    EXPECT_EQ(dec.inputs, sumnet::decoder_inputs(n, dec.terminal));
    std::size_t width = 0;
    for (const auto& in : dec.inputs) width += sumnet::input_width(in, code.params);
    EXPECT_EQ(dec.map.cols(), width);
    EXPECT_EQ(dec.map.rows(), code.params.m);
  }
  EXPECT_EQ(code.psi.front().terminal.kind, NodeKind::TerminalPoint);
  EXPECT_EQ(code.psi.back().terminal.kind, NodeKind::TerminalBlock);
}
