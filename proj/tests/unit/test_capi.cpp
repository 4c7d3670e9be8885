#include <gtest/gtest.h>

#include <json.hpp>

#include "sumnet/sumnet.h"

using nlohmann::json;

namespace {

json take_json(char* s) {
  EXPECT_NE(s, nullptr);
  auto doc = json::parse(s);
  sumnet_string_free(s);
  return doc;
}

}  // namespace

TEST(CApi, StatusNames) {
  EXPECT_STREQ(sumnet_status_name(SUMNET_OK), "OK");
  EXPECT_STREQ(sumnet_status_name(SUMNET_ERR_CHAR_MISMATCH), "CharMismatch");
  EXPECT_STREQ(sumnet_status_name(12345), "Unknown");
  EXPECT_STRNE(sumnet_version(), "");
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(sumnet_design_fano(nullptr), SUMNET_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(sumnet_last_error()), "");
  char* out = nullptr;
  EXPECT_EQ(sumnet_design_to_json(nullptr, &out), SUMNET_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sumnet_network_build(nullptr, nullptr), SUMNET_ERR_INVALID_ARGUMENT);
  sumnet_design_free(nullptr);
  sumnet_network_free(nullptr);
  sumnet_code_free(nullptr);
}

TEST(CApi, FanoPipeline) {
  sumnet_design* d = nullptr;
  ASSERT_EQ(sumnet_design_fano(&d), SUMNET_OK);
  int v, k, lambda, b, r;
  ASSERT_EQ(sumnet_design_params(d, &v, &k, &lambda, &b, &r), SUMNET_OK);
  EXPECT_EQ(v, 7);
  EXPECT_EQ(r, 3);

  char* raw = nullptr;
  int valid = 0;
  ASSERT_EQ(sumnet_design_report_json(d, &raw, &valid), SUMNET_OK);
  const auto report = take_json(raw);
  EXPECT_EQ(valid, 1);
  EXPECT_EQ(report["schema"], "sumnet.design-report/1");
  EXPECT_EQ(report["design"]["blocks"][1], json({3, 4, 5}));

  sumnet_network* n = nullptr;
  ASSERT_EQ(sumnet_network_build(d, &n), SUMNET_OK);
  size_t nodes = 0, edges = 0;
  ASSERT_EQ(sumnet_network_node_count(n, &nodes, &edges), SUMNET_OK);
  EXPECT_EQ(nodes, 42u);

  sumnet_code* c = nullptr;
  ASSERT_EQ(sumnet_code_build(n, 3, SUMNET_REGIME_AUTO, &c), SUMNET_OK);
  int64_t m = 0, len = 0;
  ASSERT_EQ(sumnet_code_rate(c, &m, &len), SUMNET_OK);
  EXPECT_EQ(m, 6);
  EXPECT_EQ(len, 12);

  int ok = 0;
  ASSERT_EQ(sumnet_verify(n, c, &raw, &ok), SUMNET_OK);
  const auto verify = take_json(raw);
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(verify["rate"]["reduced"]["text"], "1/2");
  EXPECT_EQ(verify["regime"], "char-not-divides");

  ASSERT_EQ(sumnet_simulate(n, c, 100, 42, &raw, &ok), SUMNET_OK);
  const auto sim = take_json(raw);
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(sim["passed"], 100);

  sumnet_code* wrong = nullptr;
  EXPECT_EQ(sumnet_code_build(n, 3, SUMNET_REGIME_CHAR_DIVIDES, &wrong), SUMNET_ERR_CHAR_MISMATCH);
  EXPECT_EQ(wrong, nullptr);
  EXPECT_EQ(sumnet_code_build(n, 4, SUMNET_REGIME_AUTO, &wrong), SUMNET_ERR_NOT_PRIME);
  EXPECT_EQ(sumnet_code_build(n, 3, 7, &wrong), SUMNET_ERR_INVALID_ARGUMENT);

  sumnet_code_free(c);
  sumnet_network_free(n);
  sumnet_design_free(d);
}

TEST(CApi, JsonRoundTrips) {
  sumnet_design* d = nullptr;
  ASSERT_EQ(sumnet_design_sts(9, &d), SUMNET_OK);
  sumnet_network* n = nullptr;
  ASSERT_EQ(sumnet_network_build(d, &n), SUMNET_OK);
  char* text = nullptr;
  ASSERT_EQ(sumnet_network_to_json(n, &text), SUMNET_OK);
  sumnet_network* n2 = nullptr;
  EXPECT_EQ(sumnet_network_from_json(text, &n2), SUMNET_OK);
  sumnet_string_free(text);

  sumnet_code* c = nullptr;
  ASSERT_EQ(sumnet_code_build(n2, 5, SUMNET_REGIME_AUTO, &c), SUMNET_OK);
  ASSERT_EQ(sumnet_code_to_json(c, &text), SUMNET_OK);
  sumnet_code* c2 = nullptr;
  EXPECT_EQ(sumnet_code_from_json(text, &c2), SUMNET_OK);
  sumnet_string_free(text);
  int ok = 0;
  EXPECT_EQ(sumnet_verify(n, c2, nullptr, &ok), SUMNET_OK);
  EXPECT_EQ(ok, 1);

  EXPECT_EQ(sumnet_code_from_json("{", &c2), SUMNET_ERR_PARSE);
  EXPECT_EQ(sumnet_design_sts(8, &d), SUMNET_ERR_UNSUPPORTED_ORDER);
  EXPECT_EQ(sumnet_design_load("/nonexistent/x.json", &d), SUMNET_ERR_IO);

  sumnet_code_free(c);
  sumnet_code_free(c2);
  sumnet_network_free(n);
  sumnet_network_free(n2);
  sumnet_design_free(d);
}

TEST(CApi, DotFilter) {
  sumnet_design* d = nullptr;
  ASSERT_EQ(sumnet_design_fano(&d), SUMNET_OK);
  sumnet_network* n = nullptr;
  ASSERT_EQ(sumnet_network_build(d, &n), SUMNET_OK);
  char* dot = nullptr;
  ASSERT_EQ(sumnet_network_to_dot(n, "t_p1,t_B1", &dot), SUMNET_OK);
  const std::string text(dot);
  sumnet_string_free(dot);
  EXPECT_NE(text.find("t_p1"), std::string::npos);
  EXPECT_EQ(text.find("t_p2"), std::string::npos);
  EXPECT_EQ(sumnet_network_to_dot(n, "s_p1", &dot), SUMNET_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sumnet_network_to_dot(n, "t_p9", &dot), SUMNET_ERR_OUT_OF_RANGE);
  sumnet_network_free(n);
  sumnet_design_free(d);
}

TEST(CApi, CapacityAndCounterexample) {
  sumnet_design* d = nullptr;
  ASSERT_EQ(sumnet_design_sts(15, &d), SUMNET_OK);
  char* raw = nullptr;
  ASSERT_EQ(sumnet_capacity(d, 7, &raw), SUMNET_OK);
  const auto cap = take_json(raw);
  EXPECT_EQ(cap["capacity"]["text"], "3/10");
  EXPECT_EQ(cap["matches"], true);
  sumnet_design_free(d);

  ASSERT_EQ(sumnet_counterexample(2, 1, &raw), SUMNET_OK);
  const auto ce = take_json(raw);
  EXPECT_EQ(ce["kprime"], 2);
  EXPECT_EQ(ce["outcomes"][1]["verdict"], "fails");
  EXPECT_EQ(ce["search"][0]["witness"], nullptr);
  EXPECT_EQ(ce["unicast_control"]["all_correct"], true);
  EXPECT_EQ(sumnet_counterexample(1, 0, &raw), SUMNET_ERR_INVALID_GAMMA);
  EXPECT_EQ(sumnet_counterexample(5, 1, &raw), SUMNET_ERR_TOO_LARGE);
}
