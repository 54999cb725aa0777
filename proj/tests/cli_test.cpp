#include <gtest/gtest.h>

#include <sstream>

#include "finsler/cli.hpp"
#include "finsler/error.hpp"
#include "finsler/io.hpp"
#include "support.hpp"

using namespace finsler;
using io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Io, ParsesEveryMetricKind) {
  EXPECT_EQ(io::parse_metric(Json("bg3")).polynomial.terms().size(), 10u);
  EXPECT_EQ(io::parse_metric(Json{{"kind", "builtin"}, {"tag", "bg4"}}).polynomial.terms().size(), 11u);
  const auto lf = io::parse_metric(io::parse_json(R"({"kind":"linear_forms","n":3,"forms":[[1,-1,-1],[1,-1,1],[1,1,-1]]})"));
  EXPECT_TRUE(lf.forms.has_value());
  EXPECT_EQ(lf.polynomial.terms().size(), 10u);
  const auto poly = io::parse_metric(io::parse_json(R"({"kind":"polynomial","n":2,"m":2,"terms":[{"idx":[2,1],"c":3}]})"));
  ASSERT_EQ(poly.polynomial.terms().size(), 1u);
  EXPECT_EQ(poly.polynomial.terms()[0].idx, (MultiIndex{0, 1}));
}

TEST(Io, RejectsMalformedMetrics) {
  for (const char* text : {R"({"kind":"polynomial","n":2,"m":2,"terms":[{"idx":[0,1],"c":1}]})",
                           R"({"kind":"polynomial","n":2,"m":2,"terms":[{"idx":[1,2]}]})",
                           R"({"kind":"linear_forms","n":2,"forms":[[1,0]]})", R"({"kind":"spline"})", R"("bg5")"}) {
    EXPECT_THROW(io::parse_metric(io::parse_json(text)), Error) << text;
  }
  EXPECT_THROW(io::parse_json("{not json"), Error);
}

TEST(Io, TensorRoundTrip) {
  Tensor t(3, 3);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.1 * static_cast<double>(i) - 1.0 / 3.0;
  const Tensor back = io::tensor_from_json(io::parse_json(io::tensor_to_json(t).dump()));
  EXPECT_EQ(max_abs_diff(t, back), 0.0);
  const Json j = io::tensor_to_json(t);
  EXPECT_EQ(j.at("data").at(1).at(2).at(0).get<double>(), t(1, 2, 0));
  EXPECT_THROW(io::tensor_from_json(Json{{"n", 2}, {"order", 1}, {"data", {1.0}}}), Error);
}

TEST(Io, ParsesPoints) {
  const Direction y = io::parse_direction("3, 1,1");
  EXPECT_EQ(y.dim(), 3);
  EXPECT_EQ(y[0], 3.0);
  EXPECT_THROW(io::parse_direction("1,x,2"), Error);
  EXPECT_THROW(io::parse_direction("1,nan,2"), Error);
  EXPECT_THROW(io::parse_direction(""), Error);
}

TEST(Cli, ExpandIsCanonicalAndDeterministic) {
  const auto a = run({"expand", "--metric", "bg3"});
  const auto b = run({"expand", "--metric", "bg3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = io::parse_json(a.out);
  ASSERT_EQ(j.at("terms").size(), 10u);
  EXPECT_EQ(j.at("terms").at(0).at("idx"), Json::array({1, 1, 1}));
  // Lexicographic order of 1-based indices.
  for (std::size_t i = 1; i < j.at("terms").size(); ++i) {
    EXPECT_LT(j.at("terms").at(i - 1).at("idx").get<std::vector<int>>(), j.at("terms").at(i).at("idx").get<std::vector<int>>());
  }
  const auto forms = run({"expand", "--metric", R"({"kind":"linear_forms","n":3,"forms":[[1,-1,-1],[1,-1,1],[1,1,-1]]})"});
  EXPECT_EQ(forms.out, a.out);
  const auto ident = run({"expand", "--metric", R"({"kind":"linear_forms","n":3,"forms":[[1,0,0],[0,1,0],[0,0,1]]})"});
  EXPECT_EQ(io::parse_json(ident.out).at("terms").size(), 1u);
}

TEST(Cli, ExpandOutputEvaluatesLikeTheBuiltin) {
  for (const std::string tag : {"bg3", "bg4"}) {
    const auto expanded = run({"expand", "--metric", tag});
    const std::string point = tag == "bg3" ? "3,1,1" : "4,1,1,1";
    const auto via_json = run({"eval", "--metric", expanded.out.substr(0, expanded.out.size() - 1), "--point", point});
    const auto via_tag = run({"eval", "--metric", tag, "--point", point});
    ASSERT_EQ(via_json.code, 0) << via_json.err;
    EXPECT_EQ(via_json.out, via_tag.out);
  }
}

TEST(Cli, EvalExamples) {
  const auto l = run({"eval", "--metric", "bg3", "--point", "3,1,1", "--outputs", "L"});
  ASSERT_EQ(l.code, 0);
  const Json j = io::parse_json(l.out);
  EXPECT_NEAR(j.at("points").at(0).at("outputs").at("L").get<double>(), std::cbrt(9.0), 1e-15);

  const auto out = run({"eval", "--metric", "bg4", "--point", "1,1,1,1"});
  EXPECT_EQ(out.code, 1);
  const Json o = io::parse_json(out.out).at("points").at(0);
  EXPECT_EQ(o.at("status").at("classification"), "OutOfDomain");
  EXPECT_FALSE(o.contains("outputs"));

  const auto deg = run({"eval", "--metric", "bg3", "--point", "1,2,3"});
  EXPECT_EQ(deg.code, 1);
  EXPECT_EQ(io::parse_json(deg.out).at("points").at(0).at("status").at("classification"), "Degenerate");
}

TEST(Cli, EvalMixedBatchKeepsOrderAndSucceeds) {
  const auto r = run({"eval", "--metric", "bg3", "--points", "[[1,2,3],[3,1,1]]", "--outputs", "scalar"});
  ASSERT_EQ(r.code, 0);
  const Json pts = io::parse_json(r.out).at("points");
  EXPECT_EQ(pts.at(0).at("index"), 1);
  EXPECT_FALSE(pts.at(0).contains("outputs"));
  EXPECT_TRUE(pts.at(1).at("outputs").contains("scalar"));
}

TEST(Cli, EvalKappaContract) {
  EXPECT_EQ(run({"eval", "--metric", "bg3", "--point", "3,1,1", "--outputs", "einstein"}).code, 3);
  EXPECT_EQ(run({"eval", "--metric", "bg3", "--point", "3,1,1", "--outputs", "L", "--kappa", "2"}).code, 3);
  EXPECT_EQ(run({"eval", "--metric", "bg3", "--point", "3,1,1", "--outputs", "einstein", "--kappa", "0"}).code, 3);
  const auto ok = run({"eval", "--metric", "bg3", "--point", "3,1,1", "--outputs", "einstein", "--kappa", "0.1"});
  ASSERT_EQ(ok.code, 0);
  const Json e = io::parse_json(ok.out).at("points").at(0).at("outputs").at("einstein");
  EXPECT_EQ(e.at("kappa").get<double>(), 0.1);
  const auto planar = run({"eval", "--metric", R"({"kind":"linear_forms","n":2,"forms":[[1,0],[1,1]]})", "--point", "1,0.5",
                           "--outputs", "einstein", "--kappa", "1"});
  EXPECT_EQ(planar.code, 3);
}

TEST(Cli, EvalInputErrors) {
  EXPECT_EQ(run({"eval", "--metric", "bg3"}).code, 3);
  EXPECT_EQ(run({"eval", "--metric", "bg3", "--point", "1,2"}).code, 3);
  EXPECT_EQ(run({"eval", "--metric", "bg3", "--point", "1,inf,2"}).code, 3);
  EXPECT_EQ(run({"eval", "--metric", "bg3", "--point", "3,1,1", "--outputs", "torsion"}).code, 3);
  EXPECT_EQ(run({"eval", "--metric", "{oops", "--point", "3,1,1"}).code, 3);
  EXPECT_EQ(run({"eval", "--metric", "/nonexistent/metric.json", "--point", "3,1,1"}).code, 3);
  EXPECT_EQ(run({"eval", "--request", R"({"metric":"bg3","points":[]})"}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({}).code, 3);
}

TEST(Cli, ReportDossier) {
  const auto r = run({"report", "--metric", "bg3", "--point", "3,1,1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json d = io::parse_json(r.out);
  EXPECT_NEAR(d.at("det_A_ij").get<double>(), 288.0, 1e-12);
  EXPECT_EQ(d.at("signature").at("signs"), "--+");
  EXPECT_TRUE(d.contains("condition_number"));
  EXPECT_TRUE(d.contains("S_cov"));

  const auto b4 = run({"report", "--metric", "bg4", "--point", "4,1,1,1", "--json", "--kappa", "2"});
  ASSERT_EQ(b4.code, 0);
  const Json d4 = io::parse_json(b4.out);
  EXPECT_TRUE(d4.at("scalar_curvature").is_number());
  EXPECT_TRUE(d4.contains("einstein"));

  const auto text = run({"report", "--metric", "bg3", "--point", "3,1,1"});
  EXPECT_NE(text.out.find("det(A_ij): 288"), std::string::npos);
  EXPECT_NE(text.out.find("signature of g"), std::string::npos);
}

TEST(Cli, ReportExitCodes) {
  EXPECT_EQ(run({"report", "--metric", "bg3", "--point", "1,2,3"}).code, 1);
  EXPECT_EQ(run({"report", "--metric", "bg4", "--point", "1,1,1,1"}).code, 1);
  EXPECT_EQ(run({"report", "--metric", "bg3", "--point", "1,nan,1"}).code, 3);
  EXPECT_EQ(run({"report", "--metric", "bg3"}).code, 3);
}

TEST(Cli, CheckContract) {
  EXPECT_EQ(run({"check", "--count", "0"}).code, 3);
  EXPECT_EQ(run({"check", "--count", "5", "--metrics", "bg9"}).code, 3);
  const auto a = run({"check", "--count", "8", "--seed", "3"});
  const auto b = run({"check", "--count", "8", "--seed", "3"});
  EXPECT_EQ(a.code, 0) << a.out.substr(0, 400);
  EXPECT_EQ(a.out, b.out);
  const Json j = io::parse_json(a.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("errata").size(), 3u);
  const auto inj = run({"check", "--count", "8", "--seed", "3", "--inject-erratum"});
  EXPECT_EQ(inj.code, 2);
  bool torsion_failed = false;
  const Json injected = io::parse_json(inj.out);
  for (const auto& p : injected.at("properties")) {
    if (p.at("metric") == "bg3" && p.at("name") == "oracle/dual/C") {
      torsion_failed = !p.at("pass").get<bool>();
      EXPECT_EQ(p.at("worst_index").size(), 3u);
    }
  }
  EXPECT_TRUE(torsion_failed);
}
