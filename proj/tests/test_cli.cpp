#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccmeasure/cli.hpp"
#include "ccmeasure/errors.hpp"
#include <json.hpp>

using ccm::cli::run;

namespace {

struct Out {
  int code;
  std::string out;
  std::string err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run(args, o, e);
  return {code, o.str(), e.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ccmeasure_test_" + name);
}

}  // namespace

TEST(Cli, EuclideanDistance) {
  const auto r = call({"space", "dist", "--space", "euclidean:2", "--p", "0,0", "--q", "3,4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "5\n");
}

TEST(Cli, FlagsBeforeSubcommand) {
  const auto r = call({"--space", "euclidean:2", "space", "dist", "--p", "0,0", "--q", "3,4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "5\n");
}

TEST(Cli, CsvHeadersAndPrecision) {
  const auto r = call({"space", "dist", "--p", "0,0,0", "--q", "0,0,1", "--csv", "-"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n') + 1), "value,kind,gap\n");
  EXPECT_NE(r.out.find("3.5449077018110318,exact"), std::string::npos);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, HeadersPerCommand) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"curve", "meas", "--curve", "vertical", "--k", "2"}, "t,k,value,converged,spread,gap"},
      {{"curve", "degree", "--curve", "vertical"}, "t,k_hat,fit_residual,gap"},
      {{"curve", "mc1k", "--curve", "vertical", "--k", "2", "--grid", "5"}, "t,meas,converged,gap"},
      {{"measure", "length", "--curve", "vertical", "--k", "2"}, "k,length,error_estimate,gap"},
      {{"measure", "complexity", "--curve", "vertical", "--k", "2", "--eps", "0.5"}, "eps,count,scaled,dp_count,gap"},
      {{"measure", "entropy", "--curve", "vertical", "--k", "2", "--eps", "0.5"}, "eps,count,scaled,gap"},
      {{"measure", "hausdorff", "--curve", "vertical", "--k", "2", "--eps", "0.5"},
       "eps,hausdorff_cost,spherical_cost,pieces,gap"},
      {{"measure", "density", "--curve", "vertical", "--k", "2", "--radii", "0.2,0.1"}, "r,ratio,side,gap"},
  };
  for (auto [args, header] : cases) {
    args.push_back("--csv");
    args.push_back("-");
    const auto r = call(args);
    EXPECT_EQ(r.code, 0) << header << ": " << r.err;
    EXPECT_EQ(first_line(r.out), header);
  }
}

TEST(Cli, VerifyAndRectHeaders) {
  auto r = call({"verify", "main-theorem", "--space", "euclidean:1", "--curve", "segment:1", "--k", "1", "--eps",
                 "0.3,0.15,0.075", "--csv", "-"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "quantity,value,tolerance");
  r = call({"rect", "check", "--curve", "vertical@0.1:0.9", "--k", "2", "--samples", "2", "--radii", "0.1,0.01",
            "--csv", "-"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "piece,t,lower,upper,gap");
}

TEST(Cli, JsonSchema) {
  const auto r = call({"measure", "length", "--curve", "vertical", "--k", "2", "--json", "-"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_NEAR(doc["length"].get<double>(), 12.566370614359172, 1e-8);
  EXPECT_TRUE(doc.contains("gap"));
  EXPECT_TRUE(doc.contains("rel_tol"));
}

TEST(Cli, InfinityInJson) {
  const auto r = call({"curve", "meas", "--curve", "vertical", "--k", "1.5", "--json", "-"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["value"], "inf");
}

TEST(Cli, VerdictFailureExitsOne) {
  const auto r = call({"curve", "mc1k", "--curve", "vertical", "--k", "1.5", "--grid", "3"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"space", "dist", "--p", "0,0,0", "--q", "1,1,1", "--bogus"}).code, 2);
  EXPECT_EQ(call({"space", "dist", "--p", "0,0", "--q", "1,1,1"}).code, 2);
  EXPECT_EQ(call({"curve", "meas", "--curve", "vertical"}).code, 2);                  // no --k
  EXPECT_EQ(call({"curve", "meas", "--curve", "nonsense", "--k", "2"}).code, 2);      // unknown curve
  EXPECT_EQ(call({"curve", "meas", "--curve", "vertical", "--k", "2", "--t", "3"}).code, 2);  // outside domain
  EXPECT_EQ(call({"--space", "sphere", "space", "dist", "--p", "0", "--q", "1"}).code, 2);
  EXPECT_EQ(call({"verify", "main-theorem", "--space", "euclidean:1", "--curve", "doubled:1", "--k", "1"}).code, 2);
  const auto usage = call({});
  EXPECT_EQ(usage.code, 2);
  EXPECT_NE(usage.err.find("Usage"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(call({"--help"}).code, 0); }

TEST(Cli, ConfigFileWithOverride) {
  const auto path = temp_file("config.ini");
  {
    std::ofstream f(path);
    f << "space=euclidean:2\np=0,0\nq=3,4\n";
  }
  auto r = call({"--config", path.string(), "space", "dist"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "5\n");
  r = call({"--config", path.string(), "space", "dist", "--q", "6,8"});
  EXPECT_EQ(r.out, "10\n");
  std::filesystem::remove(path);
}

TEST(Cli, PolylineFileAndModulus) {
  const auto path = temp_file("poly.txt");
  {
    std::ofstream f(path);
    f << "# t x\n0 0\n0.5 1\n1 2\n";
  }
  auto r = call({"measure", "length", "--space", "euclidean:1", "--curve", "polyline:" + path.string() + ",modulus=1.5",
                 "--k", "1", "--csv", "-"});
  EXPECT_EQ(r.code, 0) << r.err;
  r = call({"measure", "length", "--space", "euclidean:1", "--curve", "polyline:" + path.string() + ",modulus=0.5",
            "--k", "1"});
  EXPECT_EQ(r.code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, WritesFiles) {
  const auto csv = temp_file("out.csv"), js = temp_file("out.json");
  const auto r = call({"space", "dist", "--p", "0,0,0", "--q", "1,0,0", "--csv", csv.string(), "--json", js.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
  std::ifstream c(csv), j(js);
  std::string header;
  std::getline(c, header);
  EXPECT_EQ(header, "value,kind,gap");
  EXPECT_EQ(nlohmann::json::parse(j)["schema"], 1);
  std::filesystem::remove(csv);
  std::filesystem::remove(js);
}

TEST(CurveSpec, Variants) {
  using ccm::cli::parse_curve;
  EXPECT_EQ(parse_curve("hsegment:1,0,1", {}).curve.dimension(), 3u);
  EXPECT_EQ(parse_curve("engel_w", {}).curve.dimension(), 4u);
  EXPECT_EQ(parse_curve("weierstrass:alpha=0.12,beta=10,phi=0;1", {}).curve.dimension(), 4u);
  EXPECT_EQ(parse_curve("poly:0;1|0;0;1", {}).curve.dimension(), 2u);
  const auto piece = parse_curve("vertical@-0.5:0+0:0.5", {-0.5, 0.5});
  ASSERT_EQ(piece.subsets.size(), 2u);
  EXPECT_DOUBLE_EQ(piece.curve.domain().a, -0.5);
  EXPECT_THROW(parse_curve("vertical@0.5:0.1", {}), ccm::InputError);
  EXPECT_THROW(parse_curve("weierstrass:gamma=2", {}), ccm::InputError);
  EXPECT_THROW(parse_curve("segment:1", {0.0}), ccm::InputError);
  EXPECT_THROW(ccm::cli::parse_list("1,x"), ccm::InputError);
}
