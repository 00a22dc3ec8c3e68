#include <doctest.h>

#include <limits>
#include <sstream>

#include "nettest/counting.hpp"
#include "nettest/io.hpp"
#include "nettest/report.hpp"
#include "nettest/rng.hpp"
#include "nettest/study.hpp"
#include "support/oracles.hpp"

using namespace nettest;

TEST_CASE("parse a triangle line") {
  std::istringstream in("{\"m\":3,\"edges\":[[0,1],[1,2],[0,2]]}\n");
  const std::vector<Graph> graphs = parse_samples(in);
  REQUIRE(graphs.size() == 1);
  CHECK(count_motif(graphs[0], triangle_motif()) == 1);
}

TEST_CASE("empty input parses to an empty sequence") {
  std::istringstream in("");
  CHECK(parse_samples(in).empty());
}

TEST_CASE("out-of-order pairs are rejected") {
  std::istringstream in("{\"m\":3,\"edges\":[[1,0]]}\n");
  CHECK_THROWS_AS(parse_samples(in), InvalidPairError);
}

TEST_CASE("parse errors carry the line number") {
  std::istringstream in(
      "{\"m\":3,\"edges\":[]}\n"
      "{\"m\":3,\"edges\":[[0,1],[0,1]]}\n");
  try {
    parse_samples(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  std::istringstream bad("not json\n");
  CHECK_THROWS_AS(parse_samples(bad), ParseError);
  std::istringstream missing("{\"edges\":[]}\n");
  CHECK_THROWS_AS(parse_samples(missing), ParseError);
  std::istringstream out_of_range("{\"m\":3,\"edges\":[[0,3]]}\n");
  CHECK_THROWS_AS(parse_samples(out_of_range), InvalidPairError);
}

TEST_CASE("emit then parse round-trips edge bits exactly") {
  RngStream rng(41, 0);
  std::vector<Graph> graphs;
  for (int i = 0; i < 25; ++i)
    graphs.push_back(oracles::random_graph(17, 0.3, rng));
  std::ostringstream out;
  emit_samples(out, graphs);
  std::istringstream in(out.str());
  const std::vector<Graph> back = parse_samples(in);
  REQUIRE(back.size() == graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) CHECK(back[i] == graphs[i]);
}

TEST_CASE("report serialization has the fixed schema") {
  TestReport r;
  r.test_id = "gof-sparse";
  r.n = 10;
  r.m = 50;
  r.motif = "triangle";
  r.lambda_hat = 0.25;
  r.statistic = 0.25;
  r.threshold = 0.5;
  r.direction = ">";
  r.p_value = 0.2;
  r.alpha = 0.05;
  r.reject = false;
  r.diagnostics.feasibility = "feasible";
  const std::string json = report_to_json(r);
  CHECK(json.find("\"test_id\": \"gof-sparse\"") != std::string::npos);
  CHECK(json.find("\"decision\": \"fail-to-reject\"") != std::string::npos);
  CHECK(report_csv_header() ==
        "test_id,n,m,motif,lambda_hat,statistic,threshold,p_value,decision");
  CHECK(report_csv_line(r) ==
        "gof-sparse,10,50,triangle,0.25,0.25,0.5,0.2,fail-to-reject");

  // non-finite values encode as strings
  r.lambda_hat = -std::numeric_limits<double>::infinity();
  CHECK(report_to_json(r).find("\"lambda_hat\": \"-inf\"") != std::string::npos);
  // two-sample lambda pair joins with ';'
  r.lambda_hat = 0.1;
  r.lambda_hat_2 = 0.3;
  CHECK(report_csv_line(r).find("0.1;0.3") != std::string::npos);
}

namespace {

StudyConfig sparse_study(int R, long n, std::uint64_t seed) {
  StudyConfig config;
  config.generator.kind = GeneratorSpec::Kind::Er;
  config.generator.er = make_er(40, 0.05);
  config.test.kind = TestSpec::Kind::GofSparse;
  config.test.H = triangle_motif();
  config.test.c0 = 2.0;
  config.test.alpha = 0.05;
  config.replications = R;
  config.n = n;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("mc_study is deterministic byte-for-byte") {
  const StudyConfig config = sparse_study(6, 40, 123);
  const StudyResult a = mc_study(config);
  const StudyResult b = mc_study(config);
  CHECK(study_to_json(a) == study_to_json(b));
  CHECK(study_to_csv(a) == study_to_csv(b));
  CHECK(a.rejection_rate ==
        static_cast<double>(a.rejections) / a.replications);
}

TEST_CASE("worker count does not change the result") {
  StudyConfig config = sparse_study(8, 30, 7);
  config.workers = 1;
  const std::string serial = study_to_json(mc_study(config));
  config.workers = 4;
  CHECK(study_to_json(mc_study(config)) == serial);
}

TEST_CASE("a never-rejecting configuration reports rate zero") {
  // p = 0 graphs have zero triangles; centering at zero makes every
  // replication all-zero, which never rejects
  StudyConfig config;
  config.generator.er = make_er(12, 0.0);
  config.test.kind = TestSpec::Kind::GofFixed;
  config.test.H = triangle_motif();
  config.test.h0 = 0.0;
  config.replications = 10;
  config.n = 5;
  const StudyResult result = mc_study(config);
  CHECK(result.rejections == 0);
  CHECK(result.rejection_rate == 0.0);
}

TEST_CASE("study errors carry the replication index") {
  // n = 1 makes gof-fixed throw in every replication
  StudyConfig config = sparse_study(3, 30, 1);
  config.test.kind = TestSpec::Kind::GofFixed;
  config.test.h0 = 5.0;
  config.n = 1;
  try {
    mc_study(config);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("replication 0") != std::string::npos);
  }
}

TEST_CASE("study validation") {
  StudyConfig config = sparse_study(0, 10, 1);
  CHECK_THROWS_AS(mc_study(config), DomainError);
  config = sparse_study(2, 10, 1);
  config.generator.er = make_er(2, 0.5);  // triangle does not fit
  CHECK_THROWS_AS(mc_study(config), IncompatibleSamplesError);
}

TEST_CASE("two-sample study wires both generators") {
  StudyConfig config;
  config.generator.er = make_er(40, 0.05);
  config.generator2 = config.generator;
  config.generator2->er.p = 0.06;
  config.test.kind = TestSpec::Kind::TwoSampleSparse;
  config.test.H = triangle_motif();
  config.test.c0 = 2.0;
  config.replications = 3;
  config.n = 30;
  config.n2 = 20;
  const StudyResult result = mc_study(config);
  CHECK(result.per_replication.size() == 3);
  CHECK(result.n2 == 20);
  // lambda summary tracks the difference of multipliers
  for (const ReplicationStat& s : result.per_replication)
    CHECK(std::isfinite(s.lambda_hat));
}
