#ifndef NETTEST_STUDY_HPP
#define NETTEST_STUDY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nettest/sampler.hpp"
#include "nettest/tests.hpp"

namespace nettest {

// What to sample in each replication.
struct GeneratorSpec {
  enum class Kind { Er, Ergm };
  Kind kind = Kind::Er;
  ErModel er;
  ErgmModel ergm;
  SamplerConfig sampler;  // burn-in/thin for ERGM chains
};

// Which test to run on the generated samples.
struct TestSpec {
  enum class Kind { GofFixed, GofSparse, GofDense, TwoSampleSparse, TwoSampleDense };
  Kind kind = Kind::GofSparse;
  Motif H;
  double h0 = 0.0;      // gof-fixed centering
  double alpha = 0.05;
  double c0 = 1.0;      // sparse reference
  std::optional<double> p0;          // dense null (ER)
  std::optional<ErgmModel> beta0;    // dense null (ERGM)
  double c_n = 0.0;
  double epsilon = 0.0;
  double c = 1.0;
};

struct StudyConfig {
  GeneratorSpec generator;
  std::optional<GeneratorSpec> generator2;  // two-sample studies
  TestSpec test;
  int replications = 1;
  long n = 1;   // sample size per replication
  long n2 = 0;  // second sample size (defaults to n)
  std::uint64_t seed = 0;
  int workers = 1;
};

struct ReplicationStat {
  int index = 0;
  double lambda_hat = 0.0;    // difference of multipliers for two-sample tests
  double statistic = 0.0;
  bool reject = false;
};

struct StudyResult {
  std::string test_id;
  int replications = 0;
  long n = 0;
  long n2 = 0;
  int rejections = 0;
  double rejection_rate = 0.0;
  double lambda_mean = 0.0;  // over replications with finite lambda
  double lambda_sd = 0.0;
  std::vector<ReplicationStat> per_replication;
  double runtime_seconds = 0.0;  // informational; excluded from serialization
};

// Runs R independent replications, each drawing fresh samples from its own
// deterministic stream, and aggregates decisions by replication index so the
// result is identical regardless of worker scheduling.
StudyResult mc_study(const StudyConfig& config);

// Deterministic JSON/CSV renderings (runtime is deliberately omitted).
std::string study_to_json(const StudyResult& result, int indent = 2);
std::string study_to_csv(const StudyResult& result);

}  // namespace nettest

#endif
