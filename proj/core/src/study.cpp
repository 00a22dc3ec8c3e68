#include "nettest/study.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include <nlohmann/json.hpp>

namespace nettest {

namespace {

std::vector<Graph> draw_sample(const GeneratorSpec& gen, long n,
                               std::uint64_t seed, std::uint64_t stream) {
  if (gen.kind == GeneratorSpec::Kind::Er) {
    RngStream rng(seed, stream);
    std::vector<Graph> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) out.push_back(sample_er(gen.er, rng));
    return out;
  }
  SamplerConfig config = gen.sampler;
  config.seed = seed;
  config.stream = stream;
  return sample_ergm(gen.ergm, config, static_cast<int>(n));
}

int generator_m(const GeneratorSpec& gen) {
  return gen.kind == GeneratorSpec::Kind::Er ? gen.er.m : gen.ergm.m;
}

TestReport run_replication(const StudyConfig& config, int r) {
  const std::uint64_t stream1 = 2 * static_cast<std::uint64_t>(r);
  const std::uint64_t stream2 = stream1 + 1;
  const TestSpec& t = config.test;
  const bool two_sample = t.kind == TestSpec::Kind::TwoSampleSparse ||
                          t.kind == TestSpec::Kind::TwoSampleDense;
  const std::vector<Graph> sample1 =
      draw_sample(config.generator, config.n, config.seed, stream1);
  std::vector<Graph> sample2;
  if (two_sample) {
    const GeneratorSpec& gen2 =
        config.generator2 ? *config.generator2 : config.generator;
    const long n2 = config.n2 > 0 ? config.n2 : config.n;
    sample2 = draw_sample(gen2, n2, config.seed, stream2);
  }

  switch (t.kind) {
    case TestSpec::Kind::GofFixed:
      return gof_fixed(sample1, t.H, t.h0, t.alpha);
    case TestSpec::Kind::GofSparse:
      return gof_sparse(sample1, SparseSpec{t.c0, t.H, t.alpha});
    case TestSpec::Kind::GofDense:
      return gof_dense(sample1,
                       DenseSpec{t.p0, t.beta0, t.H, t.c_n, t.epsilon, t.c});
    case TestSpec::Kind::TwoSampleSparse:
      return two_sample_sparse(sample1, sample2, SparseSpec{t.c0, t.H, t.alpha});
    case TestSpec::Kind::TwoSampleDense:
      return two_sample_dense(sample1, sample2,
                              DenseSpec{t.p0, t.beta0, t.H, t.c_n, t.epsilon, t.c});
  }
  throw Error("unknown test kind");
}

const char* test_id_of(TestSpec::Kind kind) {
  switch (kind) {
    case TestSpec::Kind::GofFixed: return "gof-fixed";
    case TestSpec::Kind::GofSparse: return "gof-sparse";
    case TestSpec::Kind::GofDense: return "gof-dense";
    case TestSpec::Kind::TwoSampleSparse: return "two-sample-sparse";
    case TestSpec::Kind::TwoSampleDense: return "two-sample-dense";
  }
  return "unknown";
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

StudyResult mc_study(const StudyConfig& config) {
  if (config.replications < 1) throw DomainError("replications must be >= 1");
  if (config.n < 1) throw DomainError("sample size must be >= 1");
  if (config.test.H.v > generator_m(config.generator))
    throw IncompatibleSamplesError(
        "motif does not fit on the generator's vertex count");
  if (config.generator2 &&
      config.test.kind == TestSpec::Kind::TwoSampleDense &&
      generator_m(*config.generator2) != generator_m(config.generator))
    throw IncompatibleSamplesError(
        "two-sample-dense needs both generators on the same vertex count");

  const auto start = std::chrono::steady_clock::now();
  const int R = config.replications;
  std::vector<TestReport> reports(static_cast<std::size_t>(R));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(R));

  const int workers =
      std::max(1, std::min(config.workers, R));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= R) return;
      try {
        reports[static_cast<std::size_t>(r)] = run_replication(config, r);
      } catch (...) {
        failures[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  for (int r = 0; r < R; ++r) {
    if (!failures[static_cast<std::size_t>(r)]) continue;
    try {
      std::rethrow_exception(failures[static_cast<std::size_t>(r)]);
    } catch (const std::exception& e) {
      throw Error("replication " + std::to_string(r) + ": " + e.what());
    }
  }

  StudyResult result;
  result.test_id = test_id_of(config.test.kind);
  result.replications = R;
  result.n = config.n;
  result.n2 = config.n2 > 0 ? config.n2 : 0;
  result.per_replication.reserve(static_cast<std::size_t>(R));
  double sum = 0.0, sum_sq = 0.0;
  int finite = 0;
  for (int r = 0; r < R; ++r) {
    const TestReport& rep = reports[static_cast<std::size_t>(r)];
    ReplicationStat stat;
    stat.index = r;
    stat.lambda_hat = rep.lambda_hat_2 ? rep.lambda_hat - *rep.lambda_hat_2
                                       : rep.lambda_hat;
    stat.statistic = rep.statistic;
    stat.reject = rep.reject;
    result.per_replication.push_back(stat);
    if (stat.reject) ++result.rejections;
    if (std::isfinite(stat.lambda_hat)) {
      sum += stat.lambda_hat;
      sum_sq += stat.lambda_hat * stat.lambda_hat;
      ++finite;
    }
  }
  result.rejection_rate = static_cast<double>(result.rejections) / R;
  if (finite > 0) {
    result.lambda_mean = sum / finite;
    if (finite > 1) {
      const double var =
          (sum_sq - sum * sum / finite) / static_cast<double>(finite - 1);
      result.lambda_sd = std::sqrt(std::max(0.0, var));
    }
  }
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::string study_to_json(const StudyResult& result, int indent) {
  nlohmann::ordered_json j;
  j["test_id"] = result.test_id;
  j["replications"] = result.replications;
  j["n"] = result.n;
  if (result.n2 > 0) j["n2"] = result.n2;
  j["rejections"] = result.rejections;
  j["rejection_rate"] = result.rejection_rate;
  j["lambda_mean"] = result.lambda_mean;
  j["lambda_sd"] = result.lambda_sd;
  nlohmann::ordered_json reps = nlohmann::ordered_json::array();
  for (const ReplicationStat& s : result.per_replication) {
    nlohmann::ordered_json r;
    r["index"] = s.index;
    r["lambda_hat"] = std::isfinite(s.lambda_hat)
                          ? nlohmann::ordered_json(s.lambda_hat)
                          : nlohmann::ordered_json(s.lambda_hat > 0 ? "inf" : "-inf");
    r["statistic"] = std::isfinite(s.statistic)
                         ? nlohmann::ordered_json(s.statistic)
                         : nlohmann::ordered_json(s.statistic > 0 ? "inf" : "-inf");
    r["reject"] = s.reject;
    reps.push_back(r);
  }
  j["per_replication"] = reps;
  return j.dump(indent);
}

std::string study_to_csv(const StudyResult& result) {
  std::string out = "replication,lambda_hat,statistic,reject\n";
  for (const ReplicationStat& s : result.per_replication) {
    out += std::to_string(s.index) + "," + csv_number(s.lambda_hat) + "," +
           csv_number(s.statistic) + "," + (s.reject ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace nettest
