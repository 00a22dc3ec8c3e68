// Command-line surface for the maximum-entropy network test library:
// sampling, motif counting, the five test procedures, variational
// diagnostics, and Monte Carlo level/power studies.
//
// Exit codes: 0 fail-to-reject (or plain success), 3 reject,
//             1 usage error, 2 data/model error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nettest/counting.hpp"
#include "nettest/io.hpp"
#include "nettest/normal.hpp"
#include "nettest/report.hpp"
#include "nettest/sampler.hpp"
#include "nettest/study.hpp"
#include "nettest/tests.hpp"
#include "nettest/variational.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDataError = 2;
constexpr int kExitReject = 3;

ordered_json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

// "motif:beta" -> ErgmTerm, e.g. "edge:-0.35" or "triangle:0.05"
nettest::ErgmTerm parse_term(const std::string& text) {
  const auto pos = text.rfind(':');
  if (pos == std::string::npos || pos == 0 || pos + 1 == text.size())
    throw CLI::ValidationError("--term", "expected motif:beta, got '" + text + "'");
  nettest::ErgmTerm term;
  term.motif = nettest::motif_by_name(text.substr(0, pos));
  try {
    term.beta = std::stod(text.substr(pos + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--term", "bad coefficient in '" + text + "'");
  }
  return term;
}

nettest::ErgmModel model_from_terms(int m, const std::vector<std::string>& specs) {
  std::vector<nettest::ErgmTerm> terms;
  terms.reserve(specs.size());
  for (const std::string& s : specs) terms.push_back(parse_term(s));
  return nettest::make_ergm(m, std::move(terms));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw nettest::Error("cannot open output file: " + path);
  out << text << "\n";
}

void emit_report(const nettest::TestReport& report, const std::string& json_out,
                 const std::string& csv_out) {
  write_text(json_out, nettest::report_to_json(report));
  if (!csv_out.empty())
    write_text(csv_out, nettest::report_csv_header() + "\n" +
                            nettest::report_csv_line(report));
}

ordered_json subcritical_json(const nettest::SubcriticalReport& report) {
  ordered_json j;
  j["fixed_points"] = report.fixed_points;
  j["derivatives"] = report.derivatives;
  j["is_subcritical"] = report.is_subcritical;
  return j;
}

// MAXENT_SEED, when set, wins over flags and config files.
void apply_seed_env(std::uint64_t& seed) {
  const char* env = std::getenv("MAXENT_SEED");
  if (!env || !*env) return;
  try {
    seed = std::stoull(env);
  } catch (const std::exception&) {
    throw nettest::Error(std::string("MAXENT_SEED is not an integer: ") + env);
  }
}

struct GeneratorFlags {
  std::string kind = "er";
  int m = 0;
  double p = 0.5;
  std::vector<std::string> terms;
  int burn_in = 50;
  int thin = 5;
  bool force = false;

  nettest::GeneratorSpec build(std::uint64_t seed) const {
    nettest::GeneratorSpec gen;
    if (kind == "er") {
      gen.kind = nettest::GeneratorSpec::Kind::Er;
      gen.er = nettest::make_er(m, p);
    } else {
      gen.kind = nettest::GeneratorSpec::Kind::Ergm;
      gen.ergm = model_from_terms(m, terms);
    }
    gen.sampler.seed = seed;
    gen.sampler.burn_in = burn_in;
    gen.sampler.thin = thin;
    gen.sampler.force_non_subcritical = force;
    return gen;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum-entropy goodness-of-fit and two-sample tests for random graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key-value config file (keys are long option names)");

  std::string json_out;  // empty/- means stdout
  std::string csv_out;
  app.add_option("--out", json_out, "write the JSON report here instead of stdout")
      ->capture_default_str();
  app.add_option("--csv-out", csv_out, "also write a one-line CSV summary here ('-' for stdout)");

  // ---- sample ----------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "draw graph samples to a JSONL file");
  GeneratorFlags sample_gen;
  long sample_n = 1;
  std::uint64_t sample_seed = 0;
  std::uint64_t sample_stream = 0;
  std::string sample_out;
  cmd_sample->add_option("--model", sample_gen.kind, "er or ergm")
      ->check(CLI::IsMember({"er", "ergm"}))
      ->capture_default_str();
  cmd_sample->add_option("--m", sample_gen.m, "vertex count")->required();
  cmd_sample->add_option("--p", sample_gen.p, "edge probability (er)");
  cmd_sample->add_option("--term", sample_gen.terms,
                         "ERGM term motif:beta; first must be the edge (repeatable)");
  cmd_sample->add_option("-n,--n", sample_n, "number of graphs")->required();
  cmd_sample->add_option("--seed", sample_seed, "rng seed")->capture_default_str();
  cmd_sample->add_option("--stream", sample_stream, "rng stream id")->capture_default_str();
  cmd_sample->add_option("--burn-in", sample_gen.burn_in, "Glauber burn-in sweeps")
      ->capture_default_str();
  cmd_sample->add_option("--thin", sample_gen.thin, "sweeps between retained samples")
      ->capture_default_str();
  cmd_sample->add_flag("--force", sample_gen.force,
                       "sample even when the model is not subcritical");
  cmd_sample->add_option("--out-file", sample_out, "output JSONL path")->required();

  // ---- count -----------------------------------------------------------
  auto* cmd_count = app.add_subcommand("count", "count motif copies per graph");
  std::string count_in, count_motif_name = "triangle";
  bool count_density = false;
  cmd_count->add_option("--in", count_in, "sample JSONL file")->required();
  cmd_count->add_option("--motif", count_motif_name, "motif name")->capture_default_str();
  cmd_count->add_flag("--density", count_density, "also print homomorphism densities");

  // ---- gof-fixed -------------------------------------------------------
  auto* cmd_fixed = app.add_subcommand("gof-fixed", "goodness-of-fit, fixed vertex count");
  std::string fixed_in, fixed_motif = "triangle";
  double fixed_h0 = 0.0, fixed_alpha = 0.05;
  cmd_fixed->add_option("--in", fixed_in, "sample JSONL file")->required();
  cmd_fixed->add_option("--motif", fixed_motif, "motif name")->capture_default_str();
  cmd_fixed->add_option("--h0", fixed_h0, "null expected motif count")->required();
  cmd_fixed->add_option("--alpha", fixed_alpha, "test level")->capture_default_str();

  // ---- gof-sparse ------------------------------------------------------
  auto* cmd_sparse = app.add_subcommand("gof-sparse", "goodness-of-fit, sparse regime");
  std::string sparse_in, sparse_motif = "triangle";
  double sparse_c0 = 1.0, sparse_alpha = 0.05;
  cmd_sparse->add_option("--in", sparse_in, "sample JSONL file")->required();
  cmd_sparse->add_option("--motif", sparse_motif, "strictly balanced motif")
      ->capture_default_str();
  cmd_sparse->add_option("--c0", sparse_c0, "null constant c0 > 0")->required();
  cmd_sparse->add_option("--alpha", sparse_alpha, "test level")->capture_default_str();

  // ---- gof-dense -------------------------------------------------------
  auto* cmd_dense = app.add_subcommand("gof-dense", "goodness-of-fit, dense regime");
  std::string dense_in, dense_motif = "triangle";
  double dense_null_p = -1.0, dense_cn = 0.0;
  std::vector<std::string> dense_null_terms;
  cmd_dense->add_option("--in", dense_in, "sample JSONL file")->required();
  cmd_dense->add_option("--motif", dense_motif, "strictly balanced motif")
      ->capture_default_str();
  cmd_dense->add_option("--null-p", dense_null_p, "null ER edge probability");
  cmd_dense->add_option("--null-term", dense_null_terms,
                        "null ERGM term motif:beta (repeatable)");
  cmd_dense->add_option("--cn", dense_cn, "threshold scale c_n (0 = m^2/log m^2)")
      ->capture_default_str();

  // ---- two-sample-sparse ------------------------------------------------
  auto* cmd_ts_sparse =
      app.add_subcommand("two-sample-sparse", "two-sample test, sparse regime");
  std::string tss_in1, tss_in2, tss_motif = "triangle";
  double tss_c0 = 1.0, tss_alpha = 0.05;
  cmd_ts_sparse->add_option("--in1", tss_in1, "first sample JSONL file")->required();
  cmd_ts_sparse->add_option("--in2", tss_in2, "second sample JSONL file")->required();
  cmd_ts_sparse->add_option("--motif", tss_motif, "strictly balanced motif")
      ->capture_default_str();
  cmd_ts_sparse->add_option("--c0", tss_c0, "known lower constant c0 > 0")->required();
  cmd_ts_sparse->add_option("--alpha", tss_alpha, "test level")->capture_default_str();

  // ---- two-sample-dense --------------------------------------------------
  auto* cmd_ts_dense =
      app.add_subcommand("two-sample-dense", "two-sample test, dense regime");
  std::string tsd_in1, tsd_in2, tsd_motif = "triangle";
  double tsd_eps = 0.0, tsd_c = 1.0;
  cmd_ts_dense->add_option("--in1", tsd_in1, "first sample JSONL file")->required();
  cmd_ts_dense->add_option("--in2", tsd_in2, "second sample JSONL file")->required();
  cmd_ts_dense->add_option("--motif", tsd_motif, "strictly balanced motif")
      ->capture_default_str();
  cmd_ts_dense->add_option("--epsilon", tsd_eps, "margin with p, p~ < 1 - epsilon")
      ->required();
  cmd_ts_dense->add_option("--c", tsd_c, "threshold constant (statistic vs c/m^2)")
      ->capture_default_str();

  // ---- variational -------------------------------------------------------
  auto* cmd_var = app.add_subcommand(
      "variational", "constant-graphon free energy: u*, g(lambda), lambda_circ");
  std::string var_motif = "triangle";
  std::vector<std::string> var_terms;
  double var_p0 = 0.5, var_lambda = 0.0;
  int var_m = 2;
  cmd_var->add_option("--motif", var_motif, "motif H")->capture_default_str();
  cmd_var->add_option("--term", var_terms, "ERGM term motif:beta (repeatable)")
      ->required();
  cmd_var->add_option("--p0", var_p0, "reference edge parameter in (0,1)")
      ->capture_default_str();
  cmd_var->add_option("--lambda", var_lambda, "tilt for the u* report")
      ->capture_default_str();
  cmd_var->add_option("--m", var_m, "nominal vertex count for the model record")
      ->capture_default_str();

  // ---- subcritical ---------------------------------------------------------
  auto* cmd_sub = app.add_subcommand("subcritical", "fixed-point analysis of an ERGM");
  std::vector<std::string> sub_terms;
  int sub_m = 2;
  cmd_sub->add_option("--term", sub_terms, "ERGM term motif:beta (repeatable)")
      ->required();
  cmd_sub->add_option("--m", sub_m, "nominal vertex count for the model record")
      ->capture_default_str();

  // ---- mc-study -------------------------------------------------------------
  auto* cmd_study = app.add_subcommand("mc-study", "Monte Carlo level/power study");
  GeneratorFlags study_gen;
  GeneratorFlags study_gen2;
  bool has_gen2 = false;
  std::string study_test = "gof-sparse";
  std::string study_motif = "triangle";
  double study_h0 = 0.0, study_alpha = 0.05, study_c0 = 1.0;
  double study_null_p = -1.0, study_cn = 0.0, study_eps = 0.0, study_c = 1.0;
  std::vector<std::string> study_null_terms;
  int study_R = 1, study_workers = 1;
  long study_n = 1, study_n2 = 0;
  std::uint64_t study_seed = 0;
  std::string study_csv;
  cmd_study->add_option("--generator", study_gen.kind, "er or ergm")
      ->check(CLI::IsMember({"er", "ergm"}))
      ->capture_default_str();
  cmd_study->add_option("--m", study_gen.m, "vertex count")->required();
  cmd_study->add_option("--p", study_gen.p, "edge probability (er generator)");
  cmd_study->add_option("--term", study_gen.terms, "ERGM generator term (repeatable)");
  cmd_study->add_option("--burn-in", study_gen.burn_in, "Glauber burn-in sweeps")
      ->capture_default_str();
  cmd_study->add_option("--thin", study_gen.thin, "sweeps between retained samples")
      ->capture_default_str();
  cmd_study->add_option("--generator2", study_gen2.kind,
                        "second generator for two-sample studies (er or ergm)")
      ->check(CLI::IsMember({"er", "ergm"}));
  auto* opt_m2 = cmd_study->add_option("--m2", study_gen2.m, "second vertex count");
  auto* opt_p2 = cmd_study->add_option("--p2", study_gen2.p, "second edge probability");
  cmd_study->add_option("--term2", study_gen2.terms, "second ERGM term (repeatable)");
  cmd_study->add_option("--test", study_test, "test to run per replication")
      ->check(CLI::IsMember({"gof-fixed", "gof-sparse", "gof-dense",
                             "two-sample-sparse", "two-sample-dense"}))
      ->capture_default_str();
  cmd_study->add_option("--motif", study_motif, "motif name")->capture_default_str();
  cmd_study->add_option("--h0", study_h0, "gof-fixed centering");
  cmd_study->add_option("--alpha", study_alpha, "test level")->capture_default_str();
  cmd_study->add_option("--c0", study_c0, "sparse reference constant");
  cmd_study->add_option("--null-p", study_null_p, "dense null ER probability");
  cmd_study->add_option("--null-term", study_null_terms,
                        "dense null ERGM term (repeatable)");
  cmd_study->add_option("--cn", study_cn, "dense threshold scale");
  cmd_study->add_option("--epsilon", study_eps, "dense two-sample margin");
  cmd_study->add_option("--c", study_c, "dense two-sample constant");
  cmd_study->add_option("-R,--replications", study_R, "number of replications")
      ->required();
  cmd_study->add_option("-n,--n", study_n, "sample size per replication")->required();
  cmd_study->add_option("--n2", study_n2, "second sample size (default n)");
  cmd_study->add_option("--seed", study_seed, "study seed")->capture_default_str();
  cmd_study->add_option("--workers", study_workers, "worker threads")
      ->capture_default_str();
  cmd_study->add_option("--per-replication-csv", study_csv,
                        "write per-replication CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_sample) {
      apply_seed_env(sample_seed);
      std::vector<nettest::Graph> graphs;
      if (sample_gen.kind == "er") {
        nettest::RngStream rng(sample_seed, sample_stream);
        const nettest::ErModel model = nettest::make_er(sample_gen.m, sample_gen.p);
        graphs.reserve(static_cast<std::size_t>(sample_n));
        for (long i = 0; i < sample_n; ++i)
          graphs.push_back(nettest::sample_er(model, rng));
      } else {
        nettest::SamplerConfig config;
        config.seed = sample_seed;
        config.stream = sample_stream;
        config.burn_in = sample_gen.burn_in;
        config.thin = sample_gen.thin;
        config.force_non_subcritical = sample_gen.force;
        graphs = nettest::sample_ergm(model_from_terms(sample_gen.m, sample_gen.terms),
                                      config, static_cast<int>(sample_n));
      }
      nettest::write_samples(sample_out, graphs);
      std::cerr << "wrote " << graphs.size() << " graphs to " << sample_out << "\n";
      return kExitOk;
    }

    if (*cmd_count) {
      const nettest::Motif& motif = nettest::motif_by_name(count_motif_name);
      const std::vector<nettest::Graph> graphs = nettest::read_samples(count_in);
      std::string text = count_density ? "index,count,hom_density" : "index,count";
      text += "\n";
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        text += std::to_string(i) + "," +
                std::to_string(nettest::count_motif(graphs[i], motif));
        if (count_density) {
          char buf[40];
          std::snprintf(buf, sizeof(buf), "%.12g",
                        nettest::hom_density(graphs[i], motif));
          text += std::string(",") + buf;
        }
        text += "\n";
      }
      text.pop_back();
      write_text(json_out, text);
      return kExitOk;
    }

    if (*cmd_fixed) {
      const nettest::TestReport report =
          nettest::gof_fixed(nettest::read_samples(fixed_in),
                             nettest::motif_by_name(fixed_motif), fixed_h0,
                             fixed_alpha);
      emit_report(report, json_out, csv_out);
      return report.reject ? kExitReject : kExitOk;
    }

    if (*cmd_sparse) {
      nettest::SparseSpec spec{sparse_c0, nettest::motif_by_name(sparse_motif),
                               sparse_alpha};
      const nettest::TestReport report =
          nettest::gof_sparse(nettest::read_samples(sparse_in), spec);
      emit_report(report, json_out, csv_out);
      return report.reject ? kExitReject : kExitOk;
    }

    if (*cmd_dense) {
      const std::vector<nettest::Graph> samples = nettest::read_samples(dense_in);
      if (samples.empty()) throw nettest::EmptySampleError("no graphs supplied");
      nettest::DenseSpec spec;
      spec.H = nettest::motif_by_name(dense_motif);
      spec.c_n = dense_cn;
      if (dense_null_p >= 0.0) spec.p0 = dense_null_p;
      if (!dense_null_terms.empty())
        spec.beta0 =
            model_from_terms(samples.front().vertex_count(), dense_null_terms);
      const nettest::TestReport report = nettest::gof_dense(samples, spec);
      emit_report(report, json_out, csv_out);
      return report.reject ? kExitReject : kExitOk;
    }

    if (*cmd_ts_sparse) {
      nettest::SparseSpec spec{tss_c0, nettest::motif_by_name(tss_motif), tss_alpha};
      const nettest::TestReport report = nettest::two_sample_sparse(
          nettest::read_samples(tss_in1), nettest::read_samples(tss_in2), spec);
      emit_report(report, json_out, csv_out);
      return report.reject ? kExitReject : kExitOk;
    }

    if (*cmd_ts_dense) {
      nettest::DenseSpec spec;
      spec.H = nettest::motif_by_name(tsd_motif);
      spec.epsilon = tsd_eps;
      spec.c = tsd_c;
      const nettest::TestReport report = nettest::two_sample_dense(
          nettest::read_samples(tsd_in1), nettest::read_samples(tsd_in2), spec);
      emit_report(report, json_out, csv_out);
      return report.reject ? kExitReject : kExitOk;
    }

    if (*cmd_var) {
      const nettest::VariationalModel model = nettest::make_variational_model(
          model_from_terms(var_m, var_terms), nettest::motif_by_name(var_motif),
          var_p0);
      const nettest::VariationalResult at_lambda =
          nettest::maximize_u(var_lambda, model);
      ordered_json j;
      j["motif"] = model.H.name;
      j["p0"] = model.p0;
      j["lambda"] = var_lambda;
      j["u_star"] = at_lambda.u_star;
      j["value"] = at_lambda.value;
      j["multiplicity_flag"] = at_lambda.multiplicity_flag;
      j["g_lambda"] = json_number(nettest::g_of_lambda(var_lambda, model));
      const double lc = nettest::lambda_circ(model);
      j["lambda_circ"] = json_number(lc);
      if (lc < 0.0) {
        const nettest::SharpRate rate = nettest::sharp_rate_constant(model, lc);
        if (rate.degenerate)
          j["sharp_rate"] = "degenerate";
        else
          j["sharp_rate"] = json_number(rate.value);
      }
      write_text(json_out, j.dump(2));
      return kExitOk;
    }

    if (*cmd_sub) {
      const nettest::ErgmModel model = model_from_terms(sub_m, sub_terms);
      write_text(json_out, subcritical_json(nettest::subcritical_check(model)).dump(2));
      return kExitOk;
    }

    if (*cmd_study) {
      apply_seed_env(study_seed);
      nettest::StudyConfig config;
      config.generator = study_gen.build(study_seed);
      has_gen2 = opt_m2->count() > 0 || opt_p2->count() > 0 ||
                 !study_gen2.terms.empty();
      if (has_gen2) {
        if (opt_m2->count() == 0) study_gen2.m = study_gen.m;
        config.generator2 = study_gen2.build(study_seed);
      }
      config.test.H = nettest::motif_by_name(study_motif);
      config.test.h0 = study_h0;
      config.test.alpha = study_alpha;
      config.test.c0 = study_c0;
      if (study_null_p >= 0.0) config.test.p0 = study_null_p;
      if (!study_null_terms.empty())
        config.test.beta0 = model_from_terms(study_gen.m, study_null_terms);
      config.test.c_n = study_cn;
      config.test.epsilon = study_eps;
      config.test.c = study_c;
      if (study_test == "gof-fixed")
        config.test.kind = nettest::TestSpec::Kind::GofFixed;
      else if (study_test == "gof-sparse")
        config.test.kind = nettest::TestSpec::Kind::GofSparse;
      else if (study_test == "gof-dense")
        config.test.kind = nettest::TestSpec::Kind::GofDense;
      else if (study_test == "two-sample-sparse")
        config.test.kind = nettest::TestSpec::Kind::TwoSampleSparse;
      else
        config.test.kind = nettest::TestSpec::Kind::TwoSampleDense;
      config.replications = study_R;
      config.n = study_n;
      config.n2 = study_n2;
      config.seed = study_seed;
      config.workers = study_workers;

      const nettest::StudyResult result = nettest::mc_study(config);
      write_text(json_out, nettest::study_to_json(result));
      if (!study_csv.empty()) write_text(study_csv, nettest::study_to_csv(result));
      std::cerr << "runtime: " << result.runtime_seconds << " s\n";
      return kExitOk;
    }
  } catch (const nettest::NotSubcriticalError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << subcritical_json(e.report).dump(2) << "\n";
    return kExitDataError;
  } catch (const nettest::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}
