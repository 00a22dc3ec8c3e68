#include "nettest/report.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace nettest {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

std::string report_to_json(const TestReport& r, int indent) {
  ordered_json j;
  j["test_id"] = r.test_id;
  j["n"] = r.n;
  if (r.n1 > 0) j["n1"] = r.n1;
  if (r.n2 > 0) j["n2"] = r.n2;
  j["m"] = r.m;
  j["motif"] = r.motif;
  j["lambda_hat"] = json_number(r.lambda_hat);
  if (r.lambda_hat_2) j["lambda_hat_2"] = json_number(*r.lambda_hat_2);
  j["statistic"] = json_number(r.statistic);
  j["threshold"] = json_number(r.threshold);
  j["direction"] = r.direction;
  if (r.p_value) j["p_value"] = json_number(*r.p_value);
  if (r.alpha) j["alpha"] = *r.alpha;
  j["decision"] = decision_string(r.reject);

  ordered_json d;
  d["feasibility"] = r.diagnostics.feasibility;
  if (!r.diagnostics.feasibility_2.empty())
    d["feasibility_2"] = r.diagnostics.feasibility_2;
  d["solver_iterations"] = r.diagnostics.solver_iterations;
  if (r.diagnostics.solver_iterations_2 > 0)
    d["solver_iterations_2"] = r.diagnostics.solver_iterations_2;
  d["residual"] = json_number(r.diagnostics.residual);
  if (!r.diagnostics.feasibility_2.empty())
    d["residual_2"] = json_number(r.diagnostics.residual_2);
  d["h0"] = json_number(r.diagnostics.h0);
  d["scale"] = json_number(r.diagnostics.scale);
  if (r.diagnostics.sigma_hat) d["sigma_hat"] = json_number(*r.diagnostics.sigma_hat);
  if (r.diagnostics.variance_num)
    d["variance_num"] = json_number(*r.diagnostics.variance_num);
  if (r.diagnostics.variance_den)
    d["variance_den"] = json_number(*r.diagnostics.variance_den);
  if (r.diagnostics.mu_hat) d["mu_hat"] = json_number(*r.diagnostics.mu_hat);
  if (r.diagnostics.p_null) d["p_null"] = json_number(*r.diagnostics.p_null);
  if (!r.diagnostics.warnings.empty()) d["warnings"] = r.diagnostics.warnings;
  if (!r.diagnostics.notes.empty()) d["notes"] = r.diagnostics.notes;
  j["diagnostics"] = d;
  return j.dump(indent);
}

std::string report_csv_header() {
  return "test_id,n,m,motif,lambda_hat,statistic,threshold,p_value,decision";
}

std::string report_csv_line(const TestReport& r) {
  std::string lambda = csv_number(r.lambda_hat);
  if (r.lambda_hat_2) lambda += ";" + csv_number(*r.lambda_hat_2);
  std::string p = r.p_value ? csv_number(*r.p_value) : "";
  return r.test_id + "," + std::to_string(r.n) + "," + std::to_string(r.m) +
         "," + r.motif + "," + lambda + "," + csv_number(r.statistic) + "," +
         csv_number(r.threshold) + "," + p + "," + decision_string(r.reject);
}

}  // namespace nettest
