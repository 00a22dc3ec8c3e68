#ifndef NETTEST_REPORT_HPP
#define NETTEST_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

namespace nettest {

// Auditable side channel of a test run: feasibility classifications, solver
// diagnostics, variance components, and any warnings.
struct Diagnostics {
  std::string feasibility;
  std::string feasibility_2;  // second sample, two-sample tests only
  int solver_iterations = 0;
  int solver_iterations_2 = 0;
  double residual = 0.0;
  double residual_2 = 0.0;
  double h0 = 0.0;    // centering actually used
  double scale = 1.0;  // dense solver scale
  std::optional<double> sigma_hat;
  std::optional<double> variance_num;  // g(lambda_bar)
  std::optional<double> variance_den;  // f(lambda_bar)
  std::optional<double> mu_hat;
  std::optional<double> p_null;  // dense: edge parameter of the null model
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

struct TestReport {
  std::string test_id;
  long n = 0;
  long n1 = 0;  // two-sample only
  long n2 = 0;
  int m = 0;
  std::string motif;
  double lambda_hat = 0.0;
  std::optional<double> lambda_hat_2;  // two-sample only
  double statistic = 0.0;
  double threshold = 0.0;
  std::string direction;  // ">" or "<": reject iff statistic <direction> threshold
  std::optional<double> p_value;  // present only where a CLT backs it
  std::optional<double> alpha;
  bool reject = false;
  Diagnostics diagnostics;
};

inline const char* decision_string(bool reject) {
  return reject ? "reject" : "fail-to-reject";
}

// Stable JSON schema with fixed field order; non-finite numbers are encoded
// as the strings "inf", "-inf", "nan".
std::string report_to_json(const TestReport& report, int indent = 2);

// One-line CSV summary. Two-sample reports join the pair of multipliers with
// ';' in the lambda_hat column; a missing p-value leaves the cell empty.
std::string report_csv_header();
std::string report_csv_line(const TestReport& report);

}  // namespace nettest

#endif
