#pragma once

// Command-line frontend: moment sweeps, the closed-form verification report
// and momentum-distribution dumps. The run_* functions write to the given
// streams and return the process exit code.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstates/complex.hpp"

namespace qstates::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

enum class Format { csv, json };
enum class MethodChoice { oracle, closed_form, both };

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  double q_min = 1.05;
  double q_max = 2.2;
  int q_steps = 20;
  cplx alpha{0.5, 0.0};
  double tol = 1e-10;
  MethodChoice method = MethodChoice::oracle;
  Format format = Format::csv;
  std::string out; // empty: stdout
};

struct SweepRow {
  double q = 0.0;
  double mean_x = 0.0, mean_x2 = 0.0, mean_p = 0.0, mean_p2 = 0.0;
  double var_x = 0.0, var_p = 0.0, dx = 0.0, dp = 0.0, product = 0.0;
  std::string method;
  std::optional<double> max_deviation;
};

void validate(const SweepConfig& c);
std::vector<double> q_grid(double q_min, double q_max, int steps);
std::vector<SweepRow> sweep_rows(const SweepConfig& c);
int run_sweep(const SweepConfig& c, std::ostream& out, std::ostream& err);

struct VerifyConfig {
  std::vector<double> qs{1.2, 1.3, 1.6, 2.0};
  std::vector<cplx> alphas{{0.3, 0.0}, {0.3, 0.1}, {0.0, 0.3}};
  double tol = 1e-10;
  // Momentum probes for the Kummer forms; the smallest |k| is the k -> 0 probe.
  std::vector<double> k_probes{-1.0, 1e-3, 1.0, 2.0};
  int parseval_points = 2401;
  std::vector<double> limit_sequence{1.2, 1.1, 1.05, 1.02, 1.01};
  int lauricella_samples = 10;
  std::string out;
};

struct VerifyEntry {
  std::string family;
  std::string kind; // "closed-form" or "mandatory"
  std::optional<double> q;
  std::optional<cplx> alpha;
  std::optional<double> k;
  std::optional<cplx> beta;
  std::optional<cplx> closed;
  std::optional<cplx> oracle;
  std::optional<double> deviation;
  // Closed forms: deviation of the formula read literally (half line).
  std::optional<double> printed_deviation;
  std::string status; // pass | fail | finding
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  std::vector<std::string> families() const;
  bool any_fail() const;
};

void validate(const VerifyConfig& c);
VerifyReport build_verify_report(const VerifyConfig& c);
std::string verify_json(const VerifyReport& r, const VerifyConfig& c);
int run_verify(const VerifyConfig& c, std::ostream& out, std::ostream& err);

struct PdConfig {
  double q = 1.5;
  cplx alpha{};
  std::optional<double> k_min, k_max;
  int k_steps = 401;
  double tol = 1e-9;
  MethodChoice method = MethodChoice::oracle;
  Format format = Format::csv;
  std::string out;
};

void validate(const PdConfig& c);
int run_pd(const PdConfig& c, std::ostream& out, std::ostream& err);

/// %.17g
std::string format_real(double v);

/// Full command-line entry point.
int main(int argc, char** argv);

} // namespace qstates::cli
