#pragma once

// Command implementations behind the `gregory` tool. Each command writes to
// the given streams and returns the process exit status.

#include "gregory/properties.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gregory::cli {

enum ExitStatus : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ComputeArgs {
    long n_max = 30;
    std::string method = "series";  // series | explicit | integral | all
    double tol = 1e-10;
    std::string format = "table";  // csv | json | table
};

struct VerifyArgs {
    std::string suite = "all";
    long n_max = 30;
    double tol = 1e-10;
};

struct EvalArgs {
    std::string function;  // genfun | recip-log | derivative | bernstein-identity
    double x = 0.0;
    int k = 1;
    double tol = 1e-10;
};

struct OutputRecord {
    long n = 0;
    std::optional<std::string> exact;
    std::optional<double> numeric;
    std::string method;
    std::optional<double> error_estimate;
    std::optional<bool> converged;  // quadrature records only
};

int cmd_compute(const ComputeArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);

struct Suite {
    std::string name;
    std::function<properties::CmReport()> run;
    /// A failed report is labelled "inconclusive" and does not fail the run.
    bool inconclusive_allowed = false;
};

/// Suites the verify command runs for the given arguments. Throws UsageError
/// for an unknown suite or a horizon too short for it.
std::vector<Suite> make_suites(const VerifyArgs& args);

/// Runs suites in order, one JSON report per line. 0 iff none failed.
int run_suites(const std::vector<Suite>& suites, std::ostream& out);

/// Full command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gregory::cli
