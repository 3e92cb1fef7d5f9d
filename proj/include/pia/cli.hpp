#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pia/driver.hpp"
#include "pia/grid.hpp"
#include "pia/monte_carlo.hpp"

namespace pia::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kError = 1, kNotConverged = 2 };

/// Runs the tool on `args` (args[0] is the program name).
///
///   solve     --spec PATH | --oracle NAME  [--out DIR]
///   simulate  --spec PATH | --oracle NAME  --x0 REAL [--policy EXPR] [--out DIR]
///             [--seed UINT] [--n-paths N] [--step H] [--workers N]
///   tanaka    --t REAL [--spec PATH | --oracle NAME] [--out DIR] [--seed UINT]
///             [--n-paths N] [--step H] [--t-max T] [--workers N]
///   spec      --oracle NAME   (prints the problem file of a built-in oracle)
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

void write_iterations_csv(const std::string& path, const PIAReport& report);
void write_value_csv(const std::string& path, const GridFunction& v);
void write_policy_csv(const std::string& path, const GridPolicy& pol);
void write_estimate_csv(const std::string& path, double x0, const PayoffEstimate& est);
void write_tanaka_csv(const std::string& path, const TanakaResult& r);

/// Reads a policy.csv written by solve and checks it against `grid`.
GridPolicy read_policy_csv(const std::string& path, const Grid& grid);

}  // namespace pia::cli
