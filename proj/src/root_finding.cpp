#include "starorlicz/root_finding.hpp"

namespace starorlicz::detail {

void throw_no_straddle(double lo, double hi, double g_lo, double g_hi,
                       std::vector<BracketStep> trace) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "root bracket does not straddle zero: g(" << lo << ") = " << g_lo << ", g(" << hi
      << ") = " << g_hi << " after " << trace.size() << " bracket step(s)";
  throw SolverError(msg.str(), std::move(trace));
}

void throw_no_convergence(double lo, double hi, double g_lo, double g_hi, int iterations) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "root iteration did not converge after " << iterations << " iterations; last bracket ["
      << lo << ", " << hi << "] with g = " << g_lo << ", " << g_hi;
  throw SolverError(msg.str(), {{lo, hi, g_lo, g_hi}});
}

}  // namespace starorlicz::detail
