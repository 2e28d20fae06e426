#ifndef QP1QC_CLI_HPP
#define QP1QC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qp1qc {

/// Command dispatch for the qp1qc tool. Returns the process exit code:
/// 0 attained (or command success), 1 unattained / check failure,
/// 2 unbounded, 3 infeasible, 64 parse or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qp1qc

#endif
