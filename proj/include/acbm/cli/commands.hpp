#ifndef ACBM_CLI_COMMANDS_HPP
#define ACBM_CLI_COMMANDS_HPP

// The acbm subcommands. Each returns its process exit code and writes only to
// the streams it is given, so tests can drive them in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "acbm/cli/io.hpp"

namespace acbm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,   ///< malformed input, unknown tag, Jacobi failure
  kExitVerify = 2,  ///< a verification check failed
  kExitIo = 3,      ///< file could not be read or written
};

struct ClassifyOptions {
  std::string in;
  double tol = kMembershipTolerance;
  bool json = false;
};

struct CanonicalOptions {
  std::string cls;
  double alpha = 1.0;
  double beta = 0.0;
  std::string out = "-";
};

struct ExpOptions {
  std::string cls;
  double alpha = 1.0;
  double beta = 0.0;
  std::string coords = "0,0,0";
  std::string mode = "corrected";
};

struct VerifyOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  std::string report;  ///< empty: report JSON goes to `out`
  unsigned workers = 0;
};

struct FixturesOptions {
  std::optional<std::string> name;
  std::optional<std::string> variant;  ///< GIII only
  std::optional<std::string> export_path;
};

int cmd_classify(const ClassifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_canonical(const CanonicalOptions& o, std::ostream& out, std::ostream& err);
int cmd_exp(const ExpOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_fixtures(const FixturesOptions& o, std::ostream& out, std::ostream& err);

/// "a,b,c" with '.' as decimal point regardless of locale.
Vec3 parse_coords(std::string_view text);

}  // namespace acbm::cli

#endif  // ACBM_CLI_COMMANDS_HPP
