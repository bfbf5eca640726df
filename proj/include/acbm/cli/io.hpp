#ifndef ACBM_CLI_IO_HPP
#define ACBM_CLI_IO_HPP

// Algebra files and report serialization.
//
// An algebra file is one JSON object:
//   {"name": "...", "description": "...",
//    "C": {"01": [C01^0, C01^1, C01^2], "02": [...], "12": [...]}}
// name and description are optional; "C" must carry exactly the three keys.

#include <optional>
#include <string>
#include <string_view>

#include "acbm/algebra.hpp"
#include "acbm/verify.hpp"
#include "json.hpp"

namespace acbm::cli {

using Json = nlohmann::ordered_json;

struct AlgebraFile {
  StructureConstants constants;
  std::optional<std::string> name;
  std::optional<std::string> description;
};

/// Throws ValidationError naming the offending key, or the failing triple when
/// the Jacobi check (at jacobi_tol) fails.
AlgebraFile parse_algebra_json(std::string_view text, double jacobi_tol = kJacobiTolerance);

/// As parse_algebra_json; throws IoError if the file cannot be read.
AlgebraFile parse_algebra_file(const std::string& path, double jacobi_tol = kJacobiTolerance);

Json algebra_to_json(const AlgebraFile& file);
std::string dump_algebra(const AlgebraFile& file);

/// Writes text to path, or to stdout when path is "-". Throws IoError.
void write_text(const std::string& path, const std::string& text);

/// Everything except worker count and timing, so equal seeds give equal bytes.
Json report_to_json(const VerificationReport& report);
std::string dump_report(const VerificationReport& report);

}  // namespace acbm::cli

#endif  // ACBM_CLI_IO_HPP
