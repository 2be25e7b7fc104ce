#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rkhs/inclusion_engine.hpp"
#include "rkhs/kernel_spec.hpp"
#include "rkhs/psd_certifier.hpp"
#include "rkhs/table.hpp"

namespace rkhs {

// Malformed spec text or file; the message carries the offending position.
class SpecParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Decide, Certify, Falsify, RatioProfile, HsQuery, Table };
enum class OutputFormat { HumanText, StructuredRecord };

struct RunConfig {
  Command command = Command::Decide;
  std::optional<KernelSpec> kernel_k;
  std::optional<KernelSpec> kernel_g;
  int dim = 1;
  SamplerConfig sampler;
  GridConfig grid;
  OutputFormat output_format = OutputFormat::HumanText;
  std::optional<double> lambda;
  TableParams table;
  bool full = false;  // include grids and point sets in the report

  void validate() const;
};

// `family:key=val,key=val`, e.g. "gaussian:gamma=2" or "bspline:p=4".
KernelSpec parse_spec_text(const std::string& text, int dim);
// File path when it names an existing file (record format), otherwise spec text.
KernelSpec load_spec(const std::string& spec_or_path, int dim);
TableParams parse_table_params(const std::string& text);

// Exit status: 0 completed, 1 input error, 2 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rkhs
