#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcseries/complex_util.hpp"
#include "json.hpp"

namespace fcs::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kNoCover = 2, kInternal = 3 };

// Complex literal: a real (`-1.5e-3`), an imaginary (`2i`, `-i`), `a+bi`, `a-bi`,
// or the pair `re,im` optionally in parentheses.
cplx parse_complex(std::string_view text);

// Comma-separated complex literals; a complex item in a comma list must be `a+bi` or `(re,im)`.
// When the text contains ';' that is the separator and each item may be a bare `re,im`.
std::vector<cplx> parse_coefficients(std::string_view text);

std::vector<double> parse_reals(std::string_view text);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

struct CaseReport {
  std::string name;
  std::string status;  // "pass", "fail" or "gap"
  double max_error = 0.0;
  std::vector<std::string> citations;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  static CaseReport from_json(const nlohmann::ordered_json& j);
};

// argv without the program name. Data goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcs::cli
