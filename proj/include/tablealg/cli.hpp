#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tablealg/report.hpp"

namespace tablealg::cli {

/// Runs one CLI command. Returns 0 on success, 1 when a validation or
/// verification check fails (the report is still emitted), 2 on usage or
/// I/O errors. `out` receives the report, `err` usage diagnostics.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Convenience overload capturing the report text.
int run(const std::vector<std::string>& args, std::string& out_text,
        std::string& err_text);

}  // namespace tablealg::cli
