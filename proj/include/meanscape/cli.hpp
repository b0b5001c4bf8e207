#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace meanscape {

struct CommandResult {
    enum class Status { Ok, Error };

    Status status = Status::Ok;
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    std::vector<std::string> diagnostics;
    int exit_code = 0;  ///< 0 ok, 1 user error, 2 numerical failure

    std::string output;        ///< rendered result (JSON, CSV or help text)
    std::string error_output;  ///< usage text on argument errors
    std::optional<std::string> out_path;  ///< --out target, if given
};

/// Runs one CLI invocation without touching stdout; argv excludes the program
/// name. `--mean -` style expressions are read from `in`.
CommandResult cli_run(const std::vector<std::string>& args, std::istream& in);

/// {status, payload, diagnostics} with every double at 17 significant digits.
std::string render_json(const CommandResult& r);

/// Writes doubles as %.17g (non-finite as null), two-space indentation.
std::string dump_json(const nlohmann::ordered_json& j);

} // namespace meanscape
