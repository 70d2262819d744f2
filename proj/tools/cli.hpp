#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fewno::cli {

enum class Status { Ok, Error };

struct CommandResult {
  Status status = Status::Ok;
  nlohmann::json payload = nlohmann::json::object();
  std::vector<std::string> diagnostics;
  int exit_code = 0;  // 0 ok, 1 domain error, 2 usage error
};

// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

// The document written to stdout for a result.
nlohmann::json output_document(const CommandResult& r);

}  // namespace fewno::cli
