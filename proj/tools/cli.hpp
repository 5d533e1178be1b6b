#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace trade::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kValidationError = 2 };

/// argv-style entry point; args[0] is the program name.
int run(const std::vector<std::string>& args);

/// Writes via a sibling temp file and a rename, so readers never see a
/// half-written file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace trade::cli
