#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace largeset::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2, kPrecisionShortfall = 3 };

// A command plus its parameters. Parameter values are kept as the strings the
// user typed (arrays of strings for repeatable fields), which makes the JSON
// form lossless.
struct Config {
  std::string command;
  nlohmann::json params = nlohmann::json::object();

  nlohmann::json to_json() const { return {{"command", command}, {"params", params}}; }
  static Config from_json(const nlohmann::json& j);
  // Compact JSON with sorted keys; the input to config_hash.
  std::string canonical() const { return to_json().dump(); }
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string config_hash(const Config& c);  // 16 lowercase hex digits

// Checks every field of the command's schema; the message names the field
// path (params.<name>). Returns an empty string when valid.
std::string validate(const Config& c);

std::vector<std::string> command_names();

// Entry point shared by the binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace largeset::cli
