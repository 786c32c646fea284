#pragma once

#include "sparsespec/config.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sparsespec::cli {

enum class Format { csv, json };

std::optional<Format> parse_format(std::string_view text);

struct CommandResult {
    std::string text;
    /// Overflow truncation or unresolved roots; fatal only under --strict.
    bool numeric_failure = false;
    std::vector<std::string> warnings;
};

CommandResult cmd_classify(const RunConfig& config, Format format = Format::json);
CommandResult cmd_growth(const RunConfig& config, Format format = Format::csv);
CommandResult cmd_eigs(const RunConfig& config, Format format = Format::csv);
CommandResult cmd_propagate(const RunConfig& config, Format format = Format::csv);
CommandResult cmd_avalue(const RunConfig& config, Format format = Format::json);

std::span<const std::string_view> command_names();
Format default_format(std::string_view command);

/// Dispatches by name. Format precedence: `format`, then config.output.format,
/// then the command default.
CommandResult run_command(std::string_view command, const RunConfig& config,
                          std::optional<Format> format = std::nullopt);

}  // namespace sparsespec::cli
