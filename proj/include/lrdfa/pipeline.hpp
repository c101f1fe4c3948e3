#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lrdfa/config.hpp"

namespace lrdfa {

/// In-memory report: relative path -> file content, plus per-input failures.
struct ReportBundle {
    std::map<std::string, std::string> files;
    /// "<input>: <message>" for every input that could not be analysed.
    std::vector<std::string> failures;

    /// 0 when every input was analysed, 1 otherwise.
    [[nodiscard]] int exit_code() const noexcept { return failures.empty() ? 0 : 1; }
};

/// Analyses every input series (CSV with optional `.meta` sidecar) and assembles
/// report.json, ci_table.txt and per-series / per-group CSV exports.
///
/// Inputs are processed on up to config.workers threads; everything is emitted in input
/// order and floats are printed with fixed rules, so identical inputs and configuration
/// give byte-identical bundles. Throws Error(InvalidInput) for an invalid configuration;
/// problems with individual inputs are collected in `failures`.
[[nodiscard]] ReportBundle run_pipeline(const AnalysisConfig& config,
                                        std::span<const std::filesystem::path> inputs);

/// Writes the bundle below `dir`, creating directories as needed.
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace lrdfa
