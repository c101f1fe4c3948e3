#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lrdfa {

/// Failure categories shared by every module.
enum class ErrorCode {
    InvalidInput,
    MissingData,
    InsufficientLength,
    InvalidScale,
    InsufficientPoints,
    DegenerateCurve,
    NoVariance,
    InvalidModel,
    InsufficientReplicates,
    EmptyHistogram,
    InsufficientBins,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<std::size_t> index = std::nullopt);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

    /// Offending element (interval, scale, row) when the failure is localized.
    [[nodiscard]] std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

}  // namespace lrdfa
