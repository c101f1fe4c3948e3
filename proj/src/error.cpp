#include "lrdfa/error.hpp"

namespace lrdfa {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::MissingData: return "MissingData";
        case ErrorCode::InsufficientLength: return "InsufficientLength";
        case ErrorCode::InvalidScale: return "InvalidScale";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::NoVariance: return "NoVariance";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::InsufficientReplicates: return "InsufficientReplicates";
        case ErrorCode::EmptyHistogram: return "EmptyHistogram";
        case ErrorCode::InsufficientBins: return "InsufficientBins";
    }
    return "Unknown";
}

namespace {
std::string compose(ErrorCode code, const std::string& message) {
    std::string out(to_string(code));
    out += ": ";
    out += message;
    return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(compose(code, message)), code_(code), index_(index) {}

}  // namespace lrdfa
