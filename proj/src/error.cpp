#include "lgbwt/error.hpp"

namespace lgbwt {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::NotFactorizable: return "NotFactorizable";
        case ErrorCode::ExpansionTooLarge: return "ExpansionTooLarge";
        case ErrorCode::InvalidThreshold: return "InvalidThreshold";
        case ErrorCode::EmptyRecord: return "EmptyRecord";
        case ErrorCode::SymbolNotIndexed: return "SymbolNotIndexed";
        case ErrorCode::ChildrenNotIndexed: return "ChildrenNotIndexed";
        case ErrorCode::MalformedGrammar: return "MalformedGrammar";
        case ErrorCode::UnsortedGrammar: return "UnsortedGrammar";
        case ErrorCode::SentinelClash: return "SentinelClash";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::MalformedFasta: return "MalformedFasta";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::LyndonArrayBudget: return "LyndonArrayBudget";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace lgbwt
