#pragma once

#include <stdexcept>
#include <string>

namespace newschain {

enum class ErrorCode {
    InvalidArgument,
    ChainFork,
    InvalidBlock,
    NotOnChain,
    AlreadyEnrolled,
    VerificationFailed,
    NoSuchPublisher,
    Revoked,
    KeyConflict,
    Config,
    Io,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::ChainFork: return "chain-fork";
        case ErrorCode::InvalidBlock: return "invalid-block";
        case ErrorCode::NotOnChain: return "not-on-chain";
        case ErrorCode::AlreadyEnrolled: return "already-enrolled";
        case ErrorCode::VerificationFailed: return "verification-failed";
        case ErrorCode::NoSuchPublisher: return "no-such-publisher";
        case ErrorCode::Revoked: return "revoked";
        case ErrorCode::KeyConflict: return "key-conflict";
        case ErrorCode::Config: return "config";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

// Domain error with a stable machine-readable code. Validation rule numbers
// (when the failure came from block validation) ride along in rule().
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message, int rule = 0)
        : std::runtime_error(std::move(message)), code_(code), rule_(rule) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }
    int rule() const { return rule_; }

  private:
    ErrorCode code_;
    int rule_;
};

}  // namespace newschain
