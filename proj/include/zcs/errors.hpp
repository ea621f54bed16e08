#pragma once

#include <stdexcept>
#include <string>

namespace zcs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownLetter : Error { using Error::Error; };
struct UnknownProcess : Error { using Error::Error; };
struct AlphabetMismatch : Error { using Error::Error; };
struct TooLong : Error { using Error::Error; };
struct NotEnabled : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct NotWinning : Error { using Error::Error; };
struct InvalidCertificate : Error { using Error::Error; };
struct IncompleteOrder : Error { using Error::Error; };
struct InvalidOrdering : Error { using Error::Error; };
struct SemanticError : Error { using Error::Error; };

struct SyntaxError : Error {
    int line;
    SyntaxError(int line_no, const std::string& msg)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

} // namespace zcs
