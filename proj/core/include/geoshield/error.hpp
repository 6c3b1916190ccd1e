#pragma once

#include <stdexcept>
#include <string>

namespace geoshield {

// Broad failure classes, mapped to CLI exit codes (usage=1, data=2, provider=3).
enum class ErrorKind {
    Usage,
    Data,
    Provider,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DataError : public Error {
public:
    explicit DataError(std::string message) : Error(ErrorKind::Data, std::move(message)) {}
};

class ProviderError : public Error {
public:
    explicit ProviderError(std::string message) : Error(ErrorKind::Provider, std::move(message)) {}
};

class UsageError : public Error {
public:
    explicit UsageError(std::string message) : Error(ErrorKind::Usage, std::move(message)) {}
};

}  // namespace geoshield
