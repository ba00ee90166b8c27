#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tagnet {

// Base type for all domain errors surfaced to the CLI (exit code 1).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error { public: using Error::Error; };
class LookupError : public Error { public: using Error::Error; };
class NoCommonHashtag : public Error { public: using Error::Error; };
class InsufficientAdopters : public Error { public: using Error::Error; };
class UndefinedDensity : public Error { public: using Error::Error; };
class DegenerateLabels : public Error { public: using Error::Error; };
class StratificationError : public Error { public: using Error::Error; };
class SamplingError : public Error { public: using Error::Error; };
class WindowError : public Error { public: using Error::Error; };
class FitError : public Error { public: using Error::Error; };

}  // namespace tagnet
