#pragma once

#include <stdexcept>
#include <string>

namespace embias {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller passed an invalid parameter (maps to CLI exit code 1).
class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

// Input data is missing, unreadable, or malformed (maps to CLI exit code 2).
class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(what) {}
};

}  // namespace embias
