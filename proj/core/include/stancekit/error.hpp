#ifndef STANCEKIT_ERROR_HPP
#define STANCEKIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

/**
 * @file error.hpp
 *
 * @brief Exception hierarchy shared by every pipeline stage.
 *
 * Each exception carries an `ErrorKind` so that front ends can map failures
 * onto process exit codes without inspecting message text.
 */

namespace stancekit {

enum class ErrorKind {
    config,  ///< Invalid parameters or configuration.
    data,    ///< Malformed or insufficient input data.
    numeric, ///< A numerical routine failed (NaN, non-convergence).
    io       ///< Filesystem failure.
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// A record could not be decoded at all.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A record decoded but lacks a mandatory field or has a field of the wrong type.
class SchemaError : public DataError {
public:
    SchemaError(std::size_t line, const std::string& field, const std::string& what)
        : DataError("line " + std::to_string(line) + ": field '" + field + "': " + what),
          line_(line), field_(field) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

} // namespace stancekit

#endif
