#pragma once

#include <stdexcept>
#include <string>

namespace qmux {

/// Bad user input or violated precondition. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent intermediate results between pipeline stages. CLI exit code 3.
class PipelineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File system / input file failures. CLI exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure with source position, raised by the QASM frontend.
class QasmError : public ValidationError {
public:
    QasmError(const std::string& msg, int line, int col)
        : ValidationError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

} // namespace qmux
